#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"
#include "helpers.hpp"

using namespace aucboot;

namespace {

LabeledDataset flat_data(std::size_t n1, std::size_t n2) {
    LabeledDataset d(1);
    for (std::size_t i = 0; i < n1; ++i) d.append({static_cast<double>(i)}, ClassLabel::one);
    for (std::size_t i = 0; i < n2; ++i)
        d.append({static_cast<double>(100 + i)}, ClassLabel::two);
    return d;
}

}  // namespace

TEST_CASE("stratified bootstrap keeps the per-class counting identities", "[resampling]") {
    RngStream rng(101);
    const LabeledDataset d = flat_data(9, 6);
    for (int rep = 0; rep < 200; ++rep) {
        const BootstrapReplicate r = stratified_bootstrap(d, rng);
        REQUIRE(r.indices.size() == d.size());
        std::size_t sum1 = 0, sum2 = 0;
        for (std::size_t i : d.class1_indices()) sum1 += r.counts[i];
        for (std::size_t i : d.class2_indices()) sum2 += r.counts[i];
        CHECK(sum1 == d.n1());
        CHECK(sum2 == d.n2());
        for (std::size_t i = 0; i < d.size(); ++i)
            CHECK(r.excluded(i) == (r.counts[i] == 0));
        for (std::size_t i : r.excluded1) CHECK(r.counts[i] == 0);
        for (std::size_t i : r.excluded2) CHECK(r.counts[i] == 0);
    }
}

TEST_CASE("singleton classes are always fully included", "[resampling]") {
    RngStream rng(5);
    const LabeledDataset d = flat_data(1, 1);
    for (int rep = 0; rep < 20; ++rep) {
        const BootstrapReplicate r = stratified_bootstrap(d, rng);
        CHECK(r.indices == std::vector<std::size_t>{0, 1});
        CHECK(r.excluded1.empty());
        CHECK(r.excluded2.empty());
    }
}

TEST_CASE("replicate draws are reproducible from the seed", "[resampling]") {
    const LabeledDataset d = flat_data(12, 8);
    const RngStream stream(777);
    const auto a = draw_replicates(d, 25, stream);
    const auto b = draw_replicates(d, 25, stream);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].indices == b[k].indices);
}

TEST_CASE("exclusion frequency matches the ordered-draw formula", "[resampling][mc]") {
    const std::size_t n = 50;
    const LabeledDataset d = flat_data(n, n);
    const RngStream stream(2024);
    double excluded = 0.0;
    const std::size_t reps = 3000;
    for (std::size_t k = 0; k < reps; ++k) {
        RngStream r = stream.child(k);
        const BootstrapReplicate rep = stratified_bootstrap(d, r);
        excluded += static_cast<double>(rep.excluded1.size() + rep.excluded2.size());
    }
    const double frac = excluded / static_cast<double>(reps * 2 * n);
    const double expected = 1.0 - appearance_probability(n, BootstrapMode::ordered);
    CHECK(frac == Catch::Approx(expected).margin(0.01));
}

TEST_CASE("unordered bootstrap draws multisets uniformly", "[resampling][mc]") {
    SECTION("n = 2 enumerates three equally likely multisets") {
        const LabeledDataset d = flat_data(2, 2);
        const RngStream stream(31);
        std::size_t appearances = 0, aa = 0, ab = 0, bb = 0;
        const std::size_t reps = 30000;
        for (std::size_t k = 0; k < reps; ++k) {
            RngStream r = stream.child(k);
            const BootstrapReplicate rep = unordered_bootstrap(d, r);
            appearances += rep.counts[0] > 0 ? 1 : 0;
            if (rep.counts[0] == 2) ++aa;
            if (rep.counts[0] == 1) ++ab;
            if (rep.counts[0] == 0) ++bb;
        }
        const double total = static_cast<double>(reps);
        CHECK(static_cast<double>(appearances) / total == Catch::Approx(2.0 / 3.0).margin(0.01));
        CHECK(static_cast<double>(aa) / total == Catch::Approx(1.0 / 3.0).margin(0.01));
        CHECK(static_cast<double>(ab) / total == Catch::Approx(1.0 / 3.0).margin(0.01));
        CHECK(static_cast<double>(bb) / total == Catch::Approx(1.0 / 3.0).margin(0.01));
    }
    SECTION("large n settles near half support") {
        const std::size_t n = 100;
        const LabeledDataset d = flat_data(n, n);
        const RngStream stream(32);
        double included = 0.0;
        const std::size_t reps = 3000;
        for (std::size_t k = 0; k < reps; ++k) {
            RngStream r = stream.child(k);
            const BootstrapReplicate rep = unordered_bootstrap(d, r);
            included += static_cast<double>(2 * n - rep.excluded1.size() - rep.excluded2.size());
        }
        const double frac = included / static_cast<double>(reps * 2 * n);
        CHECK(frac == Catch::Approx(appearance_probability(n, BootstrapMode::unordered))
                          .margin(0.015));
    }
    SECTION("multiset sizes are preserved") {
        RngStream rng(33);
        const LabeledDataset d = flat_data(7, 5);
        const BootstrapReplicate rep = unordered_bootstrap(d, rng);
        std::size_t sum1 = 0, sum2 = 0;
        for (std::size_t i : d.class1_indices()) sum1 += rep.counts[i];
        for (std::size_t i : d.class2_indices()) sum2 += rep.counts[i];
        CHECK(sum1 == 7);
        CHECK(sum2 == 5);
    }
}

TEST_CASE("appearance probability closed forms", "[resampling]") {
    CHECK(appearance_probability(2, BootstrapMode::ordered) == 0.75);
    CHECK(appearance_probability(1, BootstrapMode::unordered) == 1.0);
    CHECK(appearance_probability(1000000, BootstrapMode::ordered) ==
          Catch::Approx(1.0 - std::exp(-1.0)).margin(1e-6));
    CHECK(appearance_probability(50, BootstrapMode::ordered) ==
          Catch::Approx(0.636).margin(5e-4));
    CHECK(appearance_probability(50, BootstrapMode::unordered) ==
          Catch::Approx(50.0 / 99.0).margin(1e-15));
    CHECK_THROWS_AS(appearance_probability(0, BootstrapMode::ordered), std::invalid_argument);
}

TEST_CASE("jackknife samples each omit exactly one case", "[resampling]") {
    const LabeledDataset d = flat_data(3, 2);
    const auto samples = jackknife_samples(d);
    REQUIRE(samples.size() == d.size());
    std::set<double> omitted;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(samples[i].size() == d.size() - 1);
        std::multiset<double> have;
        for (std::size_t k = 0; k < samples[i].size(); ++k)
            have.insert(samples[i].feature(k, 0));
        CHECK(have.count(d.feature(i, 0)) == 0);
        omitted.insert(d.feature(i, 0));
    }
    CHECK(omitted.size() == d.size());

    LabeledDataset tiny(1);
    tiny.append({1.0}, ClassLabel::one);
    tiny.append({2.0}, ClassLabel::two);
    const auto pair = jackknife_samples(tiny);
    REQUIRE(pair.size() == 2);
    CHECK(pair[0].size() == 1);
    CHECK(pair[1].size() == 1);

    LabeledDataset one(1);
    one.append({1.0}, ClassLabel::one);
    CHECK_THROWS_AS(jackknife_samples(one), std::invalid_argument);
}

TEST_CASE("cross-validation folds partition and stay stratified", "[resampling]") {
    SECTION("k = n gives leave-one-out singletons") {
        const LabeledDataset d = flat_data(4, 3);
        RngStream rng(1);
        const FoldPlan plan = cv_folds(d, d.size(), rng);
        for (std::size_t f = 0; f < plan.k; ++f) CHECK(plan.fold_members(f).size() == 1);
    }
    SECTION("k = 2 with balanced classes splits each class in half") {
        const LabeledDataset d = flat_data(10, 10);
        RngStream rng(2);
        const FoldPlan plan = cv_folds(d, 2, rng);
        for (std::size_t f = 0; f < 2; ++f) {
            std::size_t c1 = 0, c2 = 0;
            for (std::size_t i : plan.fold_members(f))
                (d.label(i) == ClassLabel::one ? c1 : c2) += 1;
            CHECK(c1 == 5);
            CHECK(c2 == 5);
        }
    }
    SECTION("per-class fold sizes differ by at most one") {
        const LabeledDataset d = flat_data(10, 7);
        RngStream rng(3);
        const FoldPlan plan = cv_folds(d, 3, rng);
        for (ClassLabel label : {ClassLabel::one, ClassLabel::two}) {
            std::vector<std::size_t> sizes(plan.k, 0);
            for (std::size_t i : d.class_indices(label)) ++sizes[plan.fold_of[i]];
            const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
            CHECK(*hi - *lo <= 1);
        }
        std::size_t assigned = 0;
        for (std::size_t f = 0; f < plan.k; ++f) assigned += plan.fold_members(f).size();
        CHECK(assigned == d.size());
    }
    SECTION("out-of-range k rejected") {
        const LabeledDataset d = flat_data(4, 4);
        RngStream rng(4);
        CHECK_THROWS_AS(cv_folds(d, 1, rng), std::invalid_argument);
        CHECK_THROWS_AS(cv_folds(d, 9, rng), std::invalid_argument);
    }
}
