#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aucboot/dataset.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

enum class BootstrapMode { ordered, unordered };

/// One stratified bootstrap replicate with full inclusion bookkeeping:
/// the drawn case indices (class-1 block first), the inclusion count per
/// original case, and the per-class lists of excluded cases.
struct BootstrapReplicate {
    std::vector<std::size_t> indices;    // n1 draws from class 1, then n2 from class 2
    std::vector<std::uint32_t> counts;   // inclusion count per original case
    std::vector<std::size_t> excluded1;  // class-1 cases with count 0
    std::vector<std::size_t> excluded2;

    bool excluded(std::size_t i) const { return counts[i] == 0; }

    void rebuild_bookkeeping(const LabeledDataset& data) {
        counts.assign(data.size(), 0);
        for (std::size_t i : indices) ++counts[i];
        excluded1.clear();
        excluded2.clear();
        for (std::size_t i : data.class1_indices())
            if (counts[i] == 0) excluded1.push_back(i);
        for (std::size_t i : data.class2_indices())
            if (counts[i] == 0) excluded2.push_back(i);
    }
};

namespace detail {

inline void require_two_classes(const LabeledDataset& data) {
    if (data.n1() == 0 || data.n2() == 0)
        throw std::invalid_argument("resampling: both classes must be non-empty");
}

/// Uniform size-k combination from {0, ..., m-1} (Floyd's algorithm).
inline std::vector<std::size_t> random_combination(std::size_t m, std::size_t k, RngStream& rng) {
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    for (std::size_t j = m - k; j < m; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng.next_below(j + 1));
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
            chosen.push_back(t);
        else
            chosen.push_back(j);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

/// Uniform multiset of size n over {0, ..., n-1} via a stars-and-bars
/// bijection: a sorted size-n combination of 2n-1 slot positions maps to a
/// multiset by item = slot - position. Sorting an ordered with-replacement
/// sample would NOT be uniform over multisets, which is the distribution the
/// half-support result assumes.
inline std::vector<std::size_t> uniform_multiset(std::size_t n, RngStream& rng) {
    if (n == 1) return {0};
    std::vector<std::size_t> slots = random_combination(2 * n - 1, n, rng);
    std::vector<std::size_t> items(n);
    for (std::size_t j = 0; j < n; ++j) items[j] = slots[j] - j;
    return items;
}

}  // namespace detail

/// Stratified bootstrap: n_k draws with replacement within each class, so the
/// replicate preserves the class ratio.
inline BootstrapReplicate stratified_bootstrap(const LabeledDataset& data, RngStream& rng) {
    detail::require_two_classes(data);
    BootstrapReplicate rep;
    rep.indices.reserve(data.size());
    for (const auto* cls : {&data.class1_indices(), &data.class2_indices()}) {
        const std::size_t nk = cls->size();
        for (std::size_t d = 0; d < nk; ++d)
            rep.indices.push_back((*cls)[static_cast<std::size_t>(rng.next_below(nk))]);
    }
    rep.rebuild_bookkeeping(data);
    return rep;
}

/// Bootstrap that draws, per class, a multiset uniformly over all multisets
/// of size n_k (sampling with replacement without ordering).
inline BootstrapReplicate unordered_bootstrap(const LabeledDataset& data, RngStream& rng) {
    detail::require_two_classes(data);
    BootstrapReplicate rep;
    rep.indices.reserve(data.size());
    for (const auto* cls : {&data.class1_indices(), &data.class2_indices()}) {
        std::vector<std::size_t> items = detail::uniform_multiset(cls->size(), rng);
        for (std::size_t item : items) rep.indices.push_back((*cls)[item]);
    }
    rep.rebuild_bookkeeping(data);
    return rep;
}

/// Draws B replicates from per-replicate child streams, so the set is
/// reproducible independently of evaluation order.
inline std::vector<BootstrapReplicate> draw_replicates(const LabeledDataset& data, std::size_t b,
                                                       const RngStream& stream,
                                                       BootstrapMode mode = BootstrapMode::ordered) {
    std::vector<BootstrapReplicate> reps;
    reps.reserve(b);
    for (std::size_t i = 0; i < b; ++i) {
        RngStream r = stream.child(i);
        reps.push_back(mode == BootstrapMode::ordered ? stratified_bootstrap(data, r)
                                                      : unordered_bootstrap(data, r));
    }
    return reps;
}

/// Probability that a fixed case appears in a bootstrap replicate of size n.
/// Ordered draws: 1 - (1 - 1/n)^n (-> 0.632); uniform multisets: n/(2n-1).
inline double appearance_probability(std::size_t n, BootstrapMode mode) {
    if (n < 1) throw std::invalid_argument("appearance_probability: n must be >= 1");
    const double nd = static_cast<double>(n);
    if (mode == BootstrapMode::ordered) return 1.0 - std::pow(1.0 - 1.0 / nd, nd);
    return nd / (2.0 * nd - 1.0);
}

/// The n leave-one-out datasets; sample i omits exactly case i.
inline std::vector<LabeledDataset> jackknife_samples(const LabeledDataset& data) {
    if (data.size() < 2) throw std::invalid_argument("jackknife_samples: need n >= 2");
    std::vector<LabeledDataset> out;
    out.reserve(data.size());
    for (std::size_t omit = 0; omit < data.size(); ++omit) {
        LabeledDataset d(data.dim());
        for (std::size_t i = 0; i < data.size(); ++i)
            if (i != omit) d.append(data.row(i), data.label(i));
        out.push_back(std::move(d));
    }
    return out;
}

/// Assignment of every case to one of k folds, stratified by class.
struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::uint32_t> fold_of;  // per case index

    std::vector<std::size_t> fold_members(std::size_t f) const {
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] == f) m.push_back(i);
        return m;
    }
};

/// Stratified k-fold plan: each class is shuffled and dealt round-robin, the
/// second class continuing where the first stopped so fold totals stay even
/// (k = n yields singleton leave-one-out folds).
inline FoldPlan cv_folds(const LabeledDataset& data, std::size_t k, RngStream& rng) {
    detail::require_two_classes(data);
    if (k < 2 || k > data.size()) throw std::invalid_argument("cv_folds: need 2 <= k <= n");
    FoldPlan plan;
    plan.k = k;
    plan.fold_of.assign(data.size(), 0);
    std::size_t next_fold = 0;
    for (const auto* cls : {&data.class1_indices(), &data.class2_indices()}) {
        std::vector<std::size_t> order = *cls;
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[static_cast<std::size_t>(rng.next_below(i))]);
        for (std::size_t i : order) {
            plan.fold_of[i] = static_cast<std::uint32_t>(next_fold);
            next_fold = (next_fold + 1) % k;
        }
    }
    return plan;
}

}  // namespace aucboot
