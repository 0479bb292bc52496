#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "aucboot/classifiers.hpp"
#include "aucboot/dataset.hpp"
#include "aucboot/metrics.hpp"
#include "aucboot/rng.hpp"

namespace testutil {

/// Independent AUC oracle: the kernel averaged over all pairs by brute
/// force. The library path goes through pooled mid-ranks instead.
inline double mw_brute_force(const aucboot::ScoreSet& s) {
    double total = 0.0;
    for (double a : s.scores1)
        for (double b : s.scores2) total += aucboot::mann_whitney_kernel(a, b);
    return total / (static_cast<double>(s.scores1.size()) * static_cast<double>(s.scores2.size()));
}

/// Random score set with one to max_per_class scores per class; roughly half
/// the sets are drawn on a small integer lattice to force ties.
inline aucboot::ScoreSet random_scoreset(aucboot::RngStream& rng, std::size_t max_per_class = 30) {
    aucboot::ScoreSet s;
    const bool lattice = rng.next_unit() < 0.5;
    auto draw = [&]() {
        if (lattice) return static_cast<double>(rng.next_below(7)) - 3.0;
        return 2.0 * rng.next_normal();
    };
    const std::size_t n1 = 1 + static_cast<std::size_t>(rng.next_below(max_per_class));
    const std::size_t n2 = 1 + static_cast<std::size_t>(rng.next_below(max_per_class));
    for (std::size_t i = 0; i < n1; ++i) s.scores1.push_back(draw());
    for (std::size_t i = 0; i < n2; ++i) s.scores2.push_back(draw());
    return s;
}

/// Standard normal CDF.
inline double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Two-class multinormal dataset with identity covariance and mean shift c
/// on every coordinate of class 2.
inline aucboot::LabeledDataset gaussian_data(std::size_t n_per_class, std::size_t dim, double c,
                                             aucboot::RngStream& rng) {
    aucboot::LabeledDataset data(dim);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < n_per_class; ++i) {
        for (double& v : x) v = rng.next_normal();
        data.append(x, aucboot::ClassLabel::one);
    }
    for (std::size_t i = 0; i < n_per_class; ++i) {
        for (double& v : x) v = c + rng.next_normal();
        data.append(x, aucboot::ClassLabel::two);
    }
    return data;
}

/// Model with a fixed linear score; pairs with FixedTrainer for estimator
/// tests that need a rule independent of the training data.
struct LinearModel {
    std::vector<double> w;
    double b = 0.0;
    double score(std::span<const double> x) const {
        double s = b;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * x[j];
        return s;
    }
};

/// Trainer that ignores the training cases entirely.
struct FixedTrainer {
    LinearModel model;
    LinearModel operator()(const aucboot::LabeledDataset&, std::span<const std::size_t>) const {
        return model;
    }
};

}  // namespace testutil
