#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aucboot/auc_estimators.hpp"
#include "aucboot/dataset.hpp"
#include "aucboot/error_estimators.hpp"
#include "aucboot/replicate_scores.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

/// Relative probability weight of a replicate after perturbing the mass of a
/// case it includes N_i_b times, for a class (or sample) of size n. The
/// constant base-measure factor common to all replicates is dropped, so the
/// weight is 1 for every replicate at eps = 0 and the weights are meant to be
/// normalized over the replicate set. At the deletion value of eps the weight
/// of any replicate containing the case vanishes.
inline double perturbed_bootstrap_weight(std::size_t n, std::uint32_t n_i_b, double eps) {
    const double nd = static_cast<double>(n);
    return std::pow(1.0 - eps, nd) *
           std::pow(1.0 + nd * eps / (1.0 - eps), static_cast<double>(n_i_b));
}

enum class SweepMetric { error, auc };

namespace detail {

/// Within-class test masses after perturbing case `target` (unnormalized per
/// class; the estimator formulas renormalize over the excluded cases).
inline double perturbed_case_mass(const LabeledDataset& data, std::size_t target,
                                  std::size_t j, double eps) {
    const std::size_t nk = data.class_indices(data.label(j)).size();
    if (data.label(j) != data.label(target)) return 1.0 / static_cast<double>(nk);
    double m = (1.0 - eps) / static_cast<double>(nk);
    if (j == target) m += eps;
    return m;
}

}  // namespace detail

/// Exclusion-tested estimator value under a mass perturbation of one case:
/// per replicate, the excluded-set metric is evaluated with perturbed test
/// masses, and the replicate average is reweighted by the perturbed
/// replicate probabilities. At eps = 0 this reduces to err_star / auc_star
/// on the same replicates.
inline double perturbed_estimator_value(const LabeledDataset& data, const ScoreTable& scores,
                                        std::span<const BootstrapReplicate> reps,
                                        std::size_t target, double eps, SweepMetric metric,
                                        double threshold = 0.0) {
    const std::size_t nk = data.class_indices(data.label(target)).size();
    double weight_sum = 0.0;
    double total = 0.0;
    for (std::size_t b = 0; b < reps.size(); ++b) {
        const auto& e1 = reps[b].excluded1;
        const auto& e2 = reps[b].excluded2;
        double value = 0.0;
        if (metric == SweepMetric::error) {
            if (e1.empty() && e2.empty()) continue;  // dropped, as in err_star
            double num = 0.0, den = 0.0;
            for (const auto* list : {&e1, &e2}) {
                for (std::size_t j : *list) {
                    const double prior =
                        static_cast<double>(data.class_indices(data.label(j)).size()) /
                        static_cast<double>(data.size());
                    const double m = prior * detail::perturbed_case_mass(data, target, j, eps);
                    num += m * zero_one_loss(scores.rows[b][j], data.label(j), threshold);
                    den += m;
                }
            }
            value = num / den;
        } else {
            if (e1.empty() || e2.empty()) continue;  // dropped, as in auc_star
            double num = 0.0, den1 = 0.0, den2 = 0.0;
            for (std::size_t i : e1) {
                const double mi = detail::perturbed_case_mass(data, target, i, eps);
                den1 += mi;
                for (std::size_t j : e2) {
                    const double mj = detail::perturbed_case_mass(data, target, j, eps);
                    num += mi * mj * mann_whitney_kernel(scores.rows[b][i], scores.rows[b][j]);
                }
            }
            for (std::size_t j : e2) den2 += detail::perturbed_case_mass(data, target, j, eps);
            value = num / (den1 * den2);
        }
        const double g = perturbed_bootstrap_weight(nk, reps[b].counts[target], eps);
        weight_sum += g;
        total += g * value;
    }
    if (weight_sum <= 0.0)
        throw std::runtime_error("perturbed_estimator_value: no usable replicates");
    return total / weight_sum;
}

/// One swept case: estimator responses traced over a grid of values of one
/// feature coordinate, with the replicate index patterns frozen so all
/// variation comes from the swept value.
struct PerturbationSweep {
    std::size_t case_index = 0;
    std::size_t coordinate = 0;
    std::vector<double> grid;
    std::vector<std::string> names;
    std::vector<std::vector<double>> curves;  // curves[c][g]

    std::span<const double> curve(const std::string& name) const {
        for (std::size_t c = 0; c < names.size(); ++c)
            if (names[c] == name) return curves[c];
        throw std::invalid_argument("unknown sweep curve: " + name);
    }
};

struct SweepOptions {
    std::size_t case_index = 0;
    std::size_t coordinate = 0;
    std::vector<double> grid;
    double threshold = 0.0;
    bool auc_curves = true;
};

/// Evenly spaced grid centered on the case's current coordinate value and
/// spanning +-span_sd standard deviations of that coordinate.
inline std::vector<double> default_sweep_grid(const LabeledDataset& data, std::size_t case_index,
                                              std::size_t coordinate, std::size_t points = 50,
                                              double span_sd = 3.0) {
    if (points < 2) throw std::invalid_argument("default_sweep_grid: need >= 2 points");
    double mean = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) mean += data.feature(i, coordinate);
    mean /= static_cast<double>(data.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double d = data.feature(i, coordinate) - mean;
        ss += d * d;
    }
    double sd = std::sqrt(ss / static_cast<double>(data.size()));
    if (!(sd > 0.0)) sd = 1.0;
    const double center = data.feature(case_index, coordinate);
    const double lo = center - span_sd * sd;
    const double step = 2.0 * span_sd * sd / static_cast<double>(points - 1);
    std::vector<double> grid(points);
    for (std::size_t g = 0; g < points; ++g) grid[g] = lo + step * static_cast<double>(g);
    return grid;
}

/// Sweeps one feature of one case over a grid and records, per grid value:
/// the single-replicate excluded-set error (trained on the first replicate
/// that excludes the case), the replicate-averaged exclusion estimators, and
/// the case-averaged leave-one-out / leave-pair-out estimators. Models of
/// replicates that exclude the swept case never see its value and are fitted
/// once; replicates containing the case are refitted at every grid point.
template <SubsetTrainer Trainer>
PerturbationSweep feature_sweep(const LabeledDataset& base, const Trainer& trainer,
                                std::span<const BootstrapReplicate> reps,
                                const SweepOptions& opt) {
    if (opt.grid.size() < 2) throw std::invalid_argument("feature_sweep: need >= 2 grid points");
    for (std::size_t g = 1; g < opt.grid.size(); ++g)
        if (!(opt.grid[g] > opt.grid[g - 1]))
            throw std::invalid_argument("feature_sweep: grid must be strictly increasing");
    for (double v : opt.grid)
        if (!std::isfinite(v)) throw std::invalid_argument("feature_sweep: grid must be finite");
    if (opt.case_index >= base.size() || opt.coordinate >= base.dim())
        throw std::invalid_argument("feature_sweep: case or coordinate out of range");

    using Model = decltype(trainer(base, std::span<const std::size_t>{}));
    const std::size_t target = opt.case_index;

    std::vector<Model> cached;  // models of replicates that exclude the target
    std::vector<std::ptrdiff_t> cache_slot(reps.size(), -1);
    std::size_t single_rep = reps.size();
    for (std::size_t b = 0; b < reps.size(); ++b) {
        if (!reps[b].excluded(target)) continue;
        cache_slot[b] = static_cast<std::ptrdiff_t>(cached.size());
        cached.push_back(trainer(base, reps[b].indices));
        if (single_rep == reps.size() &&
            !reps[b].excluded1.empty() && !reps[b].excluded2.empty())
            single_rep = b;
    }
    if (single_rep == reps.size())
        throw std::runtime_error("feature_sweep: no replicate excludes the swept case");

    PerturbationSweep sweep;
    sweep.case_index = target;
    sweep.coordinate = opt.coordinate;
    sweep.grid = opt.grid;
    sweep.names = {"single_component", "err_star", "loob"};
    if (opt.auc_curves) {
        sweep.names.push_back("auc_star");
        sweep.names.push_back("lpob");
    }
    sweep.curves.assign(sweep.names.size(), std::vector<double>(opt.grid.size(), 0.0));

    LabeledDataset work = base;
    const RngStream frozen_supplement(0x5eedU);  // same patch draws at every grid point
    for (std::size_t g = 0; g < opt.grid.size(); ++g) {
        work.set_feature(target, opt.coordinate, opt.grid[g]);

        ScoreTable scores;
        scores.n = work.size();
        scores.rows.reserve(reps.size());
        for (std::size_t b = 0; b < reps.size(); ++b) {
            std::vector<double> row(work.size());
            if (cache_slot[b] >= 0) {
                const Model& m = cached[static_cast<std::size_t>(cache_slot[b])];
                for (std::size_t i = 0; i < work.size(); ++i) row[i] = m.score(work.row(i));
            } else {
                const Model m = trainer(work, reps[b].indices);
                for (std::size_t i = 0; i < work.size(); ++i) row[i] = m.score(work.row(i));
            }
            scores.rows.push_back(std::move(row));
        }
        const auto loss = detail::loss_table(scores, work, opt.threshold);

        {
            const auto& rep = reps[single_rep];
            double s = 0.0;
            for (std::size_t i : rep.excluded1) s += loss[single_rep][i];
            for (std::size_t i : rep.excluded2) s += loss[single_rep][i];
            sweep.curves[0][g] =
                s / static_cast<double>(rep.excluded1.size() + rep.excluded2.size());
        }
        sweep.curves[1][g] = err_star_from_losses(loss, reps).value;
        sweep.curves[2][g] =
            loob_error_from_losses(work, trainer, loss, reps, opt.threshold, frozen_supplement)
                .value;
        if (opt.auc_curves) {
            sweep.curves[3][g] = auc_star_from_scores(scores, reps).value;
            sweep.curves[4][g] =
                lpob_auc_from_scores(work, trainer, scores, reps, frozen_supplement).value;
        }
    }
    return sweep;
}

struct SmoothnessMetric {
    double max_jump = 0.0;
    std::size_t jumps_above = 0;
};

/// Largest adjacent-point jump of a curve, plus the number of jumps above a
/// threshold.
inline SmoothnessMetric smoothness_metric(std::span<const double> curve,
                                          double jump_threshold = 0.0) {
    SmoothnessMetric m;
    for (std::size_t g = 1; g < curve.size(); ++g) {
        const double jump = std::abs(curve[g] - curve[g - 1]);
        m.max_jump = std::max(m.max_jump, jump);
        if (jump > jump_threshold) ++m.jumps_above;
    }
    return m;
}

}  // namespace aucboot
