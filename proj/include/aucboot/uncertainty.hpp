#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "aucboot/error_estimators.hpp"
#include "aucboot/replicate_scores.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

/// Real-valued statistic evaluated on a weighted sample. Weights sum to one;
/// the uniform weighting 1/n recovers the plain statistic. Influence-based
/// operations additionally require the statistic to be functional: its value
/// may depend on the weighted empirical distribution only, never on the raw
/// case count.
using StatisticFn = std::function<double(std::span<const double>, std::span<const double>)>;

inline std::vector<double> uniform_weights(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

inline double weighted_mean(std::span<const double> x, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
    return s;
}

/// Plug-in (biased) variance; this one is functional, the (n-1) version is not.
inline double weighted_variance_biased(std::span<const double> x, std::span<const double> w) {
    const double m = weighted_mean(x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (x[i] - m) * (x[i] - m);
    return s;
}

struct BiasSe {
    double bias = 0.0;
    double se = 0.0;
};

/// Bootstrap bias and standard error of a statistic (B-1 in the SE
/// denominator). Replicates are plain with-replacement draws of the sample.
inline BiasSe bootstrap_bias_se(const StatisticFn& stat, std::span<const double> x, std::size_t b,
                                const RngStream& stream) {
    const std::size_t n = x.size();
    if (n == 0 || b < 2) throw std::invalid_argument("bootstrap_bias_se: need data and B >= 2");
    const std::vector<double> w = uniform_weights(n);
    const double theta_hat = stat(x, w);

    std::vector<double> theta_star(b, 0.0);
    std::vector<double> resample(n, 0.0);
    for (std::size_t rep = 0; rep < b; ++rep) {
        RngStream rng = stream.child(rep);
        for (std::size_t i = 0; i < n; ++i)
            resample[i] = x[static_cast<std::size_t>(rng.next_below(n))];
        theta_star[rep] = stat(resample, w);
    }
    const double mean_star =
        std::accumulate(theta_star.begin(), theta_star.end(), 0.0) / static_cast<double>(b);
    double ss = 0.0;
    for (double t : theta_star) ss += (t - mean_star) * (t - mean_star);
    return BiasSe{mean_star - theta_hat, std::sqrt(ss / static_cast<double>(b - 1))};
}

/// Jackknife bias and standard error with the classical (n-1) scale factors.
inline BiasSe jackknife_bias_se(const StatisticFn& stat, std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("jackknife_bias_se: need n >= 2");
    const std::vector<double> w_full = uniform_weights(n);
    const double theta_hat = stat(x, w_full);

    std::vector<double> theta_loo(n, 0.0);
    std::vector<double> reduced(n - 1, 0.0);
    const std::vector<double> w = uniform_weights(n - 1);
    for (std::size_t omit = 0; omit < n; ++omit) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != omit) reduced[k++] = x[i];
        theta_loo[omit] = stat(reduced, w);
    }
    const double mean_loo =
        std::accumulate(theta_loo.begin(), theta_loo.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double t : theta_loo) ss += (t - mean_loo) * (t - mean_loo);
    const double nd = static_cast<double>(n);
    return BiasSe{(nd - 1.0) * (mean_loo - theta_hat), std::sqrt((nd - 1.0) / nd * ss)};
}

/// Mass vector after perturbing case i: every case keeps (1-eps)/n and the
/// perturbed case gains eps on top.
inline std::vector<double> perturbed_weights(std::size_t n, std::size_t i, double eps) {
    std::vector<double> w(n, (1.0 - eps) / static_cast<double>(n));
    w[i] += eps;
    return w;
}

/// The perturbation magnitude that removes case i entirely: the perturbed
/// mass (1-eps)/n + eps hits zero at eps = -1/(n-1), leaving a uniform
/// distribution over the remaining n-1 cases (the jackknife deletion).
inline double deletion_epsilon(std::size_t n) {
    if (n < 2) throw std::invalid_argument("deletion_epsilon: need n >= 2");
    return -1.0 / (static_cast<double>(n) - 1.0);
}

/// Duplication test: a functional statistic is unchanged when every case is
/// repeated twice at half weight.
inline bool is_functional_statistic(const StatisticFn& stat, std::span<const double> x,
                                    double tol = 1e-9) {
    const std::size_t n = x.size();
    std::vector<double> doubled;
    doubled.reserve(2 * n);
    for (double v : x) {
        doubled.push_back(v);
        doubled.push_back(v);
    }
    const double base = stat(x, uniform_weights(n));
    const double dup = stat(doubled, uniform_weights(2 * n));
    return std::abs(dup - base) <= tol * std::max(1.0, std::abs(base));
}

namespace detail {

inline void require_functional(const StatisticFn& stat, std::span<const double> x) {
    if (!is_functional_statistic(stat, x))
        throw std::invalid_argument("statistic fails the duplication test; not a functional");
}

inline double central_difference(const StatisticFn& stat, std::span<const double> x,
                                 std::size_t i, double eps) {
    const std::vector<double> wp = perturbed_weights(x.size(), i, eps);
    const std::vector<double> wm = perturbed_weights(x.size(), i, -eps);
    return (stat(x, wp) - stat(x, wm)) / (2.0 * eps);
}

}  // namespace detail

/// Default perturbation schedule for the numerical influence derivative.
struct EpsilonSchedule {
    double e0 = 1e-2;  // halved twice for Richardson extrapolation
};

/// Empirical influence of case i: the derivative of the statistic under the
/// point-mass perturbation at i, via central differences over a halving
/// epsilon schedule with two-level Richardson extrapolation.
inline double empirical_influence(const StatisticFn& stat, std::span<const double> x,
                                  std::size_t i, EpsilonSchedule schedule = {},
                                  bool check_functional = true) {
    if (i >= x.size()) throw std::invalid_argument("empirical_influence: index out of range");
    if (check_functional) detail::require_functional(stat, x);
    const double d1 = detail::central_difference(stat, x, i, schedule.e0);
    const double d2 = detail::central_difference(stat, x, i, schedule.e0 / 2.0);
    const double d3 = detail::central_difference(stat, x, i, schedule.e0 / 4.0);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

struct InfluenceReport {
    std::vector<double> u;    // per-case influence values
    double variance = 0.0;    // (1/n^2) sum u_i^2
    double mean_u = 0.0;      // residual mean, ~0 for smooth statistics
};

inline InfluenceReport influence_report(const StatisticFn& stat, std::span<const double> x,
                                        EpsilonSchedule schedule = {}) {
    detail::require_functional(stat, x);
    InfluenceReport rep;
    rep.u.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        rep.u[i] = empirical_influence(stat, x, i, schedule, /*check_functional=*/false);
    const double n = static_cast<double>(x.size());
    double ss = 0.0, s = 0.0;
    for (double u : rep.u) {
        ss += u * u;
        s += u;
    }
    rep.variance = ss / (n * n);
    rep.mean_u = s / n;
    return rep;
}

/// Influence-function variance estimate of a functional statistic.
inline double if_variance(const StatisticFn& stat, std::span<const double> x,
                          EpsilonSchedule schedule = {}) {
    return influence_report(stat, x, schedule).variance;
}

struct LoobInfluenceResult {
    double variance = 0.0;
    double sd = 0.0;
    double loob = 0.0;
    std::vector<double> u;  // per-case influence values
};

/// Influence-function variance of the leave-one-out bootstrap error.
///
/// Per case, the closed-form derivative combines a centered per-case term,
/// (2 + 1/(n-1)) (E_i - loob), with a covariance between the case's
/// inclusion counts N_i^b and the replicate-level mean excluded loss
/// l_bar^b = (1/n) sum_j I_j^b L_j^b, scaled by n over the case's exclusion
/// count. Cases excluded by no replicate contribute a patched E_i and a zero
/// covariance term.
template <SubsetTrainer Trainer>
LoobInfluenceResult if_variance_loob_error(const LabeledDataset& data, const Trainer& trainer,
                                           std::span<const BootstrapReplicate> reps,
                                           double threshold, const RngStream& supplement_stream) {
    const std::size_t n = data.size();
    const std::size_t b_total = reps.size();
    if (n < 2 || b_total == 0)
        throw std::invalid_argument("if_variance_loob_error: need n >= 2 and replicates");

    const ScoreTable scores = score_replicates(data, trainer, reps);
    std::vector<std::vector<double>> loss(b_total);
    for (std::size_t b = 0; b < b_total; ++b) {
        loss[b].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            loss[b][i] = zero_one_loss(scores.rows[b][i], data.label(i), threshold);
    }

    const LoobResult lo =
        loob_error_from_losses(data, trainer, loss, reps, threshold, supplement_stream);

    std::vector<double> l_bar(b_total, 0.0);
    for (std::size_t b = 0; b < b_total; ++b) {
        double s = 0.0;
        for (std::size_t i : reps[b].excluded1) s += loss[b][i];
        for (std::size_t i : reps[b].excluded2) s += loss[b][i];
        l_bar[b] = s / static_cast<double>(n);
    }

    LoobInfluenceResult out;
    out.loob = lo.value;
    out.u.resize(n);
    const double nd = static_cast<double>(n);
    const double lead = 2.0 + 1.0 / (nd - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double n_bar = 0.0;
        for (std::size_t b = 0; b < b_total; ++b) n_bar += reps[b].counts[i];
        n_bar /= static_cast<double>(b_total);
        double cov = 0.0;
        for (std::size_t b = 0; b < b_total; ++b)
            cov += (static_cast<double>(reps[b].counts[i]) - n_bar) * l_bar[b];
        const double exclusions = static_cast<double>(lo.cover_count[i]);
        const double cov_term = exclusions > 0.0 ? nd * cov / exclusions : 0.0;
        out.u[i] = lead * (lo.per_case_mean[i] - lo.value) + cov_term;
    }
    double ss = 0.0;
    for (double u : out.u) ss += u * u;
    out.variance = ss / (nd * nd);
    out.sd = std::sqrt(out.variance);
    return out;
}

}  // namespace aucboot
