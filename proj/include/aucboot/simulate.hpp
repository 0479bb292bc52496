#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "aucboot/auc_estimators.hpp"
#include "aucboot/classifiers.hpp"
#include "aucboot/dataset.hpp"
#include "aucboot/error_estimators.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

enum class MetricKind { auc, error };

inline const char* to_string(MetricKind m) { return m == MetricKind::auc ? "auc" : "error"; }

/// Everything one Monte-Carlo experiment needs: the multinormal data model,
/// sizes, resampling counts, and the master seed all streams derive from.
struct ExperimentConfig {
    std::size_t dim = 5;
    std::size_t n1 = 20;
    std::size_t n2 = 20;
    double delta = 0.8;            // Mahalanobis separation between the classes
    std::optional<double> shift;   // direct mean-shift override (c); default delta/sqrt(dim)
    std::size_t trials = 200;      // G
    std::size_t bootstraps = 100;  // B
    std::size_t test_per_class = 1000;
    ClassifierKind classifier = ClassifierKind::lda;
    ClassifierKind classifier2 = ClassifierKind::qda;
    MetricKind metric = MetricKind::auc;
    double threshold = 0.0;
    bool lpob = false;  // include the leave-pair-out estimator in bundles
    std::size_t jobs = 1;
    std::uint64_t seed = 1;

    double mean_shift() const {
        return shift ? *shift : delta / std::sqrt(static_cast<double>(dim));
    }

    void validate() const {
        if (dim < 1) throw std::invalid_argument("config: dim must be >= 1");
        if (n1 < 2 || n2 < 2) throw std::invalid_argument("config: n1, n2 must be >= 2");
        if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
        if (bootstraps < 1) throw std::invalid_argument("config: bootstraps must be >= 1");
        if (test_per_class < 1) throw std::invalid_argument("config: test_per_class must be >= 1");
        if (delta < 0.0) throw std::invalid_argument("config: delta must be >= 0");
        if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    }
};

/// Derived-stream ids under one trial stream; ids are fixed so any subset of
/// the work can be recomputed independently.
namespace stream_id {
inline constexpr std::uint64_t trials = 0;
inline constexpr std::uint64_t sizes = 1;
inline constexpr std::uint64_t train_data = 0;
inline constexpr std::uint64_t replicates = 1;
inline constexpr std::uint64_t supplements = 2;
inline constexpr std::uint64_t lpob_supplements = 3;
inline constexpr std::uint64_t test_data = 4;
}  // namespace stream_id

/// Two-class multinormal sample: class 1 ~ N(0, I), class 2 ~ N(c*1, I) with
/// c = delta / sqrt(dim) unless overridden.
inline LabeledDataset gen_multinormal(const ExperimentConfig& config, RngStream& rng) {
    LabeledDataset data(config.dim);
    const double c = config.mean_shift();
    std::vector<double> x(config.dim);
    for (std::size_t i = 0; i < config.n1; ++i) {
        for (double& v : x) v = rng.next_normal();
        data.append(x, ClassLabel::one);
    }
    for (std::size_t i = 0; i < config.n2; ++i) {
        for (double& v : x) v = c + rng.next_normal();
        data.append(x, ClassLabel::two);
    }
    return data;
}

namespace detail {

inline LabeledDataset gen_test_set(const ExperimentConfig& config, RngStream& rng) {
    ExperimentConfig test_cfg = config;
    test_cfg.n1 = test_cfg.n2 = config.test_per_class;
    return gen_multinormal(test_cfg, rng);
}

}  // namespace detail

/// Conditional performance of a trained model, approximated on a fresh
/// pseudo-infinite test draw (test_per_class cases per class).
template <class Model>
double true_conditional_metric(const Model& model, const ExperimentConfig& config,
                               RngStream& rng) {
    const LabeledDataset test = detail::gen_test_set(config, rng);
    const ScoreSet s = score_dataset_generic(model, test);
    if (config.metric == MetricKind::auc) return auc_mann_whitney(s);
    return zero_one_error(s, config.threshold);
}

/// Root-mean-square deviation of per-trial estimates from per-trial truths.
inline double rms(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size() || estimate.empty())
        throw std::invalid_argument("rms: need matched non-empty vectors");
    double ss = 0.0;
    for (std::size_t g = 0; g < estimate.size(); ++g) {
        const double d = estimate[g] - truth[g];
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(estimate.size()));
}

/// Root-mean-square deviation from a fixed center (the population-mean
/// stand-in: the Monte-Carlo mean of the true per-trial metric).
inline double rms_around_mean(std::span<const double> estimate, double center) {
    if (estimate.empty()) throw std::invalid_argument("rms_around_mean: empty input");
    double ss = 0.0;
    for (double e : estimate) {
        const double d = e - center;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(estimate.size()));
}

struct CorrResult {
    double value = 0.0;
    bool degenerate = false;  // zero variance on either side; value reported as 0
};

/// Sample Pearson correlation; degenerate inputs are flagged and report 0.
inline CorrResult corr_coef(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("corr_coef: need matched vectors of size >= 2");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t g = 0; g < a.size(); ++g) {
        ma += a[g];
        mb += b[g];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t g = 0; g < a.size(); ++g) {
        saa += (a[g] - ma) * (a[g] - ma);
        sbb += (b[g] - mb) * (b[g] - mb);
        sab += (a[g] - ma) * (b[g] - mb);
    }
    // Numerically constant inputs (spread at rounding-noise level) are
    // degenerate: the correlation is undefined and reported as 0.
    const double tol_a = 1e-12 * std::max(1.0, std::abs(ma));
    const double tol_b = 1e-12 * std::max(1.0, std::abs(mb));
    if (std::sqrt(saa / n) <= tol_a || std::sqrt(sbb / n) <= tol_b)
        return CorrResult{0.0, true};
    return CorrResult{sab / std::sqrt(saa * sbb), false};
}

inline double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(std::span<const double> v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// Fixed-bound parallel loop keyed by index; results must be written to
/// per-index slots so the outcome is independent of scheduling.
inline void parallel_for(std::size_t jobs, std::size_t count,
                         const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(jobs, count);
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct EstimatorTrace {
    std::string name;
    std::vector<double> per_trial;
};

struct AggregateRow {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    double rms = 0.0;
    double rms_around_mean = 0.0;
    double corr = 0.0;
    bool corr_degenerate = false;
};

struct MCExperimentReport {
    std::vector<std::uint64_t> trial_seed;  // seed of each trial stream, for reproduction
    std::vector<double> true_metric;
    std::vector<EstimatorTrace> estimators;

    std::span<const double> trace(const std::string& name) const {
        for (const auto& t : estimators)
            if (t.name == name) return t.per_trial;
        throw std::invalid_argument("unknown estimator trace: " + name);
    }

    /// Table-style summary; the first row is the true conditional metric.
    std::vector<AggregateRow> aggregate() const {
        std::vector<AggregateRow> rows;
        const double true_mean = mean_of(true_metric);
        AggregateRow truth;
        truth.name = "true";
        truth.mean = true_mean;
        truth.sd = sample_sd(true_metric);
        truth.rms = 0.0;
        truth.rms_around_mean = rms_around_mean(true_metric, true_mean);
        truth.corr = 1.0;
        rows.push_back(truth);
        for (const auto& t : estimators) {
            AggregateRow r;
            r.name = t.name;
            r.mean = mean_of(t.per_trial);
            r.sd = sample_sd(t.per_trial);
            r.rms = rms(t.per_trial, true_metric);
            r.rms_around_mean = rms_around_mean(t.per_trial, true_mean);
            const CorrResult c = corr_coef(t.per_trial, true_metric);
            r.corr = c.value;
            r.corr_degenerate = c.degenerate;
            rows.push_back(r);
        }
        return rows;
    }
};

namespace detail {

inline void run_trial_auc(const ExperimentConfig& config, const RngStream& trial,
                          ClassifierKind kind, double& truth, AucEstimateBundle& bundle) {
    RngStream data_rng = trial.child(stream_id::train_data);
    const LabeledDataset data = gen_multinormal(config, data_rng);
    const std::vector<BootstrapReplicate> reps =
        draw_replicates(data, config.bootstraps, trial.child(stream_id::replicates));
    const DiscriminantTrainer trainer{kind};
    const TrainedClassifier model = train(data, kind);
    RngStream test_rng = trial.child(stream_id::test_data);
    truth = true_conditional_metric(model, config, test_rng);
    bundle = estimate_auc(data, trainer, reps, trial.child(stream_id::lpob_supplements),
                          AucBundleOptions{config.lpob});
}

inline void run_trial_error(const ExperimentConfig& config, const RngStream& trial,
                            ClassifierKind kind, double& truth, ErrEstimateBundle& bundle) {
    RngStream data_rng = trial.child(stream_id::train_data);
    const LabeledDataset data = gen_multinormal(config, data_rng);
    const std::vector<BootstrapReplicate> reps =
        draw_replicates(data, config.bootstraps, trial.child(stream_id::replicates));
    const DiscriminantTrainer trainer{kind};
    const TrainedClassifier model = train(data, kind);
    RngStream test_rng = trial.child(stream_id::test_data);
    truth = true_conditional_metric(model, config, test_rng);
    bundle = estimate_errors(data, trainer, reps, config.threshold,
                             trial.child(stream_id::supplements));
}

}  // namespace detail

/// Runs the full Monte-Carlo experiment: per trial, draw a training set,
/// fit, compute every estimator from one shared replicate set, and measure
/// the true conditional metric on a fresh pseudo-infinite test set. Trials
/// run on derived per-trial streams, so results are identical for any job
/// count. A failing trial aborts with its index and seed.
inline MCExperimentReport run_mc_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::size_t g_total = config.trials;
    const RngStream master(config.seed);
    const RngStream trials_root = master.child(stream_id::trials);

    MCExperimentReport report;
    report.trial_seed.resize(g_total);
    report.true_metric.resize(g_total);

    std::vector<std::string> names;
    if (config.metric == MetricKind::auc) {
        names = {"apparent", "sb", "star", "dot632", "dot632plus"};
        if (config.lpob) names.push_back("lpob");
    } else {
        names = {"apparent", "loocv",  "sb",         "loob",
                 "err_star", "refined", "dot632",    "dot632plus"};
    }
    report.estimators.reserve(names.size());
    for (const auto& n : names)
        report.estimators.push_back(EstimatorTrace{n, std::vector<double>(g_total, 0.0)});

    auto store = [&report](const std::string& name, std::size_t g, double v) {
        for (auto& t : report.estimators)
            if (t.name == name) {
                t.per_trial[g] = v;
                return;
            }
    };

    std::string failure;
    std::mutex failure_mutex;
    parallel_for(config.jobs, g_total, [&](std::size_t g) {
        const RngStream trial = trials_root.child(g);
        report.trial_seed[g] = trial.seed();
        try {
            if (config.metric == MetricKind::auc) {
                double truth = 0.0;
                AucEstimateBundle b;
                detail::run_trial_auc(config, trial, config.classifier, truth, b);
                report.true_metric[g] = truth;
                store("apparent", g, b.apparent);
                store("sb", g, b.simple_boot);
                store("star", g, b.star);
                store("dot632", g, b.dot632);
                store("dot632plus", g, b.dot632plus);
                if (config.lpob) store("lpob", g, b.lpob);
            } else {
                double truth = 0.0;
                ErrEstimateBundle b;
                detail::run_trial_error(config, trial, config.classifier, truth, b);
                report.true_metric[g] = truth;
                store("apparent", g, b.apparent);
                store("loocv", g, b.loocv);
                store("sb", g, b.simple_boot);
                store("loob", g, b.loob);
                store("err_star", g, b.err_star);
                store("refined", g, b.refined);
                store("dot632", g, b.dot632);
                store("dot632plus", g, b.dot632plus);
            }
        } catch (const std::exception& e) {
            std::lock_guard lock(failure_mutex);
            if (failure.empty())
                failure = "trial " + std::to_string(g) + " (stream seed " +
                          std::to_string(trial.seed()) + ") failed: " + e.what();
        }
    });
    if (!failure.empty()) throw std::runtime_error(failure);
    return report;
}

/// Paired two-classifier comparison: both classifiers see the same training
/// sets, replicate sets, and test sets; the difference column is exactly
/// metric1 - metric2 per trial. The per-trial estimate uses the smooth
/// resampling estimator for the chosen metric: leave-pair-out for AUC,
/// leave-one-out bootstrap for the error rate.
struct ComparisonReport {
    std::string estimator_name;  // "lpob" or "loob"
    std::vector<std::uint64_t> trial_seed;
    std::vector<double> true1, true2, est1, est2;

    std::vector<double> true_diff() const {
        std::vector<double> d(true1.size());
        for (std::size_t g = 0; g < d.size(); ++g) d[g] = true1[g] - true2[g];
        return d;
    }
    std::vector<double> est_diff() const {
        std::vector<double> d(est1.size());
        for (std::size_t g = 0; g < d.size(); ++g) d[g] = est1[g] - est2[g];
        return d;
    }
};

inline ComparisonReport compare_classifiers(const ExperimentConfig& config) {
    config.validate();
    const std::size_t g_total = config.trials;
    const RngStream trials_root = RngStream(config.seed).child(stream_id::trials);

    ComparisonReport report;
    report.estimator_name = config.metric == MetricKind::auc ? "lpob" : "loob";
    report.trial_seed.resize(g_total);
    report.true1.resize(g_total);
    report.true2.resize(g_total);
    report.est1.resize(g_total);
    report.est2.resize(g_total);

    std::string failure;
    std::mutex failure_mutex;
    parallel_for(config.jobs, g_total, [&](std::size_t g) {
        const RngStream trial = trials_root.child(g);
        report.trial_seed[g] = trial.seed();
        try {
            RngStream data_rng = trial.child(stream_id::train_data);
            const LabeledDataset data = gen_multinormal(config, data_rng);
            const std::vector<BootstrapReplicate> reps =
                draw_replicates(data, config.bootstraps, trial.child(stream_id::replicates));
            const LabeledDataset test = [&] {
                RngStream test_rng = trial.child(stream_id::test_data);
                return detail::gen_test_set(config, test_rng);
            }();
            const ClassifierKind kinds[2] = {config.classifier, config.classifier2};
            for (int k = 0; k < 2; ++k) {
                const TrainedClassifier model = train(data, kinds[k]);
                const ScoreSet s = score_dataset(model, test);
                const DiscriminantTrainer trainer{kinds[k]};
                double truth = 0.0, estimate = 0.0;
                if (config.metric == MetricKind::auc) {
                    truth = auc_mann_whitney(s);
                    estimate =
                        lpob_auc(data, trainer, reps, trial.child(stream_id::lpob_supplements))
                            .value;
                } else {
                    truth = zero_one_error(s, config.threshold);
                    estimate = loob_error(data, trainer, reps, config.threshold,
                                          trial.child(stream_id::supplements))
                                   .value;
                }
                (k == 0 ? report.true1[g] : report.true2[g]) = truth;
                (k == 0 ? report.est1[g] : report.est2[g]) = estimate;
            }
        } catch (const std::exception& e) {
            std::lock_guard lock(failure_mutex);
            if (failure.empty())
                failure = "trial " + std::to_string(g) + " (stream seed " +
                          std::to_string(trial.seed()) + ") failed: " + e.what();
        }
    });
    if (!failure.empty()) throw std::runtime_error(failure);
    return report;
}

/// One row of the bootstrap support-size study: the true mean metric at
/// training size n per class bracketed by the exclusion-tested estimator run
/// at the inflated sizes n/.632 and n/.5.
struct SupportSizeRow {
    std::size_t n = 0;
    std::size_t n_632 = 0;
    std::size_t n_5 = 0;
    double true_mean = 0.0;
    double true_se = 0.0;
    double star_632_mean = 0.0;
    double star_632_se = 0.0;
    double star_5_mean = 0.0;
    double star_5_se = 0.0;
};

inline std::vector<SupportSizeRow> support_size_study(const ExperimentConfig& config,
                                                      std::span<const std::size_t> sizes) {
    config.validate();
    const RngStream sizes_root = RngStream(config.seed).child(stream_id::sizes);
    std::vector<SupportSizeRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        const std::size_t n = sizes[s];
        SupportSizeRow row;
        row.n = n;
        row.n_632 = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 0.632));
        row.n_5 = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 0.5));

        const RngStream size_root = sizes_root.child(s);

        // True mean at n: per trial, train at n and test on the pseudo test set.
        {
            ExperimentConfig cfg = config;
            cfg.n1 = cfg.n2 = n;
            std::vector<double> truths(cfg.trials, 0.0);
            std::string failure;
            std::mutex failure_mutex;
            parallel_for(cfg.jobs, cfg.trials, [&](std::size_t g) {
                try {
                    const RngStream trial = size_root.child(1000 + g);
                    RngStream data_rng = trial.child(stream_id::train_data);
                    const LabeledDataset data = gen_multinormal(cfg, data_rng);
                    const TrainedClassifier model = train(data, cfg.classifier);
                    RngStream test_rng = trial.child(stream_id::test_data);
                    truths[g] = true_conditional_metric(model, cfg, test_rng);
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    if (failure.empty()) failure = e.what();
                }
            });
            if (!failure.empty()) throw std::runtime_error(failure);
            row.true_mean = mean_of(truths);
            row.true_se = sample_sd(truths) / std::sqrt(static_cast<double>(cfg.trials));
        }

        // Exclusion-tested estimator means at the two inflated sizes.
        const std::size_t inflated[2] = {row.n_632, row.n_5};
        for (int which = 0; which < 2; ++which) {
            ExperimentConfig cfg = config;
            cfg.n1 = cfg.n2 = inflated[which];
            std::vector<double> stars(cfg.trials, 0.0);
            std::string failure;
            std::mutex failure_mutex;
            parallel_for(cfg.jobs, cfg.trials, [&](std::size_t g) {
                try {
                    const RngStream trial = size_root.child(2000 + 1000 * which + g);
                    RngStream data_rng = trial.child(stream_id::train_data);
                    const LabeledDataset data = gen_multinormal(cfg, data_rng);
                    const std::vector<BootstrapReplicate> reps = draw_replicates(
                        data, cfg.bootstraps, trial.child(stream_id::replicates));
                    const DiscriminantTrainer trainer{cfg.classifier};
                    stars[g] = auc_star(data, trainer, reps).value;
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    if (failure.empty()) failure = e.what();
                }
            });
            if (!failure.empty()) throw std::runtime_error(failure);
            (which == 0 ? row.star_632_mean : row.star_5_mean) = mean_of(stars);
            (which == 0 ? row.star_632_se : row.star_5_se) =
                sample_sd(stars) / std::sqrt(static_cast<double>(cfg.trials));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace aucboot
