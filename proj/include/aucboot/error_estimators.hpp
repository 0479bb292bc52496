#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "aucboot/classifiers.hpp"
#include "aucboot/dataset.hpp"
#include "aucboot/metrics.hpp"
#include "aucboot/replicate_scores.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

/// Convex-combination weights shared by the .632 family.
inline constexpr double k632 = 0.632;
inline constexpr double k368 = 0.368;

inline std::vector<std::size_t> identity_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

/// score_dataset for any model exposing score(), not just TrainedClassifier.
template <class Model>
ScoreSet score_dataset_generic(const Model& model, const LabeledDataset& data) {
    ScoreSet s;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double v = model.score(data.row(i));
        (data.label(i) == ClassLabel::one ? s.scores1 : s.scores2).push_back(v);
    }
    return s;
}

/// Resubstitution error: the model tested on its own training data.
template <class Model>
double apparent_error(const Model& model, const LabeledDataset& data, double threshold = 0.0) {
    return zero_one_error(score_dataset_generic(model, data), threshold);
}

/// Cost-weighted resubstitution risk.
template <class Model>
double apparent_error(const Model& model, const LabeledDataset& data, double threshold,
                      const CostModel& costs) {
    return error_rate(score_dataset_generic(model, data), threshold, costs);
}

struct LoocvResult {
    double value = 0.0;
    std::size_t skipped = 0;  // cases whose leave-one-out subset was untrainable
};

/// Leave-one-out cross-validation of the 0-1 error. Cases whose deletion
/// leaves a class with fewer than two members are skipped and counted; if
/// every case is skipped the value is NaN (the estimator is undefined on
/// such data, but the rest of a bundle still is not).
template <SubsetTrainer Trainer>
LoocvResult loocv_error(const LabeledDataset& data, const Trainer& trainer,
                        double threshold = 0.0) {
    const std::size_t n = data.size();
    if (n < 3) throw std::invalid_argument("loocv_error: need at least three cases");
    LoocvResult out;
    double sum = 0.0;
    std::size_t used = 0;
    std::vector<std::size_t> idx;
    idx.reserve(n - 1);
    for (std::size_t omit = 0; omit < n; ++omit) {
        const std::size_t own_class = data.class_indices(data.label(omit)).size();
        const std::size_t other =
            data.class_indices(other_class(data.label(omit))).size();
        if (own_class < 3 || other < 2) {  // subset would be untrainable
            ++out.skipped;
            continue;
        }
        idx.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (i != omit) idx.push_back(i);
        const auto model = trainer(data, idx);
        sum += zero_one_loss(model.score(data.row(omit)), data.label(omit), threshold);
        ++used;
    }
    out.value = used == 0 ? std::numeric_limits<double>::quiet_NaN()
                          : sum / static_cast<double>(used);
    return out;
}

namespace detail {

/// B x n matrix of 0-1 losses derived from a replicate score table.
inline std::vector<std::vector<double>> loss_table(const ScoreTable& scores,
                                                   const LabeledDataset& data, double threshold) {
    std::vector<std::vector<double>> loss(scores.replicates());
    for (std::size_t b = 0; b < scores.replicates(); ++b) {
        loss[b].resize(data.size());
        for (std::size_t i = 0; i < data.size(); ++i)
            loss[b][i] = zero_one_loss(scores.rows[b][i], data.label(i), threshold);
    }
    return loss;
}

}  // namespace detail

/// Simple bootstrap: replicate-trained models tested on the full original set.
inline double simple_bootstrap_from_losses(const std::vector<std::vector<double>>& loss) {
    if (loss.empty()) throw std::invalid_argument("simple bootstrap: need at least one replicate");
    double total = 0.0;
    for (const auto& row : loss)
        total += std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
    return total / static_cast<double>(loss.size());
}

template <SubsetTrainer Trainer>
double simple_bootstrap_error(const LabeledDataset& data, const Trainer& trainer,
                              std::span<const BootstrapReplicate> reps, double threshold = 0.0) {
    return simple_bootstrap_from_losses(
        detail::loss_table(score_replicates(data, trainer, reps), data, threshold));
}

struct ErrStarResult {
    double value = 0.0;
    std::size_t dropped = 0;  // replicates with no excluded case
};

/// Replicate-major exclusion estimator: each replicate's model is tested on
/// the cases that replicate did not draw; replicates that excluded nothing
/// are dropped and counted.
inline ErrStarResult err_star_from_losses(const std::vector<std::vector<double>>& loss,
                                          std::span<const BootstrapReplicate> reps) {
    ErrStarResult out;
    double total = 0.0;
    std::size_t kept = 0;
    for (std::size_t b = 0; b < reps.size(); ++b) {
        const std::size_t m = reps[b].excluded1.size() + reps[b].excluded2.size();
        if (m == 0) {
            ++out.dropped;
            continue;
        }
        double s = 0.0;
        for (std::size_t i : reps[b].excluded1) s += loss[b][i];
        for (std::size_t i : reps[b].excluded2) s += loss[b][i];
        total += s / static_cast<double>(m);
        ++kept;
    }
    if (kept == 0)
        throw std::runtime_error("err_star: every replicate drew the full original set");
    out.value = total / static_cast<double>(kept);
    return out;
}

template <SubsetTrainer Trainer>
ErrStarResult err_star(const LabeledDataset& data, const Trainer& trainer,
                       std::span<const BootstrapReplicate> reps, double threshold = 0.0) {
    return err_star_from_losses(
        detail::loss_table(score_replicates(data, trainer, reps), data, threshold), reps);
}

struct LoobResult {
    double value = 0.0;
    std::vector<double> per_case_mean;       // average loss over excluding replicates
    std::vector<std::size_t> cover_count;    // replicates excluding each case
    std::size_t supplemented_cases = 0;      // cases patched with a conditioned draw
};

/// Case-major leave-one-out bootstrap: every case is tested only by the
/// replicates that excluded it. A case included by all B replicates gets one
/// supplementary replicate drawn conditioned on its exclusion, which keeps
/// the per-case average defined without biasing the shared replicate set.
template <SubsetTrainer Trainer>
LoobResult loob_error_from_losses(const LabeledDataset& data, const Trainer& trainer,
                                  const std::vector<std::vector<double>>& loss,
                                  std::span<const BootstrapReplicate> reps, double threshold,
                                  const RngStream& supplement_stream) {
    const std::size_t n = data.size();
    LoobResult out;
    out.per_case_mean.assign(n, 0.0);
    out.cover_count.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        std::size_t c = 0;
        for (std::size_t b = 0; b < reps.size(); ++b) {
            if (!reps[b].excluded(i)) continue;
            s += loss[b][i];
            ++c;
        }
        out.cover_count[i] = c;
        if (c > 0) {
            out.per_case_mean[i] = s / static_cast<double>(c);
            continue;
        }
        if (data.class_indices(data.label(i)).size() < 2)
            throw std::invalid_argument("loob_error: a singleton class can never be excluded");
        RngStream rng = supplement_stream.child(i);
        const BootstrapReplicate extra = conditioned_replicate(
            data, rng, [i](const BootstrapReplicate& r) { return r.excluded(i); });
        const auto model = trainer(data, extra.indices);
        out.per_case_mean[i] = zero_one_loss(model.score(data.row(i)), data.label(i), threshold);
        ++out.supplemented_cases;
    }
    out.value = std::accumulate(out.per_case_mean.begin(), out.per_case_mean.end(), 0.0) /
                static_cast<double>(n);
    return out;
}

template <SubsetTrainer Trainer>
LoobResult loob_error(const LabeledDataset& data, const Trainer& trainer,
                      std::span<const BootstrapReplicate> reps, double threshold,
                      const RngStream& supplement_stream) {
    return loob_error_from_losses(
        data, trainer, detail::loss_table(score_replicates(data, trainer, reps), data, threshold),
        reps, threshold, supplement_stream);
}

/// Refined bootstrap: apparent error plus the bootstrap estimate of optimism
/// (replicate model's loss on the original set minus on its own replicate).
inline double refined_bootstrap_from_losses(double apparent,
                                            const std::vector<std::vector<double>>& loss,
                                            std::span<const BootstrapReplicate> reps) {
    if (loss.empty()) throw std::invalid_argument("refined bootstrap: need replicates");
    const std::size_t n = loss.front().size();
    double opt = 0.0;
    for (std::size_t b = 0; b < reps.size(); ++b) {
        double on_original = std::accumulate(loss[b].begin(), loss[b].end(), 0.0);
        double on_replicate = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            on_replicate += static_cast<double>(reps[b].counts[i]) * loss[b][i];
        opt += (on_original - on_replicate) / static_cast<double>(n);
    }
    return apparent + opt / static_cast<double>(reps.size());
}

template <SubsetTrainer Trainer>
double refined_bootstrap_error(const LabeledDataset& data, const Trainer& trainer,
                               std::span<const BootstrapReplicate> reps, double threshold = 0.0) {
    const auto model = trainer(data, identity_indices(data.size()));
    const double apparent = apparent_error(model, data, threshold);
    return refined_bootstrap_from_losses(
        apparent, detail::loss_table(score_replicates(data, trainer, reps), data, threshold), reps);
}

/// No-information error rate for two classes: the 0-1 loss averaged over all
/// n^2 label/prediction pairings, which reduces to p1(1-q1) + (1-p1)q1 with
/// p1 the class-1 label fraction and q1 the fraction predicted class 1.
template <class Model>
double gamma_hat(const Model& model, const LabeledDataset& data, double threshold = 0.0) {
    const std::size_t n = data.size();
    if (n == 0) throw std::invalid_argument("gamma_hat: empty dataset");
    std::size_t predicted1 = 0;
    for (std::size_t i = 0; i < n; ++i)
        predicted1 += model.score(data.row(i)) > threshold ? 1 : 0;
    const double p1 = static_cast<double>(data.n1()) / static_cast<double>(n);
    const double q1 = static_cast<double>(predicted1) / static_cast<double>(n);
    return p1 * (1.0 - q1) + (1.0 - p1) * q1;
}

/// .632 estimator: fixed blend of the apparent and leave-one-out-bootstrap
/// error rates, correcting their opposite biases.
inline double dot632_error(double apparent, double loob) {
    return k368 * apparent + k632 * loob;
}

struct Dot632PlusResult {
    double value = 0.0;
    double r_hat_prime = 0.0;  // relative overfitting rate, clamped to [0,1]
};

/// .632+ estimator. The overfit branch requires the apparent error to sit
/// below both the LOOB value and the no-information rate; the relative
/// overfitting rate is clamped to [0,1] and the LOOB value is capped at the
/// no-information rate inside the correction term.
inline Dot632PlusResult dot632plus_error(double apparent, double loob, double gamma) {
    Dot632PlusResult out;
    if (loob > apparent && gamma > apparent)
        out.r_hat_prime = std::min(1.0, (loob - apparent) / (gamma - apparent));
    const double loob_capped = std::min(loob, gamma);
    out.value = dot632_error(apparent, loob) +
                (loob_capped - apparent) * (k368 * k632 * out.r_hat_prime) /
                    (1.0 - k368 * out.r_hat_prime);
    return out;
}

/// Every error estimator computed once from a shared replicate set.
struct ErrEstimateBundle {
    double apparent = 0.0;
    double loocv = 0.0;
    double simple_boot = 0.0;
    double loob = 0.0;
    double err_star = 0.0;
    double refined = 0.0;
    double dot632 = 0.0;
    double dot632plus = 0.0;
    double gamma_hat = 0.0;
    double r_hat_prime = 0.0;
    std::size_t bootstraps = 0;
    std::size_t err_star_dropped = 0;
    std::size_t loob_supplements = 0;
    std::size_t loocv_skipped = 0;
};

template <SubsetTrainer Trainer>
ErrEstimateBundle estimate_errors(const LabeledDataset& data, const Trainer& trainer,
                                  std::span<const BootstrapReplicate> reps, double threshold,
                                  const RngStream& supplement_stream) {
    ErrEstimateBundle out;
    out.bootstraps = reps.size();

    const auto full_model = trainer(data, identity_indices(data.size()));
    out.apparent = apparent_error(full_model, data, threshold);
    out.gamma_hat = gamma_hat(full_model, data, threshold);

    const LoocvResult cv = loocv_error(data, trainer, threshold);
    out.loocv = cv.value;
    out.loocv_skipped = cv.skipped;

    const ScoreTable scores = score_replicates(data, trainer, reps);
    const auto loss = detail::loss_table(scores, data, threshold);

    out.simple_boot = simple_bootstrap_from_losses(loss);
    const ErrStarResult star = err_star_from_losses(loss, reps);
    out.err_star = star.value;
    out.err_star_dropped = star.dropped;
    const LoobResult lo =
        loob_error_from_losses(data, trainer, loss, reps, threshold, supplement_stream);
    out.loob = lo.value;
    out.loob_supplements = lo.supplemented_cases;
    out.refined = refined_bootstrap_from_losses(out.apparent, loss, reps);
    out.dot632 = dot632_error(out.apparent, out.loob);
    const Dot632PlusResult plus = dot632plus_error(out.apparent, out.loob, out.gamma_hat);
    out.dot632plus = plus.value;
    out.r_hat_prime = plus.r_hat_prime;
    return out;
}

}  // namespace aucboot
