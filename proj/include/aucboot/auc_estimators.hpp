#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "aucboot/dataset.hpp"
#include "aucboot/error_estimators.hpp"
#include "aucboot/metrics.hpp"
#include "aucboot/replicate_scores.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

/// No-information AUC: with labels independent of predictors the ROC is the
/// diagonal, so the constant is exactly one half regardless of data or rule.
inline double gamma_auc() { return 0.5; }

/// Resubstitution AUC: Mann-Whitney statistic of the training-set scores.
template <class Model>
double apparent_auc(const Model& model, const LabeledDataset& data) {
    return auc_mann_whitney(score_dataset_generic(model, data));
}

/// Simple-bootstrap AUC: replicate-trained models scored on the full
/// original dataset, Mann-Whitney averaged over replicates.
inline double sb_auc_from_scores(const ScoreTable& scores, const LabeledDataset& data) {
    if (scores.replicates() == 0) throw std::invalid_argument("sb_auc: need replicates");
    double total = 0.0;
    for (const auto& row : scores.rows) {
        ScoreSet s;
        s.scores1.reserve(data.n1());
        s.scores2.reserve(data.n2());
        for (std::size_t i = 0; i < data.size(); ++i)
            (data.label(i) == ClassLabel::one ? s.scores1 : s.scores2).push_back(row[i]);
        total += auc_mann_whitney(s);
    }
    return total / static_cast<double>(scores.replicates());
}

template <SubsetTrainer Trainer>
double sb_auc(const LabeledDataset& data, const Trainer& trainer,
              std::span<const BootstrapReplicate> reps) {
    return sb_auc_from_scores(score_replicates(data, trainer, reps), data);
}

struct AucStarResult {
    double value = 0.0;
    std::size_t dropped = 0;  // replicates with no excluded case in some class
};

/// Exclusion-tested bootstrap AUC: per replicate, the Mann-Whitney statistic
/// over the pairs whose two members were both left out of that replicate,
/// then averaged over replicates. Replicates leaving no case out of either
/// class carry an undefined inner value and are dropped (and counted).
inline AucStarResult auc_star_from_scores(const ScoreTable& scores,
                                          std::span<const BootstrapReplicate> reps) {
    AucStarResult out;
    double total = 0.0;
    std::size_t kept = 0;
    for (std::size_t b = 0; b < reps.size(); ++b) {
        const auto& e1 = reps[b].excluded1;
        const auto& e2 = reps[b].excluded2;
        if (e1.empty() || e2.empty()) {
            ++out.dropped;
            continue;
        }
        double s = 0.0;
        for (std::size_t i : e1)
            for (std::size_t j : e2) s += mann_whitney_kernel(scores.rows[b][i], scores.rows[b][j]);
        total += s / (static_cast<double>(e1.size()) * static_cast<double>(e2.size()));
        ++kept;
    }
    if (kept == 0) throw std::runtime_error("auc_star: no replicate excluded cases in both classes");
    out.value = total / static_cast<double>(kept);
    return out;
}

template <SubsetTrainer Trainer>
AucStarResult auc_star(const LabeledDataset& data, const Trainer& trainer,
                       std::span<const BootstrapReplicate> reps) {
    return auc_star_from_scores(score_replicates(data, trainer, reps), reps);
}

/// .632 AUC estimator: fixed blend of the apparent and exclusion-tested AUCs.
inline double dot632_auc(double apparent, double star) {
    return k368 * apparent + k632 * star;
}

struct Dot632PlusAucResult {
    double value = 0.0;
    double r_hat_prime = 0.0;
};

/// .632+ AUC estimator. The overfit branch needs the apparent AUC above both
/// the no-information value 0.5 and the exclusion-tested AUC; the relative
/// overfitting rate is clamped to [0,1] and the exclusion-tested AUC is
/// floored at 0.5 inside the correction, which is therefore never positive.
inline Dot632PlusAucResult dot632plus_auc(double apparent, double star) {
    Dot632PlusAucResult out;
    const double gamma = gamma_auc();
    if (apparent > gamma && apparent > star)
        out.r_hat_prime = std::min(1.0, (star - apparent) / (gamma - apparent));
    const double star_floored = std::max(star, gamma);
    out.value = dot632_auc(apparent, star) + (star_floored - apparent) *
                                                 (k368 * k632 * out.r_hat_prime) /
                                                 (1.0 - k368 * out.r_hat_prime);
    return out;
}

struct LpobResult {
    double value = 0.0;
    std::vector<double> pair_mean;        // row-major n1 x n2, class-index order
    std::size_t uncovered_pairs = 0;      // pairs patched by conditioned draws
};

/// Leave-pair-out bootstrap: for every (class-1, class-2) pair the
/// Mann-Whitney kernel is averaged over the replicates that excluded both
/// members, then averaged over all pairs. Pairs no shared replicate leaves
/// out are patched with one conditioned replicate each, drawn from a stream
/// keyed by the pair so the patch is deterministic.
template <SubsetTrainer Trainer>
LpobResult lpob_auc_from_scores(const LabeledDataset& data, const Trainer& trainer,
                                const ScoreTable& scores,
                                std::span<const BootstrapReplicate> reps,
                                const RngStream& supplement_stream) {
    const auto& c1 = data.class1_indices();
    const auto& c2 = data.class2_indices();
    if (c1.empty() || c2.empty()) throw std::invalid_argument("lpob_auc: both classes required");
    const std::size_t n1 = c1.size();
    const std::size_t n2 = c2.size();

    std::vector<std::size_t> pos1(data.size()), pos2(data.size());
    for (std::size_t a = 0; a < n1; ++a) pos1[c1[a]] = a;
    for (std::size_t b = 0; b < n2; ++b) pos2[c2[b]] = b;

    std::vector<double> kernel_sum(n1 * n2, 0.0);
    std::vector<std::uint32_t> joint_count(n1 * n2, 0);
    for (std::size_t b = 0; b < reps.size(); ++b) {
        for (std::size_t i : reps[b].excluded1)
            for (std::size_t j : reps[b].excluded2) {
                const std::size_t k = pos1[i] * n2 + pos2[j];
                kernel_sum[k] += mann_whitney_kernel(scores.rows[b][i], scores.rows[b][j]);
                ++joint_count[k];
            }
    }

    LpobResult out;
    out.pair_mean.assign(n1 * n2, 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < n1; ++a) {
        for (std::size_t b = 0; b < n2; ++b) {
            const std::size_t k = a * n2 + b;
            if (joint_count[k] > 0) {
                out.pair_mean[k] = kernel_sum[k] / static_cast<double>(joint_count[k]);
            } else {
                const std::size_t i = c1[a];
                const std::size_t j = c2[b];
                if (n1 < 2 || n2 < 2)
                    throw std::invalid_argument(
                        "lpob_auc: singleton classes can never be jointly excluded");
                RngStream rng = supplement_stream.child(k);
                const BootstrapReplicate extra = conditioned_replicate(
                    data, rng,
                    [i, j](const BootstrapReplicate& r) { return r.excluded(i) && r.excluded(j); });
                const auto model = trainer(data, extra.indices);
                out.pair_mean[k] =
                    mann_whitney_kernel(model.score(data.row(i)), model.score(data.row(j)));
                ++out.uncovered_pairs;
            }
            total += out.pair_mean[k];
        }
    }
    out.value = total / static_cast<double>(n1 * n2);
    return out;
}

template <SubsetTrainer Trainer>
LpobResult lpob_auc(const LabeledDataset& data, const Trainer& trainer,
                    std::span<const BootstrapReplicate> reps, const RngStream& supplement_stream) {
    return lpob_auc_from_scores(data, trainer, score_replicates(data, trainer, reps), reps,
                                supplement_stream);
}

/// Product resample behind the no-information rate: every score paired with
/// every label. Per class the score multiset is the pooled one, so the two
/// class-conditional score distributions coincide.
inline ScoreSet no_information_scores(const ScoreSet& s) {
    ScoreSet out;
    const std::size_t n1 = s.scores1.size();
    const std::size_t n2 = s.scores2.size();
    out.scores1.reserve((n1 + n2) * n1);
    out.scores2.reserve((n1 + n2) * n2);
    for (const auto* list : {&s.scores1, &s.scores2}) {
        for (double v : *list) {
            for (std::size_t k = 0; k < n1; ++k) out.scores1.push_back(v);
            for (std::size_t k = 0; k < n2; ++k) out.scores2.push_back(v);
        }
    }
    return out;
}

/// ROC of the no-information product resample of a scored dataset; TPF and
/// FPF agree at every threshold, so the curve is the exact diagonal.
template <class Model>
RocCurve no_info_roc_check(const Model& model, const LabeledDataset& data) {
    return empirical_roc(no_information_scores(score_dataset_generic(model, data)));
}

/// Every AUC estimator computed once from a shared replicate set.
struct AucEstimateBundle {
    double apparent = 0.0;
    double simple_boot = 0.0;
    double star = 0.0;
    double dot632 = 0.0;
    double dot632plus = 0.0;
    double lpob = 0.0;
    bool lpob_computed = false;
    double gamma = 0.5;
    double r_hat_prime = 0.0;
    std::size_t bootstraps = 0;
    std::size_t star_dropped = 0;
    std::size_t lpob_uncovered_pairs = 0;
};

struct AucBundleOptions {
    bool compute_lpob = true;
};

template <SubsetTrainer Trainer>
AucEstimateBundle estimate_auc(const LabeledDataset& data, const Trainer& trainer,
                               std::span<const BootstrapReplicate> reps,
                               const RngStream& supplement_stream,
                               AucBundleOptions options = {}) {
    AucEstimateBundle out;
    out.bootstraps = reps.size();

    const auto full_model = trainer(data, identity_indices(data.size()));
    out.apparent = apparent_auc(full_model, data);

    const ScoreTable scores = score_replicates(data, trainer, reps);
    out.simple_boot = sb_auc_from_scores(scores, data);
    const AucStarResult star = auc_star_from_scores(scores, reps);
    out.star = star.value;
    out.star_dropped = star.dropped;
    out.dot632 = dot632_auc(out.apparent, out.star);
    const Dot632PlusAucResult plus = dot632plus_auc(out.apparent, out.star);
    out.dot632plus = plus.value;
    out.r_hat_prime = plus.r_hat_prime;
    if (options.compute_lpob) {
        const LpobResult lp =
            lpob_auc_from_scores(data, trainer, scores, reps, supplement_stream);
        out.lpob = lp.value;
        out.lpob_computed = true;
        out.lpob_uncovered_pairs = lp.uncovered_pairs;
    }
    return out;
}

}  // namespace aucboot
