#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "aucboot/dataset.hpp"
#include "aucboot/resampling.hpp"
#include "aucboot/rng.hpp"

namespace aucboot {

/// Anything that can fit a scoring model on a multiset of case indices.
template <class T>
concept SubsetTrainer = requires(const T& t, const LabeledDataset& d,
                                 std::span<const std::size_t> idx) {
    { t(d, idx).score(d.row(0)) } -> std::convertible_to<double>;
};

/// Scores of every replicate-trained model on every original case.
/// All bootstrap estimators of one bundle read from the same table, so the
/// differences between them reflect their formulas, not resampling noise.
struct ScoreTable {
    std::size_t n = 0;
    std::vector<std::vector<double>> rows;  // rows[b][i]

    std::size_t replicates() const { return rows.size(); }
};

template <SubsetTrainer Trainer>
ScoreTable score_replicates(const LabeledDataset& data, const Trainer& trainer,
                            std::span<const BootstrapReplicate> reps) {
    ScoreTable table;
    table.n = data.size();
    table.rows.reserve(reps.size());
    for (const BootstrapReplicate& rep : reps) {
        const auto model = trainer(data, rep.indices);
        std::vector<double> s(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) s[i] = model.score(data.row(i));
        table.rows.push_back(std::move(s));
    }
    return table;
}

/// 0-1 loss of a score against the case's label at a fixed threshold.
/// Mirrors the tie convention of error_rate: a score exactly at the
/// threshold is not counted as an error for either class.
inline double zero_one_loss(double score, ClassLabel label, double threshold) {
    if (label == ClassLabel::one) return score < threshold ? 1.0 : 0.0;
    return score > threshold ? 1.0 : 0.0;
}

/// Draws replicates until `wanted` is excluded; used to patch cases (or
/// pairs) that every shared replicate happened to include. The stream should
/// be a child keyed by the case/pair identity so patching is deterministic.
template <class Pred>
BootstrapReplicate conditioned_replicate(const LabeledDataset& data, RngStream& rng,
                                         const Pred& wanted, std::size_t max_tries = 100000) {
    for (std::size_t t = 0; t < max_tries; ++t) {
        BootstrapReplicate rep = stratified_bootstrap(data, rng);
        if (wanted(rep)) return rep;
    }
    throw std::runtime_error("conditioned_replicate: condition not met within retry budget");
}

}  // namespace aucboot
