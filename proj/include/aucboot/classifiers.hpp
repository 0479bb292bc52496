#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aucboot/dataset.hpp"
#include "aucboot/linalg.hpp"
#include "aucboot/metrics.hpp"

namespace aucboot {

enum class ClassifierKind { lda, qda };

inline const char* to_string(ClassifierKind k) { return k == ClassifierKind::lda ? "lda" : "qda"; }

/// Fitted discriminant scoring rule. The score is the Gaussian
/// log-likelihood ratio (class 1 over class 2) plus the log prior ratio;
/// positive scores favor class 1 and the natural decision threshold is 0.
/// Immutable after training and safe to share across threads.
struct TrainedClassifier {
    ClassifierKind kind = ClassifierKind::lda;
    std::size_t dim = 0;
    std::vector<double> mean1, mean2;
    SymMatrix cov1, cov2;  // pooled covariance lives in cov1 for LDA
    double ridge_used = 0.0;
    double log_prior_ratio = 0.0;  // log(n1/n2)

    // Derived quantities used by score().
    std::vector<double> lda_weights;  // Sigma^{-1} (mean1 - mean2)
    double lda_bias = 0.0;
    CholeskyFactor chol1, chol2;
    double log_det1 = 0.0, log_det2 = 0.0;

    double score(std::span<const double> x) const {
        if (x.size() != dim) throw std::invalid_argument("score: feature dimension mismatch");
        if (kind == ClassifierKind::lda) return dot(lda_weights, x) + lda_bias;
        std::vector<double> d1(dim), d2(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            d1[j] = x[j] - mean1[j];
            d2[j] = x[j] - mean2[j];
        }
        const double q1 = chol1.inv_quadratic(d1);
        const double q2 = chol2.inv_quadratic(d2);
        return 0.5 * (q2 - q1) + 0.5 * (log_det2 - log_det1) + log_prior_ratio;
    }
};

namespace detail {

inline std::vector<double> class_mean(const LabeledDataset& data,
                                      std::span<const std::size_t> idx) {
    std::vector<double> m(data.dim(), 0.0);
    for (std::size_t i : idx)
        for (std::size_t j = 0; j < data.dim(); ++j) m[j] += data.feature(i, j);
    for (double& v : m) v /= static_cast<double>(idx.size());
    return m;
}

inline SymMatrix scatter(const LabeledDataset& data, std::span<const std::size_t> idx,
                         std::span<const double> mean) {
    SymMatrix s(data.dim());
    std::vector<double> d(data.dim());
    for (std::size_t i : idx) {
        for (std::size_t j = 0; j < data.dim(); ++j) d[j] = data.feature(i, j) - mean[j];
        for (std::size_t a = 0; a < data.dim(); ++a)
            for (std::size_t b = 0; b <= a; ++b) {
                s.at(a, b) += d[a] * d[b];
                if (a != b) s.at(b, a) = s.at(a, b);
            }
    }
    return s;
}

/// Factorizes a covariance matrix, adding an escalating ridge when it is
/// numerically singular (bootstrap replicates with duplicated rows). The
/// starting ridge is 1e-6 * trace/dim so well-conditioned fits are untouched.
inline CholeskyFactor factor_with_ridge(SymMatrix& cov, double& ridge_used,
                                        double pivot_floor = 1e-8) {
    CholeskyFactor f = cholesky(cov, pivot_floor);
    if (f.ok) return f;
    double lambda = 1e-6 * cov.trace() / static_cast<double>(cov.dim);
    if (!(lambda > 0.0)) lambda = 1e-12;
    for (int attempt = 0; attempt < 64; ++attempt) {
        cov.add_diagonal(lambda);
        ridge_used += lambda;
        f = cholesky(cov, 0.0);
        if (f.ok) return f;
        lambda *= 10.0;
    }
    throw std::runtime_error("covariance could not be regularized to positive definite");
}

}  // namespace detail

/// Trains an LDA or QDA discriminant on the listed cases (duplicates allowed,
/// as produced by bootstrap replicates). Priors come from class counts.
inline TrainedClassifier train_subset(const LabeledDataset& data,
                                      std::span<const std::size_t> indices, ClassifierKind kind) {
    if (data.dim() == 0) throw std::invalid_argument("train: empty dataset");
    std::vector<std::size_t> idx1, idx2;
    for (std::size_t i : indices)
        (data.label(i) == ClassLabel::one ? idx1 : idx2).push_back(i);
    if (idx1.size() < 2 || idx2.size() < 2)
        throw std::invalid_argument("train: each class needs at least two cases");

    TrainedClassifier model;
    model.kind = kind;
    model.dim = data.dim();
    model.mean1 = detail::class_mean(data, idx1);
    model.mean2 = detail::class_mean(data, idx2);
    model.log_prior_ratio = std::log(static_cast<double>(idx1.size())) -
                            std::log(static_cast<double>(idx2.size()));

    SymMatrix s1 = detail::scatter(data, idx1, model.mean1);
    SymMatrix s2 = detail::scatter(data, idx2, model.mean2);

    if (kind == ClassifierKind::lda) {
        SymMatrix pooled(model.dim);
        const double denom = static_cast<double>(idx1.size() + idx2.size() - 2);
        for (std::size_t k = 0; k < pooled.a.size(); ++k)
            pooled.a[k] = (s1.a[k] + s2.a[k]) / denom;
        model.cov1 = pooled;
        CholeskyFactor f = detail::factor_with_ridge(model.cov1, model.ridge_used);
        std::vector<double> diff(model.dim);
        for (std::size_t j = 0; j < model.dim; ++j) diff[j] = model.mean1[j] - model.mean2[j];
        model.lda_weights = f.solve(diff);
        std::vector<double> mid(model.dim);
        for (std::size_t j = 0; j < model.dim; ++j) mid[j] = 0.5 * (model.mean1[j] + model.mean2[j]);
        model.lda_bias = -dot(model.lda_weights, mid) + model.log_prior_ratio;
    } else {
        model.cov1 = s1;
        model.cov2 = s2;
        for (std::size_t k = 0; k < model.cov1.a.size(); ++k) {
            model.cov1.a[k] /= static_cast<double>(idx1.size() - 1);
            model.cov2.a[k] /= static_cast<double>(idx2.size() - 1);
        }
        model.chol1 = detail::factor_with_ridge(model.cov1, model.ridge_used);
        model.chol2 = detail::factor_with_ridge(model.cov2, model.ridge_used);
        model.log_det1 = model.chol1.log_det();
        model.log_det2 = model.chol2.log_det();
    }
    return model;
}

inline TrainedClassifier train(const LabeledDataset& data, ClassifierKind kind) {
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return train_subset(data, all, kind);
}

/// Scores every case in the dataset, split by true class.
inline ScoreSet score_dataset(const TrainedClassifier& model, const LabeledDataset& data) {
    ScoreSet s;
    s.scores1.reserve(data.n1());
    s.scores2.reserve(data.n2());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double v = model.score(data.row(i));
        (data.label(i) == ClassLabel::one ? s.scores1 : s.scores2).push_back(v);
    }
    return s;
}

/// Plain-text dump of the fitted parameters, for debugging and logging.
inline std::string describe(const TrainedClassifier& m) {
    std::ostringstream os;
    os.precision(12);
    os << "kind " << to_string(m.kind) << "\ndim " << m.dim << "\nridge " << m.ridge_used
       << "\nlog_prior_ratio " << m.log_prior_ratio << "\n";
    auto dump_vec = [&os](const char* name, const std::vector<double>& v) {
        os << name;
        for (double x : v) os << ' ' << x;
        os << '\n';
    };
    dump_vec("mean1", m.mean1);
    dump_vec("mean2", m.mean2);
    auto dump_mat = [&os](const char* name, const SymMatrix& s) {
        os << name << '\n';
        for (std::size_t i = 0; i < s.dim; ++i) {
            for (std::size_t j = 0; j < s.dim; ++j) os << (j ? " " : "") << s.at(i, j);
            os << '\n';
        }
    };
    if (m.kind == ClassifierKind::lda) {
        dump_mat("pooled_cov", m.cov1);
        dump_vec("weights", m.lda_weights);
        os << "bias " << m.lda_bias << '\n';
    } else {
        dump_mat("cov1", m.cov1);
        dump_mat("cov2", m.cov2);
    }
    return os.str();
}

/// Callable bundling the classifier family choice, in the shape the
/// estimator templates expect: trainer(data, indices) -> scoring model.
struct DiscriminantTrainer {
    ClassifierKind kind = ClassifierKind::lda;

    TrainedClassifier operator()(const LabeledDataset& data,
                                 std::span<const std::size_t> indices) const {
        return train_subset(data, indices, kind);
    }
};

}  // namespace aucboot
