#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace aucboot {

/// Classifier scores split by true class. Higher score means more
/// class-1-like; all values must be finite.
struct ScoreSet {
    std::vector<double> scores1;
    std::vector<double> scores2;
};

struct RocPoint {
    double fpf = 0.0;
    double tpf = 0.0;
};

/// Empirical ROC curve: (FPF, TPF) pairs walked from (0,0) to (1,1),
/// both coordinates non-decreasing. Tied scores across the two classes
/// show up as diagonal segments.
struct RocCurve {
    std::vector<RocPoint> points;
};

/// Misclassification costs and class priors for the risk functional.
struct CostModel {
    double c12 = 1.0;  // cost of calling a class-1 case class 2
    double c21 = 1.0;  // cost of calling a class-2 case class 1
    double p1 = 0.5;
    double p2 = 0.5;

    static CostModel unit_from_counts(std::size_t n1, std::size_t n2) {
        const double n = static_cast<double>(n1 + n2);
        return CostModel{1.0, 1.0, static_cast<double>(n1) / n, static_cast<double>(n2) / n};
    }
};

/// Mann-Whitney kernel: 1, 1/2, 0 for a above / tied with / below b.
/// Ties use exact floating-point equality; near-ties are not snapped
/// (scores are deterministic functions of the inputs).
inline double mann_whitney_kernel(double a, double b) {
    if (a > b) return 1.0;
    if (a == b) return 0.5;
    return 0.0;
}

namespace detail {

inline void require_both_classes(const ScoreSet& s) {
    if (s.scores1.empty() || s.scores2.empty())
        throw std::invalid_argument("ScoreSet needs at least one score per class");
}

}  // namespace detail

/// Mann-Whitney AUC estimate: the mean of the kernel over all
/// class-1 x class-2 score pairs, computed through mid-ranks.
inline double auc_mann_whitney(const ScoreSet& s) {
    detail::require_both_classes(s);
    const std::size_t n1 = s.scores1.size();
    const std::size_t n2 = s.scores2.size();

    std::vector<std::pair<double, bool>> pooled;  // (score, is_class1)
    pooled.reserve(n1 + n2);
    for (double v : s.scores1) pooled.emplace_back(v, true);
    for (double v : s.scores2) pooled.emplace_back(v, false);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Sum of class-1 mid-ranks; ranks are 1-based. Mid-ranks are exact in
    // binary floating point (integers and halves), so the result matches the
    // pairwise kernel sum bit for bit.
    double rank_sum1 = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second) rank_sum1 += mid_rank;
        i = j;
    }
    const double u1 = rank_sum1 - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    return u1 / (static_cast<double>(n1) * static_cast<double>(n2));
}

/// Empirical ROC over all thresholds between successive distinct scores
/// (plus the two sentinels beyond the score range). The point for a
/// threshold just below distinct value v has TPF = P(score1 >= v) and
/// FPF = P(score2 >= v).
inline RocCurve empirical_roc(const ScoreSet& s) {
    detail::require_both_classes(s);
    std::vector<double> distinct;
    distinct.reserve(s.scores1.size() + s.scores2.size());
    distinct.insert(distinct.end(), s.scores1.begin(), s.scores1.end());
    distinct.insert(distinct.end(), s.scores2.begin(), s.scores2.end());
    std::sort(distinct.begin(), distinct.end(), std::greater<double>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> s1 = s.scores1;
    std::vector<double> s2 = s.scores2;
    std::sort(s1.begin(), s1.end(), std::greater<double>());
    std::sort(s2.begin(), s2.end(), std::greater<double>());

    RocCurve roc;
    roc.points.reserve(distinct.size() + 1);
    roc.points.push_back(RocPoint{0.0, 0.0});  // threshold above every score
    std::size_t c1 = 0, c2 = 0;
    for (double v : distinct) {
        while (c1 < s1.size() && s1[c1] >= v) ++c1;
        while (c2 < s2.size() && s2[c2] >= v) ++c2;
        roc.points.push_back(RocPoint{static_cast<double>(c2) / static_cast<double>(s2.size()),
                                      static_cast<double>(c1) / static_cast<double>(s1.size())});
    }
    return roc;  // last point is exactly (1,1): every score >= the smallest value
}

/// Area under an ROC curve by the trapezoidal rule.
inline double auc_trapezoid(const RocCurve& roc) {
    double area = 0.0;
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
        const RocPoint& a = roc.points[i - 1];
        const RocPoint& b = roc.points[i];
        area += (b.fpf - a.fpf) * 0.5 * (b.tpf + a.tpf);
    }
    return area;
}

/// Risk estimate at a fixed threshold: c12*p1*FNF + c21*p2*FPF.
/// A class-1 case counts as missed when its score is strictly below the
/// threshold; a class-2 case counts as a false positive when strictly above.
/// With unit costs and empirical priors this is the 0-1 error rate.
inline double error_rate(const ScoreSet& s, double threshold, const CostModel& costs) {
    detail::require_both_classes(s);
    std::size_t miss1 = 0, fp2 = 0;
    for (double v : s.scores1) miss1 += (v < threshold) ? 1 : 0;
    for (double v : s.scores2) fp2 += (v > threshold) ? 1 : 0;
    const double fnf = static_cast<double>(miss1) / static_cast<double>(s.scores1.size());
    const double fpf = static_cast<double>(fp2) / static_cast<double>(s.scores2.size());
    return costs.c12 * costs.p1 * fnf + costs.c21 * costs.p2 * fpf;
}

/// 0-1 error rate with priors taken from the score counts.
inline double zero_one_error(const ScoreSet& s, double threshold) {
    return error_rate(s, threshold, CostModel::unit_from_counts(s.scores1.size(), s.scores2.size()));
}

}  // namespace aucboot
