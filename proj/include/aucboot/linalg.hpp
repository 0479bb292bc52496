#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace aucboot {

/// Dense symmetric matrix in row-major storage, sized for small feature
/// dimensions (covariances of the discriminant classifiers).
struct SymMatrix {
    std::size_t dim = 0;
    std::vector<double> a;  // dim*dim, row-major

    SymMatrix() = default;
    explicit SymMatrix(std::size_t d) : dim(d), a(d * d, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim; ++i) t += at(i, i);
        return t;
    }

    void add_diagonal(double v) {
        for (std::size_t i = 0; i < dim; ++i) at(i, i) += v;
    }
};

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
struct CholeskyFactor {
    std::size_t dim = 0;
    std::vector<double> l;  // row-major lower triangle (upper part zero)
    bool ok = false;
    double min_pivot = 0.0;  // smallest diagonal pivot encountered (pre-sqrt)

    /// Solves L L^T x = b.
    std::vector<double> solve(std::span<const double> b) const {
        std::vector<double> y(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            double s = b[i];
            for (std::size_t j = 0; j < i; ++j) s -= l[i * dim + j] * y[j];
            y[i] = s / l[i * dim + i];
        }
        std::vector<double> x(dim, 0.0);
        for (std::size_t ii = dim; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t j = ii + 1; j < dim; ++j) s -= l[j * dim + ii] * x[j];
            x[ii] = s / l[ii * dim + ii];
        }
        return x;
    }

    double log_det() const {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i) s += std::log(l[i * dim + i]);
        return 2.0 * s;
    }

    /// Quadratic form x^T A^{-1} x via one triangular solve.
    double inv_quadratic(std::span<const double> x) const {
        std::vector<double> y(dim, 0.0);
        double q = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double s = x[i];
            for (std::size_t j = 0; j < i; ++j) s -= l[i * dim + j] * y[j];
            y[i] = s / l[i * dim + i];
            q += y[i] * y[i];
        }
        return q;
    }
};

/// Attempts a Cholesky factorization; pivots at or below `pivot_floor`
/// mark the matrix as numerically non-positive-definite.
inline CholeskyFactor cholesky(const SymMatrix& m, double pivot_floor = 0.0) {
    CholeskyFactor f;
    f.dim = m.dim;
    f.l.assign(m.dim * m.dim, 0.0);
    f.ok = true;
    f.min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m.at(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= f.l[i * m.dim + k] * f.l[j * m.dim + k];
            if (i == j) {
                f.min_pivot = std::min(f.min_pivot, s);
                if (!(s > pivot_floor)) {
                    f.ok = false;
                    return f;
                }
                f.l[i * m.dim + i] = std::sqrt(s);
            } else {
                f.l[i * m.dim + j] = s / f.l[j * m.dim + j];
            }
        }
    }
    return f;
}

inline double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace aucboot
