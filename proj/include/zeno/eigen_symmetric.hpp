// eigen_symmetric.hpp - Dense real symmetric eigensolver
//
// Householder reduction to tridiagonal form followed by implicit-shift QL iteration
// (the classic tred2/tql2 pair). Deterministic for a fixed input; O(n^3).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/errors.hpp"

namespace zeno {

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // column j pairs with eigenvalues(j)

    Eigen::Index size() const { return eigenvalues.size(); }
};

// max |P^T P - I|
inline double orthogonality_error(const SpectralDecomposition& sd) {
    const auto& p = sd.eigenvectors;
    const Eigen::MatrixXd gram = p.transpose() * p;
    return (gram - Eigen::MatrixXd::Identity(p.cols(), p.cols())).cwiseAbs().maxCoeff();
}

// max |H P - P D|
inline double eigen_residual(const Eigen::MatrixXd& h, const SpectralDecomposition& sd) {
    const Eigen::MatrixXd r = h * sd.eigenvectors - sd.eigenvectors * sd.eigenvalues.asDiagonal();
    return r.cwiseAbs().maxCoeff();
}

namespace detail {

// Householder tridiagonalization. On return v holds the accumulated orthogonal
// transform, d the diagonal and e the sub-diagonal (e[0] unused).
inline void tridiagonalize(Eigen::MatrixXd& v, std::vector<double>& d, std::vector<double>& e) {
    const Eigen::Index n = v.rows();
    for (Eigen::Index j = 0; j < n; ++j) d[j] = v(n - 1, j);

    for (Eigen::Index i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (Eigen::Index k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (Eigen::Index j = 0; j < i; ++j) {
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (Eigen::Index k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (Eigen::Index j = 0; j < i; ++j) e[j] = 0.0;

            for (Eigen::Index j = 0; j < i; ++j) {
                f = d[j];
                v(j, i) = f;
                g = e[j] + v(j, j) * f;
                for (Eigen::Index k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d[k];
                    e[k] += v(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (Eigen::Index j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (Eigen::Index j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (Eigen::Index j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (Eigen::Index k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
                d[j] = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    for (Eigen::Index i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (Eigen::Index k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
            for (Eigen::Index j = 0; j <= i; ++j) {
                double g = 0.0;
                for (Eigen::Index k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
                for (Eigen::Index k = 0; k <= i; ++k) v(k, j) -= g * d[k];
            }
        }
        for (Eigen::Index k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        d[j] = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of v along.
inline void ql_implicit(Eigen::MatrixXd& v, std::vector<double>& d, std::vector<double>& e, int max_iter) {
    const Eigen::Index n = v.rows();
    for (Eigen::Index i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (Eigen::Index l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        Eigen::Index m = l;
        while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_iter)
                    throw NumericalError("symmetric eigensolver: no convergence after " + std::to_string(max_iter) +
                                         " QL iterations on eigenvalue " + std::to_string(l) +
                                         ", worst off-diagonal residual " + std::to_string(std::abs(e[l])));
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (Eigen::Index i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (Eigen::Index i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (Eigen::Index k = 0; k < n; ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

} // namespace detail

// Eigendecomposition H = P D P^T of a real symmetric matrix. Only the lower triangle
// is trusted to be consistent; asymmetric input is rejected.
inline SpectralDecomposition eigendecompose(const Eigen::MatrixXd& h, int max_iter = 60) {
    if (h.rows() != h.cols()) throw DomainError("eigendecompose: matrix is not square");
    const Eigen::Index n = h.rows();
    if (n == 0) return {};
    if (!h.allFinite()) throw DomainError("eigendecompose: matrix has non-finite entries");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            if (h(i, j) != h(j, i)) throw DomainError("eigendecompose: matrix is not symmetric");

    Eigen::MatrixXd v = h;
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
    if (n == 1) {
        return {Eigen::VectorXd::Constant(1, h(0, 0)), Eigen::MatrixXd::Identity(1, 1)};
    }
    detail::tridiagonalize(v, d, e);
    detail::ql_implicit(v, d, e, max_iter);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });

    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    sd.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        sd.eigenvalues(j) = d[order[j]];
        sd.eigenvectors.col(j) = v.col(order[j]);
    }
    return sd;
}

} // namespace zeno
