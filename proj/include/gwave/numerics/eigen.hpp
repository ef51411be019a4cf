#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "gwave/numerics/matrix.hpp"

namespace gwave {

struct EigenResult {
    /// Sorted descending.
    Vector eigenvalues;
    /// Column j is the unit eigenvector of eigenvalues[j].
    DenseMatrix eigenvectors;
    int sweeps = 0;
};

struct JacobiOptions {
    double symmetry_tol = 1e-12;
    /// Converged once the off-diagonal Frobenius norm is below tol * ||A||_F.
    double tol = 1e-12;
    int max_sweeps = 100;
};

namespace detail {

// Flip v so that its first component with |v_i| > eps is positive.
inline void fix_sign(DenseMatrix& q, std::size_t col)
{
    double const eps = 1e-12;
    for (std::size_t r = 0; r < q.rows(); ++r) {
        double const v = q(r, col);
        if (std::abs(v) > eps) {
            if (v < 0)
                for (std::size_t k = 0; k < q.rows(); ++k)
                    q(k, col) = -q(k, col);
            return;
        }
    }
}

inline double off_diagonal_norm(DenseMatrix const& a)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come out sorted descending. Each eigenvector has its first
/// non-negligible component positive; eigenvalues equal to within 1e-12
/// relative are ordered lexicographically by eigenvector (largest first), so
/// the output is reproducible.
inline EigenResult sym_eig(DenseMatrix const& input, JacobiOptions const& opt = {})
{
    detail::require(input.is_square(), "sym_eig: matrix is not square");
    detail::require(input.all_finite(), "sym_eig: non-finite entry");
    if (!input.is_symmetric(opt.symmetry_tol))
        throw InvalidArgument("sym_eig: matrix is not symmetric");

    std::size_t const n = input.rows();
    DenseMatrix a = input;
    DenseMatrix v = DenseMatrix::identity(n);
    double const scale = input.frobenius();
    int sweep = 0;

    for (;; ++sweep) {
        double const off = detail::off_diagonal_norm(a);
        if (off <= opt.tol * scale || off == 0.0)
            break;
        if (sweep >= opt.max_sweeps)
            throw NumericalError("sym_eig: no convergence after " + std::to_string(sweep) + " sweeps");

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double const apq = a(p, q);
                if (apq == 0.0)
                    continue;
                double const app = a(p, p);
                double const aqq = a(q, q);
                double const theta = (aqq - app) / (2.0 * apq);
                double const t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double const c = 1.0 / std::sqrt(t * t + 1.0);
                double const s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    double const akp = a(k, p);
                    double const akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double const apk = a(p, k);
                    double const aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    double const vkp = v(k, p);
                    double const vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    for (std::size_t j = 0; j < n; ++j)
        detail::fix_sign(v, j);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    // Lexicographic order inside runs of (numerically) equal eigenvalues.
    double const tie = 1e-12 * std::max(1.0, input.max_abs());
    auto lex_greater = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) {
            double const d = v(r, i) - v(r, j);
            if (std::abs(d) > 1e-12)
                return d > 0;
        }
        return false;
    };
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && std::abs(a(order[end], order[end]) - a(order[start], order[start])) <= tie)
            ++end;
        std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end), lex_greater);
        start = end;
    }

    EigenResult out;
    out.sweeps = sweep;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t r = 0; r < n; ++r)
            out.eigenvectors(r, j) = v(r, order[j]);
    }
    return out;
}

/// Thin singular value decomposition A = U diag(s) Vᵀ.
struct SvdResult {
    DenseMatrix u;       ///< rows x k
    Vector singular;     ///< k values, descending
    DenseMatrix v;       ///< cols x k
};

/// One-sided (Hestenes) Jacobi SVD; k = min(rows, cols).
inline SvdResult svd(DenseMatrix const& input, int max_sweeps = 100)
{
    detail::require(input.all_finite(), "svd: non-finite entry");
    bool const wide = input.cols() > input.rows();
    DenseMatrix w = wide ? input.transpose() : input;  // m x n with m >= n
    std::size_t const m = w.rows();
    std::size_t const n = w.cols();
    DenseMatrix v = DenseMatrix::identity(n);
    double const eps = 1e-15;
    // Columns this small are round-off of an exactly dependent column.
    double const negligible = std::pow(eps * input.frobenius(), 2);

    for (int sweep = 0;; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += w(k, i) * w(k, i);
                    beta += w(k, j) * w(k, j);
                    gamma += w(k, i) * w(k, j);
                }
                if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta) ||
                    alpha <= negligible || beta <= negligible)
                    continue;
                rotated = true;
                double const zeta = (beta - alpha) / (2.0 * gamma);
                double const t = (zeta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double const c = 1.0 / std::sqrt(1.0 + t * t);
                double const s = c * t;
                for (std::size_t k = 0; k < m; ++k) {
                    double const wi = w(k, i);
                    double const wj = w(k, j);
                    w(k, i) = c * wi - s * wj;
                    w(k, j) = s * wi + c * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double const vi = v(k, i);
                    double const vj = v(k, j);
                    v(k, i) = c * vi - s * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
        if (!rotated)
            break;
        if (sweep + 1 >= max_sweeps)
            throw NumericalError("svd: no convergence after " + std::to_string(max_sweeps) + " sweeps");
    }

    Vector sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            s += w(k, j) * w(k, j);
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    DenseMatrix u(m, n);
    DenseMatrix vs(n, n);
    Vector s_sorted(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        std::size_t const j = order[jj];
        s_sorted[jj] = sigma[j];
        for (std::size_t k = 0; k < m; ++k)
            u(k, jj) = sigma[j] > 0 ? w(k, j) / sigma[j] : 0.0;
        for (std::size_t k = 0; k < n; ++k)
            vs(k, jj) = v(k, j);
    }

    if (wide)
        return {std::move(vs), std::move(s_sorted), std::move(u)};
    return {std::move(u), std::move(s_sorted), std::move(vs)};
}

}  // namespace gwave
