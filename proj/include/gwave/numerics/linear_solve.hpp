#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gwave/numerics/eigen.hpp"
#include "gwave/numerics/matrix.hpp"

namespace gwave {

/// Number of singular values above tol * sigma_max.
inline std::size_t matrix_rank(DenseMatrix const& a, double tol = 1e-10)
{
    detail::require(tol > 0, "matrix_rank: tol must be positive");
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    auto const s = svd(a).singular;
    double const smax = s.empty() ? 0.0 : s.front();
    if (smax == 0.0)
        return 0;
    std::size_t r = 0;
    for (double v : s)
        if (v > tol * smax)
            ++r;
    return r;
}

struct LeastSquaresResult {
    Vector x;
    std::size_t rank = 0;
    /// Set when the (unregularized) system was rank deficient; x is then the
    /// minimum-norm minimizer.
    bool rank_deficient = false;
};

/// Minimizes ||A x - b||^2 + ridge * ||W x||^2, W = diag(weights) (identity if
/// weights is empty). Solved through the SVD of the (augmented) matrix.
inline LeastSquaresResult solve_least_squares(DenseMatrix const& a, std::span<const double> b,
                                              double ridge = 0.0,
                                              std::span<const double> weights = {})
{
    detail::require(a.rows() >= 1 && a.cols() >= 1, "solve_least_squares: empty matrix");
    detail::require(b.size() == a.rows(), "solve_least_squares: rhs length mismatch");
    detail::require(ridge >= 0, "solve_least_squares: ridge must be non-negative");
    detail::require(weights.empty() || weights.size() == a.cols(),
                    "solve_least_squares: weight length mismatch");

    std::size_t const n = a.cols();
    DenseMatrix sys = a;
    Vector rhs(b.begin(), b.end());
    if (ridge > 0) {
        DenseMatrix aug(a.rows() + n, n);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < n; ++c)
                aug(r, c) = a(r, c);
        double const sr = std::sqrt(ridge);
        for (std::size_t c = 0; c < n; ++c)
            aug(a.rows() + c, c) = sr * (weights.empty() ? 1.0 : weights[c]);
        sys = std::move(aug);
        rhs.resize(sys.rows(), 0.0);
    }

    auto const dec = svd(sys);
    double const smax = dec.singular.empty() ? 0.0 : dec.singular.front();
    double const cut = 1e-12 * smax;
    LeastSquaresResult out;
    out.x.assign(n, 0.0);
    for (std::size_t k = 0; k < dec.singular.size(); ++k) {
        double const s = dec.singular[k];
        if (s <= cut || s == 0.0)
            continue;
        ++out.rank;
        double coef = 0.0;
        for (std::size_t r = 0; r < sys.rows(); ++r)
            coef += dec.u(r, k) * rhs[r];
        coef /= s;
        for (std::size_t c = 0; c < n; ++c)
            out.x[c] += coef * dec.v(c, k);
    }
    out.rank_deficient = out.rank < n;
    return out;
}

/// Moore-Penrose pseudo-inverse (singular values below rel_tol * sigma_max dropped).
inline DenseMatrix pseudo_inverse(DenseMatrix const& a, double rel_tol = 1e-12)
{
    auto const dec = svd(a);
    DenseMatrix p(a.cols(), a.rows());
    double const smax = dec.singular.empty() ? 0.0 : dec.singular.front();
    for (std::size_t k = 0; k < dec.singular.size(); ++k) {
        double const s = dec.singular[k];
        if (s <= rel_tol * smax || s == 0.0)
            continue;
        for (std::size_t i = 0; i < a.cols(); ++i)
            for (std::size_t j = 0; j < a.rows(); ++j)
                p(i, j) += dec.v(i, k) * dec.u(j, k) / s;
    }
    return p;
}

/// Gaussian elimination with partial pivoting.
inline Vector solve_dense(DenseMatrix a, Vector b)
{
    detail::require(a.is_square() && a.rows() == b.size(), "solve_dense: shape mismatch");
    std::size_t const n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(piv, k)))
                piv = r;
        if (a(piv, k) == 0.0)
            throw NumericalError("solve_dense: singular matrix");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(k, c), a(piv, c));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            double const f = a(r, k) / a(k, k);
            if (f == 0.0)
                continue;
            for (std::size_t c = k; c < n; ++c)
                a(r, c) -= f * a(k, c);
            b[r] -= f * b[k];
        }
    }
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            s -= a(i, c) * x[c];
        x[i] = s / a(i, i);
    }
    return x;
}

/// Cholesky solve of a symmetric positive definite system. Returns nullopt
/// when a pivot is not positive.
inline std::optional<Vector> solve_spd(DenseMatrix const& a, std::span<const double> b)
{
    detail::require(a.is_square() && a.rows() == b.size(), "solve_spd: shape mismatch");
    std::size_t const n = a.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k)
            d -= l(j, k) * l(j, k);
        if (!(d > 0.0))
            return std::nullopt;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

/// Thomas recurrence for a tridiagonal system. sub[0] and sup[n-1] are ignored.
inline Vector solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                std::span<const double> sup, std::span<const double> rhs)
{
    std::size_t const n = diag.size();
    detail::require(n >= 1 && sub.size() == n && sup.size() == n && rhs.size() == n,
                     "solve_tridiagonal: length mismatch");
    Vector c(n), x(n);
    c[0] = sup[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        double const m = 1.0 / (diag[i] - sub[i] * c[i - 1]);
        c[i] = sup[i] * m;
        x[i] = (rhs[i] - sub[i] * x[i - 1]) * m;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] -= c[i] * x[i + 1];
    return x;
}

/// Solves the n x n system with 10 on the diagonal, 1 on both off-diagonals
/// and 11 in the last diagonal entry, as produced by the 1/10/1 disturbance
/// reconstruction scheme with the closure F_{n+1} = F_n.
inline Vector solve_reconstruction_toeplitz(std::size_t n, std::span<const double> rhs)
{
    detail::require(n >= 1, "solve_reconstruction_toeplitz: n must be >= 1");
    detail::require(rhs.size() == n, "solve_reconstruction_toeplitz: rhs length mismatch");
    Vector sub(n, 1.0), diag(n, 10.0), sup(n, 1.0);
    diag[n - 1] = 11.0;
    return solve_tridiagonal(sub, diag, sup, rhs);
}

inline DenseMatrix reconstruction_toeplitz_matrix(std::size_t n)
{
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 10.0;
        if (i > 0)
            a(i, i - 1) = 1.0;
        if (i + 1 < n)
            a(i, i + 1) = 1.0;
    }
    a(n - 1, n - 1) = 11.0;
    return a;
}

}  // namespace gwave
