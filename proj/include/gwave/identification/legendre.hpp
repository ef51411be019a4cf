#pragma once

#include <span>

#include "gwave/numerics/linear_solve.hpp"
#include "gwave/numerics/matrix.hpp"

namespace gwave {

/// P_0..P_L on (0, horizon) (shifted Legendre, s = 2t/horizon - 1), or their
/// first/second derivatives in t when order is 1 or 2.
inline Vector legendre_values(std::size_t L, double horizon, double t, int order = 0)
{
    detail::require(horizon > 0, "legendre_values: horizon must be positive");
    detail::require(order >= 0 && order <= 2, "legendre_values: derivative order must be 0, 1 or 2");
    double const s = 2.0 * t / horizon - 1.0;
    Vector p(L + 1), dp(L + 1, 0.0), ddp(L + 1, 0.0);
    p[0] = 1.0;
    if (L >= 1) {
        p[1] = s;
        dp[1] = 1.0;
    }
    for (std::size_t l = 1; l < L; ++l) {
        double const lf = static_cast<double>(l);
        p[l + 1] = ((2 * lf + 1) / (lf + 1)) * s * p[l] - (lf / (lf + 1)) * p[l - 1];
        dp[l + 1] = dp[l - 1] + (2 * lf + 1) * p[l];
        ddp[l + 1] = ddp[l - 1] + (2 * lf + 1) * dp[l];
    }
    if (order == 0)
        return p;
    double const scale = 2.0 / horizon;
    Vector& d = order == 1 ? dp : ddp;
    double const f = order == 1 ? scale : scale * scale;
    for (auto& v : d)
        v *= f;
    return d;
}

/// Table of P_l(t_i), t_i = i dt for i = 0..count-1.
struct LegendreBasis {
    std::size_t L = 0;
    double horizon = 0.0;
    double dt = 0.0;
    DenseMatrix table;  ///< (L+1) x count

    [[nodiscard]] std::size_t size() const { return L + 1; }
    [[nodiscard]] std::size_t count() const { return table.cols(); }
    /// ||P_l||^2 on (0, horizon).
    [[nodiscard]] double norm2(std::size_t l) const { return horizon / (2.0 * static_cast<double>(l) + 1.0); }
    [[nodiscard]] double operator()(std::size_t l, std::size_t i) const { return table(l, i); }
};

inline LegendreBasis legendre_basis(std::size_t L, double horizon, double dt, std::size_t count)
{
    detail::require(dt > 0, "legendre_basis: dt must be positive");
    LegendreBasis b;
    b.L = L;
    b.horizon = horizon;
    b.dt = dt;
    b.table = DenseMatrix(L + 1, count);
    for (std::size_t i = 0; i < count; ++i) {
        auto const p = legendre_values(L, horizon, static_cast<double>(i) * dt);
        for (std::size_t l = 0; l <= L; ++l)
            b.table(l, i) = p[l];
    }
    return b;
}

/// Trapezoid Gram matrix int_{t_0}^{t_{last}} P_l P_l' dt over samples 0..last.
inline DenseMatrix legendre_gram(LegendreBasis const& b, std::size_t last)
{
    detail::require(last < b.count(), "legendre_gram: range beyond the table");
    DenseMatrix g(b.size(), b.size());
    for (std::size_t i = 0; i <= last; ++i) {
        double const w = (i == 0 || i == last) ? 0.5 * b.dt : b.dt;
        for (std::size_t a = 0; a <= b.L; ++a)
            for (std::size_t c = 0; c <= b.L; ++c)
                g(a, c) += w * b(a, i) * b(c, i);
    }
    return g;
}

/// Least-squares coefficients of samples f(t_i), i = 0..count-1, in the basis.
inline Vector legendre_fit(LegendreBasis const& b, std::span<const double> f)
{
    detail::require(f.size() == b.count(), "legendre_fit: sample count mismatch");
    auto const a = b.table.transpose();
    return solve_least_squares(a, f).x;
}

inline Vector legendre_eval(LegendreBasis const& b, std::span<const double> coef)
{
    detail::require(coef.size() == b.size(), "legendre_eval: coefficient count mismatch");
    return b.table.transpose() * coef;
}

}  // namespace gwave
