#pragma once

#include <cmath>
#include <vector>

#include "gwave/graph/graph.hpp"
#include "gwave/identification/legendre.hpp"
#include "gwave/identification/residuals.hpp"
#include "gwave/numerics/linear_solve.hpp"

namespace gwave {

/// Least-squares system C X = D for the Legendre coefficients of xR_E on
/// (t_{I0+1}, t_{Ik}). Rows: one block per observation vertex, time-major
/// inside. Columns: one block of L+1 coefficients per non-observed vertex.
struct ExpansionSystem {
    DenseMatrix C;
    Vector D;
    std::size_t L = 0;
    std::size_t i0 = 0;
    std::size_t ik = 0;
    VertexSet observed;
    VertexSet unobserved;

    [[nodiscard]] std::size_t column(std::size_t e_index, std::size_t l) const { return e_index * (L + 1) + l; }
};

inline ExpansionSystem assemble_expansion_system(DenseMatrix const& lap, VertexPartition const& part,
                                                 LegendreBasis const& basis, ResidualData const& rd, std::size_t i0,
                                                 std::size_t ik)
{
    detail::require(ik > i0, "assemble_expansion_system: empty time range");
    detail::require(rd.first <= i0 + 1 && rd.last >= ik, "assemble_expansion_system: dR does not cover the range");
    detail::require(basis.count() > ik, "assemble_expansion_system: basis table too short");
    detail::require(lap.rows() == static_cast<std::size_t>(part.vertex_count()),
                    "assemble_expansion_system: Laplacian size mismatch");
    std::size_t const steps = ik - i0;
    std::size_t const ns = part.ns(), ne = part.ne(), nl = basis.size();
    ExpansionSystem sys;
    sys.L = basis.L;
    sys.i0 = i0;
    sys.ik = ik;
    sys.observed = part.observed();
    sys.unobserved = part.unobserved();
    sys.C = DenseMatrix(steps * ns, nl * ne);
    sys.D.assign(steps * ns, 0.0);
    for (std::size_t a = 0; a < ns; ++a) {
        auto const n = static_cast<std::size_t>(part.observed()[a] - 1);
        for (std::size_t j = 0; j < steps; ++j) {
            std::size_t const i = i0 + 1 + j;
            std::size_t const row = a * steps + j;
            sys.D[row] = rd.dR(a, i);
            for (std::size_t b = 0; b < ne; ++b) {
                double const w = lap(n, static_cast<std::size_t>(part.unobserved()[b] - 1));
                if (w == 0.0)
                    continue;
                for (std::size_t l = 0; l < nl; ++l)
                    sys.C(row, b * nl + l) = w * basis(l, i);
            }
        }
    }
    return sys;
}

/// Rows asserting that the vertices in `passive` carry no disturbance:
/// xR_j'' + eta xR_j' - sum_{m in E} Lap_jm xR_m = sum_{n in S} Lap_jn xR_n.
struct PassivityRows {
    DenseMatrix R;
    Vector rhs;
};

inline PassivityRows passivity_rows(DenseMatrix const& lap, VertexPartition const& part, LegendreBasis const& basis,
                                    ResidualData const& rd, double eta, std::size_t i0, std::size_t ik,
                                    VertexSet const& passive)
{
    std::size_t const steps = ik - i0;
    std::size_t const ne = part.ne(), nl = basis.size();
    PassivityRows out;
    out.R = DenseMatrix(steps * passive.size(), nl * ne);
    out.rhs.assign(steps * passive.size(), 0.0);
    for (std::size_t p = 0; p < passive.size(); ++p) {
        detail::require(!part.is_observed(passive[p]), "passivity_rows: passive vertex must be unobserved");
        auto const j = static_cast<std::size_t>(passive[p] - 1);
        for (std::size_t s = 0; s < steps; ++s) {
            std::size_t const i = i0 + 1 + s;
            double const t = static_cast<double>(i) * basis.dt;
            std::size_t const row = p * steps + s;
            auto const d1 = legendre_values(basis.L, basis.horizon, t, 1);
            auto const d2 = legendre_values(basis.L, basis.horizon, t, 2);
            for (std::size_t b = 0; b < ne; ++b) {
                auto const m = static_cast<std::size_t>(part.unobserved()[b] - 1);
                for (std::size_t l = 0; l < nl; ++l) {
                    double v = -lap(j, m) * basis(l, i);
                    if (m == j)
                        v += d2[l] + eta * d1[l];
                    out.R(row, b * nl + l) = v;
                }
            }
            double r = 0.0;
            for (std::size_t a = 0; a < part.ns(); ++a)
                r += lap(j, static_cast<std::size_t>(part.observed()[a] - 1)) * rd.xR(a, i);
            out.rhs[row] = r;
        }
    }
    return out;
}

struct RegularizedSolution {
    Vector coefficients;  ///< (L+1) N_E, same layout as the columns of C
    DenseMatrix xr_e;     ///< N_E x basis.count()
    /// ||C X - D|| plus the passivity rows when present.
    double fit_residual = 0.0;
    double penalty = 0.0;
};

/// Minimizes 1/2 ||C X - D||^2 + alpha/2 sum_m ||sum_l x_m^l P_l||^2_{L2(0,T0)}
/// (+ 1/2 ||w (R X - r)||^2 for optional passivity rows) via the normal equations.
inline RegularizedSolution solve_regularized(ExpansionSystem const& sys, double alpha, LegendreBasis const& basis,
                                             std::size_t i0, PassivityRows const* extra = nullptr,
                                             double extra_weight = 1.0)
{
    detail::require(alpha > 0, "solve_regularized: alpha must be positive");
    std::size_t const nl = basis.size();
    std::size_t const ne = sys.unobserved.size();
    std::size_t const cols = nl * ne;
    auto h = gram(sys.C);
    auto const rhs0 = sys.C.transpose() * sys.D;
    Vector g(rhs0);
    auto const gram0 = legendre_gram(basis, i0);
    for (std::size_t b = 0; b < ne; ++b)
        for (std::size_t l = 0; l < nl; ++l)
            for (std::size_t k = 0; k < nl; ++k)
                h(b * nl + l, b * nl + k) += alpha * gram0(l, k);
    if (extra && extra->R.rows() > 0) {
        double const w2 = extra_weight * extra_weight;
        auto const hr = gram(extra->R);
        auto const gr = extra->R.transpose() * extra->rhs;
        for (std::size_t r = 0; r < cols; ++r) {
            g[r] += w2 * gr[r];
            for (std::size_t c = 0; c < cols; ++c)
                h(r, c) += w2 * hr(r, c);
        }
    }
    auto sol = solve_spd(h, g);
    if (!sol)
        throw NumericalError("solve_regularized: normal matrix is not positive definite");

    RegularizedSolution out;
    out.coefficients = std::move(*sol);
    out.xr_e = DenseMatrix(ne, basis.count());
    for (std::size_t b = 0; b < ne; ++b)
        for (std::size_t i = 0; i < basis.count(); ++i) {
            double s = 0.0;
            for (std::size_t l = 0; l < nl; ++l)
                s += out.coefficients[b * nl + l] * basis(l, i);
            out.xr_e(b, i) = s;
        }
    auto res = sys.C * out.coefficients;
    double fit = 0.0;
    for (std::size_t r = 0; r < res.size(); ++r)
        fit += (res[r] - sys.D[r]) * (res[r] - sys.D[r]);
    if (extra && extra->R.rows() > 0) {
        auto const rr = extra->R * out.coefficients;
        for (std::size_t r = 0; r < rr.size(); ++r)
            fit += extra_weight * extra_weight * (rr[r] - extra->rhs[r]) * (rr[r] - extra->rhs[r]);
    }
    out.fit_residual = std::sqrt(fit);
    for (std::size_t b = 0; b < ne; ++b)
        for (std::size_t l = 0; l < nl; ++l)
            for (std::size_t k = 0; k < nl; ++k)
                out.penalty += out.coefficients[b * nl + l] * gram0(l, k) * out.coefficients[b * nl + k];
    return out;
}

}  // namespace gwave
