#pragma once

#include <algorithm>

#include "gwave/dynamics/observations.hpp"
#include "gwave/dynamics/trajectory.hpp"
#include "gwave/graph/graph.hpp"
#include "gwave/graph/observation_sets.hpp"
#include "gwave/numerics/finite_diff.hpp"
#include "gwave/numerics/linear_solve.hpp"

namespace gwave {

/// Residuals on the observation vertices and the data of the residual system
/// dR_n = xR_n'' + eta xR_n' - sum_{m in S} Lap_nm xR_m.
struct ResidualData {
    VertexSet observed;
    DenseMatrix xR;  ///< N_S x samples, d - x^H over the whole record
    DenseMatrix dR;  ///< N_S x samples, valid on [first, last]
    std::size_t first = 0;
    std::size_t last = 0;
};

/// Computes dR on [first, last]. Derivatives use neighbouring samples outside
/// the range when available, so interior points get central differences.
inline ResidualData residual_data(Observations const& obs, StateTrajectory const& healthy,
                                  VertexPartition const& part, DenseMatrix const& lap, double eta, std::size_t first,
                                  std::size_t last)
{
    detail::require(obs.vertices == part.observed(), "residual_data: observation vertices do not match S");
    detail::require(last >= first + 2, "residual_data: range shorter than 3 samples");
    detail::require(last < obs.samples() && last < healthy.samples(), "residual_data: range beyond the record");
    std::size_t const ns = part.ns();
    std::size_t const samples = obs.samples();

    ResidualData rd;
    rd.observed = part.observed();
    rd.first = first;
    rd.last = last;
    rd.xR = DenseMatrix(ns, samples);
    for (std::size_t r = 0; r < ns; ++r)
        for (std::size_t i = 0; i < std::min(samples, healthy.samples()); ++i)
            rd.xR(r, i) = obs.values(r, i) - healthy.x(part.observed()[r], i);

    std::size_t const lo = first > 0 ? first - 1 : 0;
    std::size_t const hi = std::min(last + 1, samples - 1);
    rd.dR = DenseMatrix(ns, samples);
    for (std::size_t r = 0; r < ns; ++r) {
        auto const row = rd.xR.row(r);
        auto const d = finite_diff(row.subspan(lo, hi - lo + 1), obs.dt);
        auto const n = static_cast<std::size_t>(part.observed()[r] - 1);
        for (std::size_t i = first; i <= last; ++i) {
            double coupling = 0.0;
            for (std::size_t c = 0; c < ns; ++c)
                coupling += lap(n, static_cast<std::size_t>(part.observed()[c] - 1)) * rd.xR(c, i);
            rd.dR(r, i) = d.second[i - lo] + eta * d.first[i - lo] - coupling;
        }
    }
    return rd;
}

/// Per-time solve of Lap(S;E) xR_E = dR on [first, last] with the
/// pseudo-inverse. Returns N_E x samples (zero outside the range).
inline DenseMatrix identify_da(ResidualData const& rd, DenseMatrix const& lap, VertexPartition const& part)
{
    auto const sub = submatrix_SE(lap, part);
    if (part.ns() < part.ne() || matrix_rank(sub) < part.ne())
        throw PreconditionError("identify_da: the observation set is not dominantly absorbent (Lap(S;E) lacks full "
                                "column rank); use the absorbent-set mode instead");
    auto const pinv = pseudo_inverse(sub);
    DenseMatrix xe(part.ne(), rd.dR.cols());
    Vector col(part.ns());
    for (std::size_t i = rd.first; i <= rd.last; ++i) {
        for (std::size_t r = 0; r < part.ns(); ++r)
            col[r] = rd.dR(r, i);
        auto const x = pinv * col;
        for (std::size_t m = 0; m < part.ne(); ++m)
            xe(m, i) = x[m];
    }
    return xe;
}

/// Full residual matrix N x samples: S rows from the data, E rows from xR_E.
inline DenseMatrix assemble_full_residual(ResidualData const& rd, DenseMatrix const& xr_e, VertexPartition const& part)
{
    std::size_t const samples = std::min(rd.xR.cols(), xr_e.cols());
    DenseMatrix full(static_cast<std::size_t>(part.vertex_count()), samples);
    for (std::size_t r = 0; r < part.ns(); ++r)
        for (std::size_t i = 0; i < samples; ++i)
            full(static_cast<std::size_t>(part.observed()[r] - 1), i) = rd.xR(r, i);
    for (std::size_t m = 0; m < part.ne(); ++m)
        for (std::size_t i = 0; i < samples; ++i)
            full(static_cast<std::size_t>(part.unobserved()[m] - 1), i) = xr_e(m, i);
    return full;
}

}  // namespace gwave
