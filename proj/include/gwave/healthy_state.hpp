#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "gwave/dynamics/modal.hpp"
#include "gwave/dynamics/observations.hpp"
#include "gwave/dynamics/simulate.hpp"
#include "gwave/numerics/linear_solve.hpp"
#include "gwave/spectral.hpp"

namespace gwave {

/// Normal equations M Y = -b of the initial-condition fit on (0, T0).
/// Y[offset(k) + l] = y0_{k,l}, Y[N + offset(k) + l] = ybar0_{k,l}.
struct GradientSystem {
    DenseMatrix M;
    Vector b;
    std::vector<std::string> warnings;
};

/// Flat position of coefficient (k, l) (0-based), cumulative over multiplicities.
inline std::size_t coefficient_index(SpectralDecomposition const& spec, std::size_t k, std::size_t l,
                                     bool velocity = false)
{
    detail::require(l < spec.clusters.at(k).multiplicity(), "coefficient_index: l out of range");
    return (velocity ? spec.n : 0) + spec.offset(k) + l;
}

/// Composite trapezoid weights on samples 0..count-1.
inline Vector trapezoid_weights(std::size_t count, double dt)
{
    Vector w(count, dt);
    if (count > 0) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    if (count == 1)
        w[0] = 0.0;
    return w;
}

/// Builds M and b from the observations on indices 0..I0. x_particular holds
/// the response to the known source with zero initial state (N x >= I0+1);
/// pass an empty matrix for a zero source.
inline GradientSystem assemble_gradient_system(SpectralDecomposition const& spec, Observations const& obs,
                                               DenseMatrix const& x_particular, double eta, TimeGrid const& grid)
{
    std::size_t const n = spec.n;
    std::size_t const ns = obs.vertices.size();
    std::size_t const count = grid.I0 + 1;
    detail::require(obs.samples() >= count, "assemble_gradient_system: observations do not cover (0, T0)");
    detail::require(x_particular.empty() || (x_particular.rows() == n && x_particular.cols() >= count),
                    "assemble_gradient_system: particular solution has the wrong shape");
    if (count < 2 * n + 1)
        throw PreconditionError("assemble_gradient_system: (0, T0) holds " + std::to_string(count) +
                                " samples, need at least 2N+1 = " + std::to_string(2 * n + 1));

    GradientSystem sys;
    auto const rep = strategic_report(spec, obs.vertices);
    if (!rep.strategic)
        sys.warnings.push_back(rep.message);

    // Mode vectors restricted to S, and V = Q_S^T Q_S.
    auto const q = spec.basis();
    DenseMatrix qs(ns, n);
    for (std::size_t r = 0; r < ns; ++r)
        for (std::size_t c = 0; c < n; ++c)
            qs(r, c) = q(static_cast<std::size_t>(obs.vertices[r] - 1), c);
    auto const vmat = gram(qs);

    // Envelopes per cluster on the grid.
    std::size_t const kk = spec.K();
    std::vector<Vector> a(kk, Vector(count)), bb(kk, Vector(count));
    for (std::size_t k = 0; k < kk; ++k)
        for (std::size_t i = 0; i < count; ++i) {
            auto const e = modal_envelopes(spec.clusters[k].omega, eta, grid.t(i));
            a[k][i] = e.A;
            bb[k][i] = e.B;
        }
    auto const w = trapezoid_weights(count, grid.dt);
    auto integrate = [&](Vector const& f, Vector const& g) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            s += w[i] * f[i] * g[i];
        return s;
    };
    DenseMatrix iaa(kk, kk), iab(kk, kk), ibb(kk, kk);
    for (std::size_t p = 0; p < kk; ++p)
        for (std::size_t k = 0; k < kk; ++k) {
            iaa(p, k) = integrate(a[p], a[k]);
            iab(p, k) = integrate(a[p], bb[k]);
            ibb(p, k) = integrate(bb[p], bb[k]);
        }

    std::vector<std::size_t> cluster_of(n);
    for (std::size_t k = 0; k < kk; ++k)
        for (std::size_t l = 0; l < spec.clusters[k].multiplicity(); ++l)
            cluster_of[spec.offset(k) + l] = k;

    sys.M = DenseMatrix(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t const p = cluster_of[i], k = cluster_of[j];
            double const v = vmat(i, j);
            sys.M(i, j) = v * iaa(p, k);
            sys.M(i, n + j) = v * iab(p, k);
            sys.M(n + i, j) = v * iab(k, p);
            sys.M(n + i, n + j) = v * ibb(p, k);
        }

    // Data term: sum_n v_n^{pq} int A_p (x^F_n - d_n).
    sys.b.assign(2 * n, 0.0);
    Vector mismatch(count);
    for (std::size_t r = 0; r < ns; ++r) {
        auto const row = static_cast<std::size_t>(obs.vertices[r] - 1);
        for (std::size_t i = 0; i < count; ++i)
            mismatch[i] = (x_particular.empty() ? 0.0 : x_particular(row, i)) - obs.values(r, i);
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t const p = cluster_of[j];
            sys.b[j] += qs(r, j) * integrate(a[p], mismatch);
            sys.b[n + j] += qs(r, j) * integrate(bb[p], mismatch);
        }
    }
    return sys;
}

struct InitialConditions {
    Vector x0;
    Vector v0;
    std::size_t rank = 0;
    /// M was numerically singular; the ridge-regularized solution was returned.
    bool singular = false;
    double ridge = 0.0;
    std::vector<std::string> warnings;
};

/// Solves M Y = -b and maps Y back to (X0, X0'). rank_tol is relative to the
/// largest singular value of M.
inline InitialConditions identify_initial_conditions(GradientSystem const& sys, SpectralDecomposition const& spec,
                                                     double rank_tol = 1e-13)
{
    std::size_t const n = spec.n;
    detail::require(sys.M.rows() == 2 * n && sys.M.is_square() && sys.b.size() == 2 * n,
                    "identify_initial_conditions: system size does not match the spectrum");
    InitialConditions out;
    out.warnings = sys.warnings;
    out.rank = matrix_rank(sys.M, rank_tol);
    Vector rhs(sys.b);
    for (auto& v : rhs)
        v = -v;

    std::optional<Vector> y;
    if (out.rank == 2 * n)
        y = solve_spd(sys.M, rhs);
    if (!y) {
        out.singular = true;
        double tr = 0.0;
        for (std::size_t i = 0; i < 2 * n; ++i)
            tr += sys.M(i, i);
        out.ridge = 1e-12 * tr / static_cast<double>(2 * n);
        DenseMatrix reg = sys.M;
        for (std::size_t i = 0; i < 2 * n; ++i)
            reg(i, i) += out.ridge;
        y = solve_spd(reg, rhs);
        if (!y)
            throw NumericalError("identify_initial_conditions: gradient system is singular beyond ridge rescue; "
                                 "the observation set is not strategic");
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "gradient system has rank %zu < %zu; ridge %.3g applied (observation set not strategic?)",
                      out.rank, 2 * n, out.ridge);
        out.warnings.emplace_back(buf);
    }
    ModalCoefficients c;
    c.y0.assign(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(n));
    c.ybar0.assign(y->begin() + static_cast<std::ptrdiff_t>(n), y->end());
    modal_synthesis(spec, c, out.x0, out.v0);
    return out;
}

/// Response to the known source with zero initial state over the whole grid.
/// Empty when the source is zero.
inline DenseMatrix particular_solution(DenseMatrix const& lap, double eta, SourceFunction const& source,
                                       TimeGrid const& grid, SimulationOptions const& opt = {})
{
    if (!source)
        return {};
    Vector zero(lap.rows(), 0.0);
    return simulate_forward(lap, eta, source, zero, zero, grid, opt).values;
}

/// X^H = closed-form homogeneous part + simulated particular part on (0, T).
inline StateTrajectory compute_healthy_state(SpectralDecomposition const& spec, DenseMatrix const& lap, double eta,
                                             std::span<const double> x0, std::span<const double> v0,
                                             SourceFunction const& source, TimeGrid const& grid,
                                             SimulationOptions const& opt = {})
{
    auto traj = modal_homogeneous_solution(spec, x0, v0, eta, grid);
    if (source) {
        Vector zero(lap.rows(), 0.0);
        auto const part = simulate_forward(lap, eta, source, zero, zero, grid, opt);
        for (std::size_t r = 0; r < traj.values.rows(); ++r)
            for (std::size_t i = 0; i < traj.values.cols(); ++i) {
                traj.values(r, i) += part.values(r, i);
                traj.velocities(r, i) += part.velocities(r, i);
            }
    }
    return traj;
}

}  // namespace gwave
