#pragma once

#include <span>

#include "gwave/dynamics/source.hpp"
#include "gwave/dynamics/trajectory.hpp"
#include "gwave/numerics/matrix.hpp"

namespace gwave {

struct SimulationOptions {
    /// RK4 steps per grid step; the trajectory is still recorded on the grid.
    std::size_t substeps = 1;
};

/// Integrates x'' + eta x' - Lap x = F(t) with the classical RK4 method on (x, x').
inline StateTrajectory simulate_forward(DenseMatrix const& lap, double eta, SourceFunction const& source,
                                        std::span<const double> x0, std::span<const double> v0, double dt,
                                        std::size_t steps, SimulationOptions const& opt = {})
{
    std::size_t const n = lap.rows();
    detail::require(lap.is_square(), "simulate_forward: Laplacian not square");
    detail::require(x0.size() == n && v0.size() == n, "simulate_forward: initial condition length mismatch");
    detail::require(dt > 0, "simulate_forward: dt must be positive");
    detail::require(opt.substeps >= 1, "simulate_forward: substeps must be >= 1");

    StateTrajectory out;
    out.dt = dt;
    out.values = DenseMatrix(n, steps + 1);
    out.velocities = DenseMatrix(n, steps + 1);
    Vector x(x0.begin(), x0.end());
    Vector v(v0.begin(), v0.end());
    out.values.set_column(0, x);
    out.velocities.set_column(0, v);

    Vector f(n), k1x(n), k1v(n), k2x(n), k2v(n), k3x(n), k3v(n), k4x(n), k4v(n), xs(n), vs(n);
    auto accel = [&](double t, Vector const& xx, Vector const& vv, Vector& a) {
        if (source)
            source(t, f);
        else
            std::fill(f.begin(), f.end(), 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            double s = f[r] - eta * vv[r];
            auto const row = lap.row(r);
            for (std::size_t c = 0; c < n; ++c)
                s += row[c] * xx[c];
            a[r] = s;
        }
    };

    double const h = dt / static_cast<double>(opt.substeps);
    for (std::size_t i = 0; i < steps; ++i) {
        for (std::size_t sub = 0; sub < opt.substeps; ++sub) {
            double const t = static_cast<double>(i) * dt + static_cast<double>(sub) * h;
            k1x = v;
            accel(t, x, v, k1v);
            for (std::size_t r = 0; r < n; ++r) {
                xs[r] = x[r] + 0.5 * h * k1x[r];
                vs[r] = v[r] + 0.5 * h * k1v[r];
            }
            k2x = vs;
            accel(t + 0.5 * h, xs, vs, k2v);
            for (std::size_t r = 0; r < n; ++r) {
                xs[r] = x[r] + 0.5 * h * k2x[r];
                vs[r] = v[r] + 0.5 * h * k2v[r];
            }
            k3x = vs;
            accel(t + 0.5 * h, xs, vs, k3v);
            for (std::size_t r = 0; r < n; ++r) {
                xs[r] = x[r] + h * k3x[r];
                vs[r] = v[r] + h * k3v[r];
            }
            k4x = vs;
            accel(t + h, xs, vs, k4v);
            for (std::size_t r = 0; r < n; ++r) {
                x[r] += h / 6.0 * (k1x[r] + 2.0 * k2x[r] + 2.0 * k3x[r] + k4x[r]);
                v[r] += h / 6.0 * (k1v[r] + 2.0 * k2v[r] + 2.0 * k3v[r] + k4v[r]);
            }
        }
        out.values.set_column(i + 1, x);
        out.velocities.set_column(i + 1, v);
    }
    return out;
}

inline StateTrajectory simulate_forward(DenseMatrix const& lap, double eta, SourceFunction const& source,
                                        std::span<const double> x0, std::span<const double> v0,
                                        TimeGrid const& grid, SimulationOptions const& opt = {})
{
    return simulate_forward(lap, eta, source, x0, v0, grid.dt, grid.I, opt);
}

/// Source given as samples on the grid (N x (I+1)), linearly interpolated.
inline StateTrajectory simulate_forward(DenseMatrix const& lap, double eta, DenseMatrix const& source_samples,
                                        std::span<const double> x0, std::span<const double> v0,
                                        TimeGrid const& grid, SimulationOptions const& opt = {})
{
    detail::require(source_samples.rows() == lap.rows() && source_samples.cols() == grid.samples(),
                    "simulate_forward: source table must be N x (I+1)");
    return simulate_forward(lap, eta, sampled_source(source_samples, grid.dt), x0, v0, grid, opt);
}

/// Energy |x'|^2 + x^T (-Lap) x at every grid point.
inline Vector wave_energy(DenseMatrix const& lap, StateTrajectory const& traj)
{
    detail::require(traj.has_velocities(), "wave_energy: trajectory has no velocities");
    std::size_t const n = traj.vertex_count();
    Vector e(traj.samples());
    Vector x(n);
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            x[r] = traj.values(r, i);
            s += traj.velocities(r, i) * traj.velocities(r, i);
        }
        auto const lx = lap * x;
        e[i] = s - dot(x, lx);
    }
    return e;
}

}  // namespace gwave
