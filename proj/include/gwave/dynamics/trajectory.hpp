#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "gwave/numerics/matrix.hpp"

namespace gwave {

/// Uniform time grid t_i = i * dt, i = 0..I, with healthy horizon T0 = I0 * dt.
struct TimeGrid {
    double T = 0.0;
    double dt = 0.0;
    std::size_t I = 0;
    std::size_t I0 = 0;

    TimeGrid() = default;

    /// T and T0 must be integer multiples of dt (to 1e-9 relative).
    TimeGrid(double final_time, double step, double healthy_time)
    {
        detail::require(step > 0 && std::isfinite(step), "TimeGrid: dt must be positive");
        detail::require(final_time > 0, "TimeGrid: T must be positive");
        double const steps = final_time / step;
        double const steps0 = healthy_time / step;
        I = static_cast<std::size_t>(std::llround(steps));
        I0 = static_cast<std::size_t>(std::llround(steps0));
        detail::require(std::abs(steps - static_cast<double>(I)) <= 1e-9 * std::max(1.0, steps),
                        "TimeGrid: T is not a multiple of dt");
        detail::require(std::abs(steps0 - static_cast<double>(I0)) <= 1e-9 * std::max(1.0, steps0),
                        "TimeGrid: T0 is not a multiple of dt");
        detail::require(I0 > 1 && I0 < I, "TimeGrid: need 1 < I0 < I");
        T = final_time;
        dt = step;
    }

    static TimeGrid from_steps(std::size_t steps, double step, std::size_t healthy_steps)
    {
        return TimeGrid(static_cast<double>(steps) * step, step, static_cast<double>(healthy_steps) * step);
    }

    [[nodiscard]] double t(std::size_t i) const { return static_cast<double>(i) * dt; }
    [[nodiscard]] double T0() const { return t(I0); }
    [[nodiscard]] std::size_t samples() const { return I + 1; }
};

/// Vertex states x_n(t_i) (N x (I+1)) and optionally the velocities.
struct StateTrajectory {
    DenseMatrix values;
    DenseMatrix velocities;  ///< empty when not recorded
    double dt = 0.0;

    [[nodiscard]] std::size_t vertex_count() const { return values.rows(); }
    [[nodiscard]] std::size_t samples() const { return values.cols(); }
    [[nodiscard]] bool has_velocities() const { return !velocities.empty(); }
    [[nodiscard]] double t(std::size_t i) const { return static_cast<double>(i) * dt; }

    /// State of vertex label v (1-based) at index i.
    [[nodiscard]] double x(int v, std::size_t i) const { return values(static_cast<std::size_t>(v - 1), i); }

    [[nodiscard]] Vector series(int v) const
    {
        auto const r = values.row(static_cast<std::size_t>(v - 1));
        return {r.begin(), r.end()};
    }
};

/// Max |a - b| over all entries of two trajectories of the same shape.
inline double max_abs_difference(DenseMatrix const& a, DenseMatrix const& b)
{
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_difference: shape mismatch");
    return (a - b).max_abs();
}

}  // namespace gwave
