#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gwave/dynamics/observations.hpp"
#include "gwave/dynamics/trajectory.hpp"

namespace gwave {

struct ResidualSample {
    double t = 0.0;  ///< window start
    double R = 0.0;
};

struct DetectionReport {
    bool detected = false;
    double t_bar = 0.0;
    std::size_t i_bar = 0;  ///< grid index of t_bar
    double epsilon = 0.0;
    std::size_t window = 1;
    /// One entry per scanned window, up to and including the detecting one.
    std::vector<ResidualSample> trace;
};

/// R = (1/N_S) sum_n ||d_n - x^H_n||_{L2(t_i, t_{i+window})}, trapezoid rule.
inline double window_residual(Observations const& obs, StateTrajectory const& healthy, std::size_t i,
                              std::size_t window)
{
    std::size_t const ns = obs.vertices.size();
    double const dt = obs.dt;
    double total = 0.0;
    for (std::size_t r = 0; r < ns; ++r) {
        double s = 0.0;
        for (std::size_t j = i; j <= i + window; ++j) {
            double const e = obs.values(r, j) - healthy.x(obs.vertices[r], j);
            double const wgt = (j == i || j == i + window) ? 0.5 : 1.0;
            s += wgt * e * e;
        }
        total += std::sqrt(s * dt);
    }
    return total / static_cast<double>(ns);
}

/// 5 x the 99th percentile of R over windows inside (0, T0), floored at 1e-8.
inline double auto_epsilon(Observations const& obs, StateTrajectory const& healthy, TimeGrid const& grid,
                           std::size_t window = 1)
{
    detail::require(window >= 1, "auto_epsilon: window must be >= 1");
    std::vector<double> rs;
    for (std::size_t i = 0; i + window <= grid.I0; i += window)
        rs.push_back(window_residual(obs, healthy, i, window));
    double eps = 1e-8;
    if (!rs.empty()) {
        std::sort(rs.begin(), rs.end());
        // nearest-rank percentile
        auto const rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(rs.size())));
        double const p99 = rs[std::clamp<std::size_t>(rank, 1, rs.size()) - 1];
        eps = std::max(eps, 5.0 * p99);
    }
    return eps;
}

/// Scans windows starting at T0 in steps of `window` grid steps and stops at the
/// first R > epsilon.
inline DetectionReport detect(Observations const& obs, StateTrajectory const& healthy, double epsilon,
                              TimeGrid const& grid, std::size_t window = 1)
{
    detail::require(epsilon > 0, "detect: epsilon must be positive");
    detail::require(window >= 1, "detect: window must be >= 1");
    detail::require(!obs.vertices.empty(), "detect: no observation vertices");
    detail::require(obs.samples() >= grid.samples() && healthy.samples() >= grid.samples(),
                    "detect: observations or healthy state do not cover (0, T)");
    DetectionReport rep;
    rep.epsilon = epsilon;
    rep.window = window;
    for (std::size_t i = grid.I0; i + window <= grid.I; i += window) {
        double const r = window_residual(obs, healthy, i, window);
        rep.trace.push_back({grid.t(i), r});
        if (r > epsilon) {
            rep.detected = true;
            rep.i_bar = i;
            rep.t_bar = grid.t(i);
            break;
        }
    }
    return rep;
}

}  // namespace gwave
