#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "gwave/dynamics/trajectory.hpp"
#include "gwave/graph/graph.hpp"

namespace gwave {

/// Records d_n(t_i) for the observation vertices (rows follow the sorted set).
struct Observations {
    VertexSet vertices;
    DenseMatrix values;  ///< N_S x (I+1)
    double dt = 0.0;

    [[nodiscard]] std::size_t samples() const { return values.cols(); }

    [[nodiscard]] std::size_t row_of(Vertex v) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        detail::require(it != vertices.end() && *it == v, "Observations: vertex is not observed");
        return static_cast<std::size_t>(it - vertices.begin());
    }
};

/// d_n = x_n + N(0, noise_std^2), seeded with a 64-bit Mersenne twister.
/// Noise is drawn vertex by vertex, in time order.
inline Observations generate_observations(StateTrajectory const& traj, VertexSet s, double noise_std,
                                          std::uint64_t seed = 0)
{
    detail::require(noise_std >= 0, "generate_observations: noise_std must be non-negative");
    std::sort(s.begin(), s.end());
    Observations obs;
    obs.dt = traj.dt;
    obs.values = DenseMatrix(s.size(), traj.samples());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_std > 0 ? noise_std : 1.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
        detail::require(s[k] >= 1 && static_cast<std::size_t>(s[k]) <= traj.vertex_count(),
                        "generate_observations: vertex outside graph");
        for (std::size_t i = 0; i < traj.samples(); ++i) {
            double v = traj.x(s[k], i);
            if (noise_std > 0)
                v += noise(rng);
            obs.values(k, i) = v;
        }
    }
    obs.vertices = std::move(s);
    return obs;
}

}  // namespace gwave
