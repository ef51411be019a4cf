#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gwave/graph/graph.hpp"
#include "gwave/numerics/matrix.hpp"

namespace gwave {

/// Writes F(t) (length N) into the output span. An empty function is the zero source.
using SourceFunction = std::function<void(double t, std::span<double> f)>;

enum class DisturbanceKind { sine_halfperiod, step, samples };

/// Accidental disturbance acting on one vertex.
struct DisturbanceProfile {
    Vertex vertex = 1;
    DisturbanceKind kind = DisturbanceKind::sine_halfperiod;
    double amplitude = 1.0;
    double onset = 0.0;
    /// Half-period length of the sine profile: sin(pi (t - onset) / duration).
    double duration = 1.0;
    /// Samples on the simulation grid for kind == samples (linear interpolation).
    Vector samples;
    double sample_dt = 0.0;

    [[nodiscard]] double value(double t) const
    {
        switch (kind) {
        case DisturbanceKind::sine_halfperiod:
            if (t <= onset || t >= onset + duration)
                return 0.0;
            return amplitude * std::sin(std::numbers::pi * (t - onset) / duration);
        case DisturbanceKind::step:
            return t > onset ? amplitude : 0.0;
        case DisturbanceKind::samples: {
            if (samples.empty() || t < 0)
                return 0.0;
            double const s = t / sample_dt;
            auto const i = static_cast<std::size_t>(std::floor(s));
            if (i + 1 >= samples.size())
                return amplitude * samples.back();
            double const w = s - static_cast<double>(i);
            return amplitude * ((1.0 - w) * samples[i] + w * samples[i + 1]);
        }
        }
        return 0.0;
    }
};

inline char const* to_string(DisturbanceKind k)
{
    switch (k) {
    case DisturbanceKind::sine_halfperiod:
        return "sine_halfperiod";
    case DisturbanceKind::step:
        return "step";
    case DisturbanceKind::samples:
        return "samples";
    }
    return "?";
}

/// Linear interpolation of an N x (I+1) table sampled every dt.
inline SourceFunction sampled_source(DenseMatrix table, double dt)
{
    detail::require(dt > 0, "sampled_source: dt must be positive");
    return [table = std::move(table), dt](double t, std::span<double> f) {
        std::size_t const last = table.cols() - 1;
        double const s = std::clamp(t / dt, 0.0, static_cast<double>(last));
        auto i = static_cast<std::size_t>(std::floor(s));
        if (i >= last)
            i = last == 0 ? 0 : last - 1;
        double const w = last == 0 ? 0.0 : s - static_cast<double>(i);
        for (std::size_t n = 0; n < table.rows(); ++n)
            f[n] = last == 0 ? table(n, 0) : (1.0 - w) * table(n, i) + w * table(n, i + 1);
    };
}

/// F^sour + sum of disturbances. Either part may be empty.
inline SourceFunction combined_source(SourceFunction base, std::vector<DisturbanceProfile> dist)
{
    if (!base && dist.empty())
        return {};
    return [base = std::move(base), dist = std::move(dist)](double t, std::span<double> f) {
        if (base)
            base(t, f);
        else
            std::fill(f.begin(), f.end(), 0.0);
        for (auto const& d : dist)
            f[static_cast<std::size_t>(d.vertex - 1)] += d.value(t);
    };
}

/// Samples an N-vertex source on the grid points 0..steps (N x (steps+1)).
inline DenseMatrix sample_source(SourceFunction const& f, std::size_t n, double dt, std::size_t steps)
{
    DenseMatrix out(n, steps + 1);
    if (!f)
        return out;
    Vector buf(n);
    for (std::size_t i = 0; i <= steps; ++i) {
        f(static_cast<double>(i) * dt, buf);
        for (std::size_t k = 0; k < n; ++k)
            out(k, i) = buf[k];
    }
    return out;
}

}  // namespace gwave
