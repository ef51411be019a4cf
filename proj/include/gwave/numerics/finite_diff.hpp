#pragma once

#include <span>

#include "gwave/numerics/matrix.hpp"

namespace gwave {

struct Derivatives {
    Vector first;
    Vector second;
};

/// Second-order finite differences of a uniformly sampled series: central in
/// the interior, one-sided at both ends (series of length 3 reuse the single
/// central second difference at the ends).
inline Derivatives finite_diff(std::span<const double> f, double dt)
{
    std::size_t const n = f.size();
    if (n < 3)
        throw InvalidArgument("finite_diff: series needs at least 3 samples");
    detail::require(dt > 0, "finite_diff: dt must be positive");

    Derivatives d{Vector(n), Vector(n)};
    double const inv2 = 1.0 / (2.0 * dt);
    double const invsq = 1.0 / (dt * dt);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d.first[i] = (f[i + 1] - f[i - 1]) * inv2;
        d.second[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invsq;
    }
    d.first[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    d.first[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    if (n == 3) {
        d.second[0] = d.second[1];
        d.second[2] = d.second[1];
    } else {
        d.second[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * invsq;
        d.second[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * invsq;
    }
    return d;
}

}  // namespace gwave
