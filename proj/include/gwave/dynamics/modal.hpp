#pragma once

#include <cmath>
#include <span>

#include "gwave/dynamics/trajectory.hpp"
#include "gwave/numerics/matrix.hpp"
#include "gwave/spectral.hpp"

namespace gwave {

/// Discriminants with |D| below this use the critically damped formulas.
inline constexpr double critical_discriminant_tol = 1e-12;

/// Homogeneous modal responses: A(t) starts at (1, slope 0), B(t) at (0, slope 1).
struct ModalEnvelopes {
    double A = 1.0;
    double B = 0.0;
    double dA = 0.0;
    double dB = 1.0;
};

/// Solutions of y'' + eta y' + omega^2 y = 0 for each damping regime of
/// D = eta^2 - 4 omega^2.
inline ModalEnvelopes modal_envelopes(double omega, double eta, double t)
{
    detail::require(eta > 0, "modal_envelopes: eta must be positive");
    detail::require(t >= 0, "modal_envelopes: t must be non-negative");
    double const w2 = omega * omega;
    double const disc = eta * eta - 4.0 * w2;
    double const a = 0.5 * eta;
    ModalEnvelopes e;
    if (std::abs(disc) < critical_discriminant_tol) {
        double const ex = std::exp(-a * t);
        e.A = (1.0 + a * t) * ex;
        e.B = t * ex;
        e.dA = -a * a * t * ex;
        e.dB = (1.0 - a * t) * ex;
    } else if (disc > 0) {
        double const sq = std::sqrt(disc);
        double const r = 0.5 * (-eta + sq);
        double const rb = -0.5 * (eta + sq);
        double const er = std::exp(r * t);
        double const erb = std::exp(rb * t);
        double const den = rb - r;  // = -sqrt(D)
        e.A = (rb * er - r * erb) / den;
        e.B = (erb - er) / den;
        e.dA = r * rb * (er - erb) / den;
        e.dB = (rb * erb - r * er) / den;
    } else {
        double const w = 0.5 * std::sqrt(-disc);
        double const ex = std::exp(-a * t);
        double const c = std::cos(w * t);
        double const s = std::sin(w * t);
        e.A = ex * (c + (a / w) * s);
        e.B = ex * s / w;
        e.dA = -ex * s * w2 / w;
        e.dB = ex * (c - (a / w) * s);
    }
    return e;
}

inline ModalEnvelopes modal_envelopes(SpectralDecomposition const& spec, std::size_t k, double eta, double t)
{
    return modal_envelopes(spec.clusters.at(k).omega, eta, t);
}

/// Coefficients of X0 and V0 in the eigenvector basis, flat in cluster order.
struct ModalCoefficients {
    Vector y0;
    Vector ybar0;
};

inline ModalCoefficients modal_coefficients(SpectralDecomposition const& spec, std::span<const double> x0,
                                            std::span<const double> v0)
{
    detail::require(x0.size() == spec.n && v0.size() == spec.n, "modal_coefficients: length mismatch");
    auto const qt = spec.basis().transpose();
    return {qt * x0, qt * v0};
}

/// Inverse of modal_coefficients.
inline void modal_synthesis(SpectralDecomposition const& spec, ModalCoefficients const& c, Vector& x0, Vector& v0)
{
    auto const q = spec.basis();
    x0 = q * c.y0;
    v0 = q * c.ybar0;
}

/// Closed-form homogeneous solution of x'' + eta x' - Lap x = 0 on the grid,
/// with velocities.
inline StateTrajectory modal_homogeneous_solution(SpectralDecomposition const& spec, std::span<const double> x0,
                                                  std::span<const double> v0, double eta, double dt,
                                                  std::size_t steps)
{
    auto const coef = modal_coefficients(spec, x0, v0);
    std::size_t const n = spec.n;
    StateTrajectory out;
    out.dt = dt;
    out.values = DenseMatrix(n, steps + 1);
    out.velocities = DenseMatrix(n, steps + 1);
    for (std::size_t k = 0; k < spec.K(); ++k) {
        auto const& c = spec.clusters[k];
        std::size_t const off = spec.offset(k);
        for (std::size_t i = 0; i <= steps; ++i) {
            auto const e = modal_envelopes(c.omega, eta, static_cast<double>(i) * dt);
            for (std::size_t l = 0; l < c.multiplicity(); ++l) {
                double const y = coef.y0[off + l];
                double const yb = coef.ybar0[off + l];
                double const amp = e.A * y + e.B * yb;
                double const vel = e.dA * y + e.dB * yb;
                if (amp == 0.0 && vel == 0.0)
                    continue;
                for (std::size_t r = 0; r < n; ++r) {
                    out.values(r, i) += amp * c.vectors(r, l);
                    out.velocities(r, i) += vel * c.vectors(r, l);
                }
            }
        }
    }
    return out;
}

inline StateTrajectory modal_homogeneous_solution(SpectralDecomposition const& spec, std::span<const double> x0,
                                                  std::span<const double> v0, double eta, TimeGrid const& grid)
{
    return modal_homogeneous_solution(spec, x0, v0, eta, grid.dt, grid.I);
}

}  // namespace gwave
