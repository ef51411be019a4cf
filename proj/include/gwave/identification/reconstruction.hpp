#pragma once

#include <span>

#include "gwave/dynamics/impulse_response.hpp"
#include "gwave/numerics/linear_solve.hpp"
#include "gwave/numerics/matrix.hpp"

namespace gwave {

/// Weighted three-point rule int_{t_{i-1}}^{t_{i+1}} g phi_i ~ (g_- + 10 g_0 + g_+)/12 * phi_i(t_i) * dt.
inline double phi_quadrature(double g_left, double g_mid, double g_right, double phi_peak, double dt)
{
    return (g_left + 10.0 * g_mid + g_right) / 12.0 * phi_peak * dt;
}

/// Simpson's rule for the same integral (phi vanishes at both ends).
inline double phi_simpson(double g_mid, double phi_peak, double dt)
{
    return 4.0 * g_mid * phi_peak / 6.0 * 2.0 * dt;
}

/// Right-hand sides d_m^i of the reconstruction scheme for i = i0+1..ik.
/// xr is the full N x samples residual matrix; m is 0-based.
inline Vector reconstruction_data(DenseMatrix const& xr, DenseMatrix const& lap, double eta, double dt,
                                  std::size_t i0, std::size_t ik, std::size_t m, PhiForm form = PhiForm::exact)
{
    detail::require(ik > i0, "reconstruct_disturbance: empty range");
    detail::require(ik + 1 < xr.cols(), "reconstruct_disturbance: residuals must extend to t_{ik+1}");
    detail::require(i0 >= 1, "reconstruct_disturbance: i0 must be >= 1");
    detail::require(m < xr.rows() && lap.rows() == xr.rows(), "reconstruct_disturbance: vertex index out of range");
    auto const phi = phi_constants(eta, dt, form);
    std::size_t const n = xr.rows();
    Vector d(ik - i0);
    for (std::size_t i = i0 + 1; i <= ik; ++i) {
        double coupling = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double const w = lap(m, k);
            if (w != 0.0)
                coupling += w * (xr(k, i - 1) + 10.0 * xr(k, i) + xr(k, i + 1));
        }
        double const boundary = xr(m, i + 1) * phi.slope_right - xr(m, i - 1) * phi.slope_left;
        d[i - i0 - 1] = xr(m, i) - boundary - dt * phi.peak / 12.0 * coupling;
    }
    return d;
}

/// F_m(t_i) for i = i0+1..ik from F_{i-1} + 10 F_i + F_{i+1} = 12 d_m^i / (dt phi_i(t_i)),
/// with F(t_{i0}) = 0 and the closure F(t_{ik+1}) = F(t_{ik}).
inline Vector reconstruct_disturbance(DenseMatrix const& xr, DenseMatrix const& lap, double eta, double dt,
                                      std::size_t i0, std::size_t ik, std::size_t m, PhiForm form = PhiForm::exact)
{
    auto rhs = reconstruction_data(xr, lap, eta, dt, i0, ik, m, form);
    double const peak = phi_constants(eta, dt, form).peak;
    for (auto& v : rhs)
        v *= 12.0 / (dt * peak);
    return solve_reconstruction_toeplitz(rhs.size(), rhs);
}

/// C_m = (1 + 12 phi'(t_{i+1}) / (Lap_mm phi_i(t_i) dt))^{-1}.
inline double passive_coupling_coefficient(double lap_mm, double eta, double dt, PhiForm form = PhiForm::exact)
{
    detail::require(lap_mm != 0.0, "passive_coupling_coefficient: isolated vertex");
    auto const phi = phi_constants(eta, dt, form);
    return 1.0 / (1.0 + 12.0 * phi.slope_right / (lap_mm * phi.peak * dt));
}

/// First-active-step residual at vertex m predicted from its neighbours:
/// C_m (F_m + sum_{n != m} Lap_mn x_n) / (-Lap_mm). x_next holds all residuals at t_{i+1}.
inline double one_step_residual(DenseMatrix const& lap, std::span<const double> x_next, std::size_t m, double f_m,
                                double eta, double dt, PhiForm form = PhiForm::exact)
{
    double passive = 0.0;
    for (std::size_t n = 0; n < lap.cols(); ++n)
        if (n != m)
            passive += lap(m, n) * x_next[n];
    return passive_coupling_coefficient(lap(m, m), eta, dt, form) * (f_m + passive) / (-lap(m, m));
}

}  // namespace gwave
