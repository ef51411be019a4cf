#pragma once

#include <cmath>

#include "gwave/error.hpp"

namespace gwave {

/// Test function supported on [t_{i-1}, t_{i+1}], vanishing at both ends,
/// with a unit jump of its slope at t_i.
enum class PhiForm {
    /// phi'' - eta phi' = delta(t - t_i): exponential pieces, exact for damping eta.
    exact,
    /// eta dropped: the triangle with apex -dt/2 at t_i.
    affine,
};

/// Apex phi_i(t_i) and the end slopes phi_i'(t_{i-1}), phi_i'(t_{i+1}).
struct PhiConstants {
    double peak = 0.0;
    double slope_left = 0.0;
    double slope_right = 0.0;
};

inline PhiConstants phi_constants(double eta, double dt, PhiForm form)
{
    detail::require(dt > 0, "phi_constants: dt must be positive");
    if (form == PhiForm::affine || eta == 0.0)
        return {-0.5 * dt, -0.5, 0.5};
    double const h = eta * dt;
    double const eh = std::exp(h);
    return {-std::expm1(h) / (eta * (eh + 1.0)), -1.0 / (eh + 1.0), eh / (eh + 1.0)};
}

/// phi_i(t) for t_i = i * dt; zero outside the support.
inline double impulse_response_phi(long i, double eta, double dt, double t, PhiForm form = PhiForm::exact)
{
    detail::require(dt > 0, "impulse_response_phi: dt must be positive");
    double const ti = static_cast<double>(i) * dt;
    double const tl = ti - dt;
    double const tr = ti + dt;
    if (t <= tl || t >= tr)
        return 0.0;
    if (form == PhiForm::affine || eta == 0.0)
        return t <= ti ? -0.5 * (t - tl) : -0.5 * (tr - t);
    double const h = eta * dt;
    double const c = 1.0 / (eta * (std::exp(h) + 1.0));
    double v = -c * std::expm1(eta * (t - tl));
    if (t > ti)
        v += std::expm1(eta * (t - ti)) / eta;
    return v;
}

/// Derivative of phi_i (right derivative at the kink t_i).
inline double impulse_response_phi_dot(long i, double eta, double dt, double t, PhiForm form = PhiForm::exact)
{
    double const ti = static_cast<double>(i) * dt;
    double const tl = ti - dt;
    double const tr = ti + dt;
    if (t < tl || t > tr)
        return 0.0;
    if (form == PhiForm::affine || eta == 0.0)
        return t < ti ? -0.5 : 0.5;
    double const h = eta * dt;
    double const c = 1.0 / (eta * (std::exp(h) + 1.0));
    double v = -c * eta * std::exp(eta * (t - tl));
    if (t >= ti)
        v += std::exp(eta * (t - ti));
    return v;
}

}  // namespace gwave
