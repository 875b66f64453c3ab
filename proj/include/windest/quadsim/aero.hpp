#pragma once

#include "windest/vec3.hpp"

namespace windest::quadsim {

/// Isotropic drag coefficient at a given airspeed magnitude (kg/m).
/// C_d = min(1.1, 0.2 + 0.9 exp(-0.6 |V_a| - 2)). The 1.1 clamp is kept
/// verbatim even though the expression peaks near 0.32.
double drag_coefficient(double airspeed_magnitude);

/// Drag force f_d = C_d(|V_a|) V_a |V_a| with V_a = wind - velocity (N, NED).
Vec3 drag_force(const Vec3& wind, const Vec3& velocity);

/// Induced velocity v_i >= 0 solving v_i = v_h^2 / sqrt(u^2+v^2+(v_i+w)^2).
/// Damped fixed-point iteration (cap 50, tol 1e-10) with a bisection
/// fallback; throws NumericalError only if both fail.
double solve_induced_velocity(double u, double v, double w, double v_h);

/// Momentum-theory thrust correction T * v_i / (v_i + w) for body airspeed
/// (u, v, w). T = 0 short-circuits to 0. Throws NumericalError when
/// v_i + w is too close to zero (vortex-ring conditions are out of scope).
double corrected_thrust(double T, const Vec3& body_airspeed, double v_h);

/// Blade-flapping thrust vector in the body frame:
/// alpha = K_f sqrt(u^2+v^2), output = T (u sin(a)/s, v sin(a)/s, cos(a))
/// with s = sqrt(u^2+v^2). Horizontal parts are zero below s = 1e-9
/// (continuous limit). Output magnitude equals T.
Vec3 blade_flapping(double T, double u, double v, double flapping_coeff);

}  // namespace windest::quadsim
