#include "windest/quadsim/aero.hpp"

#include <algorithm>
#include <cmath>

#include "windest/errors.hpp"

namespace windest::quadsim {

double drag_coefficient(double airspeed_magnitude) {
  return std::min(1.1, 0.2 + 0.9 * std::exp(-0.6 * airspeed_magnitude - 2.0));
}

Vec3 drag_force(const Vec3& wind, const Vec3& velocity) {
  const Vec3 va = wind - velocity;
  const double mag = va.norm();
  return drag_coefficient(mag) * mag * va;
}

namespace {

// Residual g(v) = v * sqrt(u^2 + v^2_h-term...) rearranged so that the root
// of v * sqrt(u2v2 + (v + w)^2) - v_h^2 = 0 is the induced velocity.
double residual(double v, double u2v2, double w, double vh2) {
  return v * std::sqrt(u2v2 + (v + w) * (v + w)) - vh2;
}

}  // namespace

double solve_induced_velocity(double u, double v, double w, double v_h) {
  const double u2v2 = u * u + v * v;
  const double vh2 = v_h * v_h;

  // Damped fixed-point: v <- (1-d) v + d * v_h^2 / sqrt(u^2+v^2+(v+w)^2).
  double vi = v_h;
  constexpr double kDamp = 0.5;
  constexpr double kTol = 1e-10;
  for (int it = 0; it < 50; ++it) {
    const double denom = std::sqrt(u2v2 + (vi + w) * (vi + w));
    if (denom == 0.0) break;  // u=v=0 and vi=-w; fall through to bisection
    const double next = (1.0 - kDamp) * vi + kDamp * vh2 / denom;
    if (std::abs(next - vi) < kTol) return next;
    vi = next;
  }

  // Bisection fallback: residual is strictly increasing in v for v >= 0.
  double lo = 0.0;
  double hi = std::max(v_h, std::abs(w)) + v_h;
  while (residual(hi, u2v2, w, vh2) < 0.0) hi *= 2.0;
  if (residual(lo, u2v2, w, vh2) > 0.0) {
    throw NumericalError("solve_induced_velocity: no root bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid, u2v2, w, vh2) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < kTol) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

double corrected_thrust(double T, const Vec3& body_airspeed, double v_h) {
  if (T == 0.0) return 0.0;
  const double vi = solve_induced_velocity(body_airspeed.x, body_airspeed.y,
                                           body_airspeed.z, v_h);
  const double denom = vi + body_airspeed.z;
  if (std::abs(denom) < 1e-6 * v_h) {
    throw NumericalError("corrected_thrust: rotor inflow near zero");
  }
  return T * vi / denom;
}

Vec3 blade_flapping(double T, double u, double v, double flapping_coeff) {
  const double s = std::sqrt(u * u + v * v);
  if (s < 1e-9) return {0.0, 0.0, T};
  const double alpha = flapping_coeff * s;
  const double sin_a = std::sin(alpha);
  return {T * u * sin_a / s, T * v * sin_a / s, T * std::cos(alpha)};
}

}  // namespace windest::quadsim
