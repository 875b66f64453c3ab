#include "windest/quadsim/dynamics.hpp"

#include <cmath>

#include "windest/quadsim/aero.hpp"

namespace windest::quadsim {

Mat3 rotation_body_to_inertial(const Vec3& attitude) {
  const double cphi = std::cos(attitude.x), sphi = std::sin(attitude.x);
  const double cth = std::cos(attitude.y), sth = std::sin(attitude.y);
  const double cpsi = std::cos(attitude.z), spsi = std::sin(attitude.z);
  return {{{cpsi * cth, cpsi * sth * sphi - spsi * cphi,
            cpsi * sth * cphi + spsi * sphi},
           {spsi * cth, spsi * sth * sphi + cpsi * cphi,
            spsi * sth * cphi - cpsi * sphi},
           {-sth, cth * sphi, cth * cphi}}};
}

QuadState rigid_body_derivative(const QuadState& state,
                                const Vec3& thrust_body, const Vec3& torque,
                                const Vec3& wind, const QuadParams& params) {
  const Mat3 R = rotation_body_to_inertial(state.attitude);
  const Vec3 drag = drag_force(wind, state.velocity);

  QuadState d;
  d.position = state.velocity;
  d.velocity = Vec3{0.0, 0.0, params.gravity} -
               (1.0 / params.mass) * (R * thrust_body) +
               (1.0 / params.mass) * drag;

  const double jx = params.inertia.x, jy = params.inertia.y,
               jz = params.inertia.z;
  const Vec3& w = state.angular_rate;
  d.attitude = w;
  d.angular_rate = {(jy - jz) / jx * w.y * w.z + torque.x / jx,
                    (jz - jx) / jy * w.x * w.z + torque.y / jy,
                    (jx - jy) / jz * w.x * w.y + torque.z / jz};
  return d;
}

QuadState quad_step(const QuadState& state, const Vec3& thrust_body,
                    const Vec3& torque, const Vec3& wind,
                    const QuadParams& params, double dt, Integrator method) {
  auto f = [&](const QuadState& s) {
    return rigid_body_derivative(s, thrust_body, torque, wind, params);
  };
  if (method == Integrator::euler) {
    return state + dt * f(state);
  }
  const QuadState k1 = f(state);
  const QuadState k2 = f(state + (0.5 * dt) * k1);
  const QuadState k3 = f(state + (0.5 * dt) * k2);
  const QuadState k4 = f(state + dt * k3);
  return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace windest::quadsim
