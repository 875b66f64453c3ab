#pragma once

#include "windest/vec3.hpp"

namespace windest::quadsim {

/// Full rigid-body state. Attitude is ZYX Euler (roll phi, pitch theta,
/// yaw psi); angular_rate holds the Euler-angle rates.
struct QuadState {
  Vec3 position;      // m, NED
  Vec3 velocity;      // m/s, NED
  Vec3 attitude;      // rad: phi, theta, psi
  Vec3 angular_rate;  // rad/s: dphi, dtheta, dpsi

  bool finite() const {
    return position.finite() && velocity.finite() && attitude.finite() &&
           angular_rate.finite();
  }
};

// State-space arithmetic for the integrator.
inline QuadState operator+(const QuadState& a, const QuadState& b) {
  return {a.position + b.position, a.velocity + b.velocity,
          a.attitude + b.attitude, a.angular_rate + b.angular_rate};
}
inline QuadState operator*(double s, const QuadState& a) {
  return {s * a.position, s * a.velocity, s * a.attitude, s * a.angular_rate};
}

}  // namespace windest::quadsim
