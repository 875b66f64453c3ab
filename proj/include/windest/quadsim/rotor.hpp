#pragma once

#include <array>

#include "windest/quadsim/motor.hpp"
#include "windest/quadsim/params.hpp"
#include "windest/vec3.hpp"

namespace windest::quadsim {

/// The four motors, indexed to match the mixing geometry: 1 front (+x),
/// 2 right (+y), 3 back, 4 left.
struct RotorSet {
  std::array<MotorState, 4> motors;

  std::array<double, 4> omega_squared() const {
    std::array<double, 4> w2;
    for (int i = 0; i < 4; ++i) {
      w2[i] = motors[i].angular_rate * motors[i].angular_rate;
    }
    return w2;
  }
};

struct ForceTorque {
  double force = 0.0;  // total thrust magnitude, N
  Vec3 torque;         // body torques (roll, pitch, yaw), N m
};

/// Rotor speeds to collective force and body torques:
///   F      = k1 (w1^2 + w2^2 + w3^2 + w4^2)
///   tau_r  = L k1 (w4^2 - w2^2)
///   tau_p  = L k1 (w1^2 - w3^2)
///   tau_y  = k2 (-w1^2 + w2^2 - w3^2 + w4^2)
ForceTorque mix_rotors(const std::array<double, 4>& omega_squared,
                       const QuadParams& params);

struct Allocation {
  std::array<double, 4> omega_squared;  // rad^2/s^2, clamped at 0
  bool saturated = false;               // true when any entry was clamped
};

/// Closed-form inverse of mix_rotors. Negative solutions are clamped to
/// zero and flagged; within the admissible cone the round trip is exact.
Allocation allocate_rotors(double force, const Vec3& torque,
                           const QuadParams& params);

}  // namespace windest::quadsim
