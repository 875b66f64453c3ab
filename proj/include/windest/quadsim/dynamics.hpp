#pragma once

#include "windest/quadsim/motor.hpp"
#include "windest/quadsim/params.hpp"
#include "windest/quadsim/state.hpp"
#include "windest/vec3.hpp"

namespace windest::quadsim {

/// Row-major 3x3 matrix; just enough for rotations.
struct Mat3 {
  double m[3][3];

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
  Vec3 transposed_mul(const Vec3& v) const {
    return {m[0][0] * v.x + m[1][0] * v.y + m[2][0] * v.z,
            m[0][1] * v.x + m[1][1] * v.y + m[2][1] * v.z,
            m[0][2] * v.x + m[1][2] * v.y + m[2][2] * v.z};
  }
};

/// Body-to-inertial rotation for ZYX Euler angles (roll, pitch, yaw).
Mat3 rotation_body_to_inertial(const Vec3& attitude);

/// Time derivative of the rigid-body state under a body-frame thrust vector,
/// body torques, and inertial wind:
///   p'' = g e3 - R T_b / m + f_d(wind, velocity) / m
/// with Euler-rate gyroscopic coupling ((Jy-Jz)/Jx etc.) on the rates.
/// thrust_body points along body +z for an untilted rotor plane; it enters
/// with a minus sign (rotors push up, z is down).
QuadState rigid_body_derivative(const QuadState& state,
                                const Vec3& thrust_body, const Vec3& torque,
                                const Vec3& wind, const QuadParams& params);

/// One integration step with thrust/torque/wind held constant; drag is
/// re-evaluated from the intermediate states.
QuadState quad_step(const QuadState& state, const Vec3& thrust_body,
                    const Vec3& torque, const Vec3& wind,
                    const QuadParams& params, double dt, Integrator method);

}  // namespace windest::quadsim
