#pragma once

#include "windest/control/gains.hpp"
#include "windest/control/waypoint.hpp"
#include "windest/quadsim/params.hpp"
#include "windest/quadsim/state.hpp"

namespace windest::control {

struct ForceTorqueCommand {
  double force = 0.0;  // collective thrust, N
  Vec3 torque;         // body torques, N m
};

/// Feedback-linearized PD attitude controller:
///   F     = m (g + accel_d) / (cos(phi) cos(theta))
///   tau_x = Jx (-K1 dphi - (Jy-Jz)/Jx dtheta dpsi) + Kp1 e1 + Kd1 de1
/// (and cyclic for pitch/yaw), with e = desired - actual Euler angles and
/// de = -angular_rate (desired angles treated as constant between updates).
/// Throws NumericalError when |cos(phi) cos(theta)| < gimbal_eps.
ForceTorqueCommand attitude_control(const quadsim::QuadState& state,
                                    const AttitudeCommand& desired,
                                    const quadsim::QuadParams& params,
                                    const ControlGains& gains);

}  // namespace windest::control
