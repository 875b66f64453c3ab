#pragma once

#include "windest/control/gains.hpp"
#include "windest/quadsim/state.hpp"
#include "windest/vec3.hpp"

namespace windest::control {

/// Integral accumulators for the waypoint loop plus the held yaw reference.
struct WaypointControllerState {
  Vec3 integral;        // integral of (waypoint - position), m*s, clamped
  double psi_ref = 0.0;  // yaw held for the whole flight, rad
};

/// Desired attitude and vertical acceleration from the waypoint loop.
struct AttitudeCommand {
  double phi_d = 0.0;    // rad
  double theta_d = 0.0;  // rad
  double psi_d = 0.0;    // rad
  double accel_d = 0.0;  // commanded downward acceleration p_d'', m/s^2
};

/// Saturated PID waypoint controller. With error e = waypoint - position
/// (north, east, down) and its rate from the velocity state:
///   phi_d   = +sat(PID(e_east),  phi_max)   (roll east toward the target)
///   theta_d = -sat(PID(e_north), theta_max) (nose down toward a north target)
///   psi_d   = psi_ref
///   accel_d = -PID(e_down)
/// The sign pattern follows from the thrust projection (near hover
/// p''_e ~ +g phi, p''_n ~ -g theta, p''_d ~ -accel via the thrust formula).
/// Integrals advance by dt and are clamped to +-integral_limit.
AttitudeCommand waypoint_control(const quadsim::QuadState& state,
                                 const Vec3& waypoint,
                                 WaypointControllerState& ctrl,
                                 const ControlGains& gains, double dt);

}  // namespace windest::control
