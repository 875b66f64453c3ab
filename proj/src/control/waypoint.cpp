#include "windest/control/waypoint.hpp"

#include "windest/errors.hpp"

namespace windest::control {

void ControlGains::validate() const {
  const bool gains_ok = kp >= 0 && kd >= 0 && ki >= 0 && K1 >= 0 && K2 >= 0 &&
                        K3 >= 0 && Kp1 >= 0 && Kp2 >= 0 && Kp3 >= 0 &&
                        Kd1 >= 0 && Kd2 >= 0 && Kd3 >= 0;
  if (!gains_ok) throw ConfigError("control gains must be non-negative");
  const double half_pi = 1.5707963267948966;
  if (!(phi_max > 0 && phi_max < half_pi && theta_max > 0 &&
        theta_max < half_pi)) {
    throw ConfigError("angle limits must lie in (0, pi/2)");
  }
  if (!(integral_limit > 0) || !(gimbal_eps > 0)) {
    throw ConfigError("integral_limit and gimbal_eps must be positive");
  }
}

AttitudeCommand waypoint_control(const quadsim::QuadState& state,
                                 const Vec3& waypoint,
                                 WaypointControllerState& ctrl,
                                 const ControlGains& gains, double dt) {
  const Vec3 e = waypoint - state.position;
  const Vec3 edot = -state.velocity;  // waypoint is fixed

  ctrl.integral += e * dt;
  ctrl.integral.x = sat(ctrl.integral.x, gains.integral_limit);
  ctrl.integral.y = sat(ctrl.integral.y, gains.integral_limit);
  ctrl.integral.z = sat(ctrl.integral.z, gains.integral_limit);

  auto pid = [&](double err, double errdot, double integ) {
    return gains.kp * err + gains.kd * errdot + gains.ki * integ;
  };

  AttitudeCommand cmd;
  cmd.phi_d = sat(pid(e.y, edot.y, ctrl.integral.y), gains.phi_max);
  cmd.theta_d = -sat(pid(e.x, edot.x, ctrl.integral.x), gains.theta_max);
  cmd.psi_d = ctrl.psi_ref;
  cmd.accel_d = -pid(e.z, edot.z, ctrl.integral.z);
  return cmd;
}

}  // namespace windest::control
