#include "windest/control/attitude.hpp"

#include <cmath>

#include "windest/errors.hpp"

namespace windest::control {

ForceTorqueCommand attitude_control(const quadsim::QuadState& state,
                                    const AttitudeCommand& desired,
                                    const quadsim::QuadParams& params,
                                    const ControlGains& gains) {
  const double cc =
      std::cos(state.attitude.x) * std::cos(state.attitude.y);
  if (std::abs(cc) < gains.gimbal_eps) {
    throw NumericalError("attitude_control: thrust axis near gimbal lock");
  }

  const double jx = params.inertia.x, jy = params.inertia.y,
               jz = params.inertia.z;
  const Vec3& w = state.angular_rate;
  const Vec3 e = {desired.phi_d - state.attitude.x,
                  desired.theta_d - state.attitude.y,
                  desired.psi_d - state.attitude.z};

  ForceTorqueCommand cmd;
  cmd.force = params.mass * (params.gravity + desired.accel_d) / cc;
  cmd.torque.x = jx * (-gains.K1 * w.x - (jy - jz) / jx * w.y * w.z) +
                 gains.Kp1 * e.x + gains.Kd1 * -w.x;
  cmd.torque.y = jy * (-gains.K2 * w.y - (jz - jx) / jy * w.x * w.z) +
                 gains.Kp2 * e.y + gains.Kd2 * -w.y;
  cmd.torque.z = jz * (-gains.K3 * w.z - (jx - jy) / jz * w.x * w.y) +
                 gains.Kp3 * e.z + gains.Kd3 * -w.z;
  return cmd;
}

}  // namespace windest::control
