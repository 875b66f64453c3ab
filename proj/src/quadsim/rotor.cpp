#include "windest/quadsim/rotor.hpp"

#include <algorithm>

namespace windest::quadsim {

ForceTorque mix_rotors(const std::array<double, 4>& w2,
                       const QuadParams& params) {
  const double k1 = params.thrust_coeff;
  const double k2 = params.torque_coeff;
  const double L = params.arm_length;
  ForceTorque out;
  out.force = k1 * (w2[0] + w2[1] + w2[2] + w2[3]);
  out.torque.x = L * k1 * (w2[3] - w2[1]);
  out.torque.y = L * k1 * (w2[0] - w2[2]);
  out.torque.z = k2 * (-w2[0] + w2[1] - w2[2] + w2[3]);
  return out;
}

Allocation allocate_rotors(double force, const Vec3& torque,
                           const QuadParams& params) {
  const double k1 = params.thrust_coeff;
  const double k2 = params.torque_coeff;
  const double L = params.arm_length;
  const double base = force / (4.0 * k1);
  const double roll = torque.x / (2.0 * L * k1);
  const double pitch = torque.y / (2.0 * L * k1);
  const double yaw = torque.z / (4.0 * k2);

  Allocation out;
  out.omega_squared = {base + pitch - yaw, base - roll + yaw,
                       base - pitch - yaw, base + roll + yaw};
  for (double& w2 : out.omega_squared) {
    if (w2 < 0.0) {
      w2 = 0.0;
      out.saturated = true;
    }
  }
  return out;
}

}  // namespace windest::quadsim
