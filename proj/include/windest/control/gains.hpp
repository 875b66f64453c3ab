#pragma once

namespace windest::control {

/// Waypoint-navigation PID and attitude PD gains. Defaults are the
/// hand-tuned set used for every run in this project.
struct ControlGains {
  // Position loop (shared by all three axes).
  double kp = 0.3;
  double kd = 0.25;
  double ki = 0.0002;
  // Attitude loop: rate damping K, angle PD (Kp, Kd) per axis.
  double K1 = 21.93, K2 = 21.93, K3 = 48.0;
  double Kp1 = 4.65, Kp2 = 4.65, Kp3 = 3.77;
  double Kd1 = 0.1872, Kd2 = 0.1872, Kd3 = 0.1496;
  // Commanded-angle limits, rad.
  double phi_max = 0.8;
  double theta_max = 0.8;
  // Anti-windup clamp on each position-error integral, m*s.
  double integral_limit = 50.0;
  // Guard for the 1/(cos(phi) cos(theta)) thrust term.
  double gimbal_eps = 1e-3;

  void validate() const;  // throws ConfigError
};

/// Saturation: clamp x to [-x_max, x_max].
inline double sat(double x, double x_max) {
  if (x > x_max) return x_max;
  if (x < -x_max) return -x_max;
  return x;
}

}  // namespace windest::control
