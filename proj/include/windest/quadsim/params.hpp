#pragma once

#include <array>

#include "windest/vec3.hpp"

namespace windest::quadsim {

/// Rigid-body and rotor-aero parameters. Defaults describe the simulated
/// 1.5 kg quadcopter used throughout; all strictly positive.
struct QuadParams {
  double mass = 1.5;                      // kg
  Vec3 inertia = {0.0348, 0.0459, 0.0977};  // Jx, Jy, Jz, kg m^2 (diagonal)
  double arm_length = 0.235;              // m, rotor arm L
  double thrust_coeff = 5e-5;             // k1, N s^2 (thrust = k1 w^2)
  double torque_coeff = 5e-5;             // k2, N m s^2 (yaw torque per w^2)
  double flapping_coeff = 0.003;          // K_f, rad s/m
  double gravity = 9.81;                  // m/s^2
  // Hover induced velocity, m/s: momentum theory sqrt(T_h / (2 rho A)) at
  // per-rotor hover thrust mg/4 = 3.679 N, rho = 1.225 kg/m^3, R = 0.12 m.
  double hover_induced_velocity = 5.76;

  void validate() const;  // throws ConfigError on non-positive entries
};

/// Third-order motor plant with an internal PID loop on rate error.
/// Plant: H(s) = b0 / (a3 s^3 + a2 s^2 + a1 s + a0), PWM in, rad/s out.
struct MotorParams {
  std::array<double, 4> a = {1.0, 189.5, 13412.0, 142834.0};  // a3, a2, a1, a0
  double b0 = 2057342.0;
  double pwm_min = 1000.0;  // us
  double pwm_max = 2000.0;  // us
  double omega_max = 1000.0;  // rad/s reached at pwm_max in steady state
  // PID gains in us per (rad/s); chosen by a scripted step-response tuning
  // run: rest-to-hover step settles into the +-2% band in 0.07 s with 4.3%
  // overshoot, and small steps around hover settle in under 0.03 s.
  double kp = 6.0;
  double ki = 40.0;
  double kd = 0.05;

  double dc_gain() const { return b0 / a[3]; }
  /// Plant input at pwm_max: steady-state output omega_max.
  double input_span() const { return omega_max / dc_gain(); }

  void validate() const;
};

}  // namespace windest::quadsim
