#pragma once

#include <array>

#include "windest/quadsim/params.hpp"

namespace windest::quadsim {

enum class Integrator { rk4, euler };

/// One motor: canonical state-space realization of the third-order plant
/// plus the PID loop's accumulators. angular_rate is the plant output,
/// clamped at zero (a rotor does not spin backwards).
struct MotorState {
  std::array<double, 3> filter_state = {0.0, 0.0, 0.0};
  double integral = 0.0;    // PID integral of rate error, (rad/s)*s
  double prev_error = 0.0;  // rate error at the previous step, rad/s
  double angular_rate = 0.0;  // rad/s
};

/// Advances one motor by dt: PID on rate error -> PWM (clamped to the
/// configured range) -> linear plant integrated with the same fixed step.
/// Throws ConfigError on non-positive dt.
MotorState motor_step(const MotorState& motor, double desired_rate, double dt,
                      const MotorParams& params,
                      Integrator method = Integrator::rk4);

/// Motor state at the exact closed-loop fixed point for a steady rate:
/// motor_step with desired_rate == rate leaves it unchanged.
MotorState steady_motor(double rate, const MotorParams& params);

}  // namespace windest::quadsim
