#include "windest/quadsim/motor.hpp"

#include <algorithm>
#include <cmath>

#include "windest/errors.hpp"

namespace windest::quadsim {

namespace {

using FilterState = std::array<double, 3>;

// Controllable-canonical realization: y = b0 x1,
// x1' = x2, x2' = x3, x3' = (u - a0 x1 - a1 x2 - a2 x3) / a3.
FilterState plant_deriv(const FilterState& x, double u, const MotorParams& p) {
  const double a3 = p.a[0], a2 = p.a[1], a1 = p.a[2], a0 = p.a[3];
  return {x[1], x[2], (u - a0 * x[0] - a1 * x[1] - a2 * x[2]) / a3};
}

FilterState axpy(const FilterState& x, double s, const FilterState& d) {
  return {x[0] + s * d[0], x[1] + s * d[1], x[2] + s * d[2]};
}

}  // namespace

MotorState motor_step(const MotorState& motor, double desired_rate, double dt,
                      const MotorParams& params, Integrator method) {
  if (!(dt > 0.0)) throw ConfigError("motor_step: dt must be positive");
  desired_rate = std::max(0.0, desired_rate);

  MotorState next = motor;
  const double span = params.pwm_max - params.pwm_min;

  // PID on rate error, output in PWM microseconds above pwm_min.
  const double e = desired_rate - motor.angular_rate;
  next.integral += e * dt;
  if (params.ki > 0.0) {
    // Anti-windup: the integral alone never demands more than full throttle.
    next.integral = std::clamp(next.integral, 0.0, span / params.ki);
  }
  const double de = (e - motor.prev_error) / dt;
  next.prev_error = e;
  double pwm = params.pwm_min + params.kp * e + params.ki * next.integral +
               params.kd * de;
  pwm = std::clamp(pwm, params.pwm_min, params.pwm_max);

  // Linear mapping PWM -> plant input; pwm_max drives omega_max steady-state.
  const double u = (pwm - params.pwm_min) / span * params.input_span();

  const FilterState& x = motor.filter_state;
  if (method == Integrator::euler) {
    next.filter_state = axpy(x, dt, plant_deriv(x, u, params));
  } else {
    const FilterState k1 = plant_deriv(x, u, params);
    const FilterState k2 = plant_deriv(axpy(x, 0.5 * dt, k1), u, params);
    const FilterState k3 = plant_deriv(axpy(x, 0.5 * dt, k2), u, params);
    const FilterState k4 = plant_deriv(axpy(x, dt, k3), u, params);
    FilterState sum = axpy(k1, 2.0, k2);
    sum = axpy(sum, 2.0, k3);
    sum = axpy(sum, 1.0, k4);
    next.filter_state = axpy(x, dt / 6.0, sum);
  }
  next.angular_rate = std::max(0.0, params.b0 * next.filter_state[0]);
  return next;
}

MotorState steady_motor(double rate, const MotorParams& params) {
  MotorState m;
  m.filter_state = {rate / params.b0, 0.0, 0.0};
  m.angular_rate = rate;
  m.prev_error = 0.0;
  // Integral alone holds the steady PWM (error is zero at the fixed point).
  const double span = params.pwm_max - params.pwm_min;
  const double pwm_frac = rate / params.omega_max;
  m.integral = params.ki > 0.0 ? span * pwm_frac / params.ki : 0.0;
  return m;
}

}  // namespace windest::quadsim
