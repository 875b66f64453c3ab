#include "windest/quadsim/simulate.hpp"

#include <cmath>
#include <string>

#include "windest/control/attitude.hpp"
#include "windest/control/waypoint.hpp"
#include "windest/errors.hpp"
#include "windest/quadsim/aero.hpp"
#include "windest/quadsim/dynamics.hpp"
#include "windest/quadsim/rotor.hpp"

namespace windest::quadsim {

void QuadParams::validate() const {
  const bool ok = mass > 0 && inertia.x > 0 && inertia.y > 0 &&
                  inertia.z > 0 && arm_length > 0 && thrust_coeff > 0 &&
                  torque_coeff > 0 && flapping_coeff > 0 && gravity > 0 &&
                  hover_induced_velocity > 0;
  if (!ok) throw ConfigError("quad parameters must be strictly positive");
}

void MotorParams::validate() const {
  for (double c : a) {
    if (!(c > 0)) throw ConfigError("motor denominator coefficients must be positive");
  }
  if (!(b0 > 0)) throw ConfigError("motor b0 must be positive");
  if (!(pwm_max > pwm_min)) throw ConfigError("pwm_max must exceed pwm_min");
  if (!(omega_max > 0)) throw ConfigError("omega_max must be positive");
  if (kp < 0 || ki < 0 || kd < 0) throw ConfigError("motor PID gains must be non-negative");
}

void SimConfig::validate() const {
  if (!(dt > 0)) throw ConfigError("sim dt must be positive");
  if (!(duration > 0)) throw ConfigError("sim duration must be positive");
  if (!(log_rate > 0)) throw ConfigError("log_rate must be positive");
  const double steps = 1.0 / (log_rate * dt);
  if (std::abs(steps - std::round(steps)) > 1e-9 * steps || steps < 1.0) {
    throw ConfigError("log_rate must evenly divide the step rate 1/dt");
  }
  if (!(position_bound > 0 && velocity_bound > 0 && attitude_bound > 0 &&
        rate_bound > 0)) {
    throw ConfigError("divergence bounds must be positive");
  }
}

namespace {

std::string vec_token(const Vec3& v) {
  return io::format_double(v.x) + "," + io::format_double(v.y) + "," +
         io::format_double(v.z);
}

void check_bounds(const QuadState& s, const SimConfig& cfg, double t) {
  const bool ok = s.finite() && s.position.norm() < cfg.position_bound &&
                  s.velocity.norm() < cfg.velocity_bound &&
                  s.attitude.norm() < cfg.attitude_bound &&
                  s.angular_rate.norm() < cfg.rate_bound;
  if (!ok) {
    throw NumericalError("simulation diverged at t=" + std::to_string(t) +
                         " s");
  }
}

}  // namespace

TrajectoryLog simulate(const QuadParams& params, const MotorParams& motor,
                       const control::ControlGains& gains,
                       wind::WindField& wind_field, const SimConfig& config,
                       const io::MetaList& extra_meta) {
  params.validate();
  motor.validate();
  gains.validate();
  config.validate();

  QuadState state;
  state.position = config.initial_position;

  RotorSet rotors;
  if (config.start_at_hover) {
    // Per-rotor hover speed: 4 k1 w^2 = m g.
    const double w_h =
        std::sqrt(params.mass * params.gravity / (4.0 * params.thrust_coeff));
    for (auto& m : rotors.motors) m = steady_motor(w_h, motor);
  }

  control::WaypointControllerState ctrl;
  ctrl.psi_ref = state.attitude.z;

  const long steps_per_log = std::lround(1.0 / (config.log_rate * config.dt));
  const long n_steps = std::lround(config.duration / config.dt);

  TrajectoryLog log;
  log.log_dt = 1.0 / config.log_rate;
  log.samples.reserve(static_cast<std::size_t>(n_steps / steps_per_log) + 2);
  log.meta = {{"kind", "trajectory"},
              {"seed", std::to_string(config.seed)},
              {"wind", wind_field.describe()},
              {"waypoint", vec_token(config.waypoint)},
              {"dt", io::format_double(config.dt)},
              {"log_rate", io::format_double(config.log_rate)},
              {"integrator",
               config.integrator == Integrator::rk4 ? "rk4" : "euler"},
              {"start", config.start_at_hover ? "hover_trim" : "rest"}};
  for (const auto& kv : extra_meta) log.meta.push_back(kv);

  for (long k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const Vec3 wind = wind_field.sample(state.position, t);

    if (k % steps_per_log == 0) {
      log.samples.push_back({t, state.position, state.attitude, wind});
    }
    if (k == n_steps) break;

    // Outer loop commands.
    const control::AttitudeCommand att_cmd =
        waypoint_control(state, config.waypoint, ctrl, gains, config.dt);
    const control::ForceTorqueCommand ft =
        attitude_control(state, att_cmd, params, gains);
    const Allocation alloc = allocate_rotors(ft.force, ft.torque, params);

    // Motor dynamics track the allocated speeds.
    for (int i = 0; i < 4; ++i) {
      rotors.motors[i] =
          motor_step(rotors.motors[i], std::sqrt(alloc.omega_squared[i]),
                     config.dt, motor, config.integrator);
    }

    // Rotor aerodynamics at the realized speeds. The induced-velocity
    // factor and flapping direction depend only on the shared body
    // airspeed, so they are computed once for all four rotors.
    const Mat3 R = rotation_body_to_inertial(state.attitude);
    const Vec3 airspeed_body = R.transposed_mul(wind - state.velocity);
    const ForceTorque mixed = mix_rotors(rotors.omega_squared(), params);
    const double thrust_corrected =
        corrected_thrust(mixed.force, airspeed_body, params.hover_induced_velocity);
    const Vec3 thrust_body =
        blade_flapping(thrust_corrected, airspeed_body.x, airspeed_body.y,
                       params.flapping_coeff);

    state = quad_step(state, thrust_body, mixed.torque, wind, params,
                      config.dt, config.integrator);
    check_bounds(state, config, t + config.dt);
  }
  return log;
}

}  // namespace windest::quadsim
