#pragma once

#include <cstdint>

#include "windest/control/gains.hpp"
#include "windest/quadsim/motor.hpp"
#include "windest/quadsim/params.hpp"
#include "windest/quadsim/trajectory_log.hpp"
#include "windest/vec3.hpp"
#include "windest/wind/wind_field.hpp"

namespace windest::quadsim {

struct SimConfig {
  Vec3 waypoint = {0.0, 0.0, -10.0};  // m, NED
  double duration = 60.0;             // s
  double dt = 0.001;                  // s
  double log_rate = 10.0;             // Hz; 1/(log_rate*dt) must be integral
  Integrator integrator = Integrator::rk4;
  // Trimmed start: begin at initial_position with motors spun to hover and
  // the plant at its closed-loop fixed point. Otherwise motors start at rest.
  bool start_at_hover = true;
  Vec3 initial_position = {0.0, 0.0, -10.0};
  std::uint64_t seed = 0;  // recorded in provenance; wind noise is seeded
                           // upstream when the field is built
  // Divergence guard: abort when any state magnitude exceeds its bound.
  double position_bound = 1e6;   // m
  double velocity_bound = 1e4;   // m/s
  double attitude_bound = 1e3;   // rad
  double rate_bound = 1e4;       // rad/s

  void validate() const;
};

/// Closed-loop flight: waypoint controller -> attitude controller ->
/// rotor allocation -> motor dynamics -> rotor aerodynamics -> rigid body,
/// every step, with the wind field sampled once per step at the vehicle.
/// Deterministic for a fixed (config, wind field) pair. Throws
/// NumericalError with the failure time on divergence.
TrajectoryLog simulate(const QuadParams& params, const MotorParams& motor,
                       const control::ControlGains& gains,
                       wind::WindField& wind_field, const SimConfig& config,
                       const io::MetaList& extra_meta = {});

}  // namespace windest::quadsim
