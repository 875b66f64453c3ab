#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "windest/control/gains.hpp"
#include "windest/estimate/train.hpp"
#include "windest/quadsim/params.hpp"
#include "windest/quadsim/simulate.hpp"
#include "windest/vec3.hpp"
#include "windest/wind/dryden.hpp"
#include "windest/wind/piecewise.hpp"
#include "windest/wind/spectral.hpp"
#include "windest/wind/wind_field.hpp"

namespace windest::cli {

/// Wind-field selection plus the parameters of every supported kind; only
/// the block matching `kind` is consulted when the field is built.
struct WindSpec {
  std::string kind = "dryden";  ///< none|constant|dryden|piecewise|spectral|grid
  std::uint64_t seed = 1;
  Vec3 mean{1.0, 2.0, 0.0};          ///< added to dryden/spectral fluctuations
  Vec3 constant_wind{2.0, -1.0, 0.0};  ///< kind "constant" only
  wind::DrydenParams dryden;
  wind::PiecewiseParams piecewise;
  wind::SpectralParams spectral;
  std::string grid_file;  ///< WINDGRID binary path, kind "grid" only
};

struct TrajectorySpec {
  std::string kind = "hover";  ///< hover|line
  Vec3 hover_waypoint{0.0, 0.0, -10.0};
  Vec3 line_waypoint{5000.0, 0.0, -10.0};

  /// Waypoint selected by `kind`.
  Vec3 waypoint() const;
};

/// Windowing parameters for dataset construction.
struct DatasetSpec {
  int seq_len = 10;
  int stride = 5;
  double val_fraction = 0.10;
  std::uint64_t seed = 0;
};

/// Durations and seeds used by the one-shot `repro` pipelines: a training
/// flight in piecewise-constant wind followed by an evaluation flight in the
/// case's wind field with a fresh seed.
struct ReproSpec {
  double train_duration = 4800.0;
  double eval_duration = 5000.0;
  std::uint64_t train_seed = 101;
  std::uint64_t eval_seed = 202;
};

/// Whole-pipeline configuration. Every default matches the values the models
/// and controllers were designed around, so an empty config file (or none at
/// all) runs the reference setup. The sim waypoint is not part of the file
/// format: commands derive it from `trajectory` before running.
struct RunConfig {
  quadsim::QuadParams quad;
  quadsim::MotorParams motor;
  control::ControlGains control;
  WindSpec wind;
  TrajectorySpec trajectory;
  quadsim::SimConfig sim;
  DatasetSpec dataset;
  estimate::TrainConfig train;
  ReproSpec repro;

  /// Cross-checks every section (delegating to the member validate()s) plus
  /// the enumerated kinds; throws ConfigError on the first violation.
  void validate() const;

  /// Single-line JSON with sorted keys — the canonical form that gets hashed
  /// into provenance lines.
  std::string canonical_json() const;

  /// Indented JSON of every field; the shipped template format.
  std::string pretty_json() const;

  /// 16-hex-digit FNV-1a of canonical_json(). Stamped on every artifact so
  /// outputs can be traced back to the exact configuration that made them.
  std::string config_hash() const;

  /// Parses a JSON config file. Absent keys keep their defaults; unknown
  /// keys are rejected with their dotted path (e.g. "train.adam.foo").
  /// Throws ConfigError on unknown or mistyped keys and invalid values,
  /// FormatError when the file is not valid JSON.
  static RunConfig load(const std::string& path);
};

/// Instantiates the configured wind field (loading the grid file for kind
/// "grid"). Seeded fields use spec.seed.
std::unique_ptr<wind::WindField> make_wind_field(const WindSpec& spec);

}  // namespace windest::cli
