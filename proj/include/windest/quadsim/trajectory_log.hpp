#pragma once

#include <string>
#include <vector>

#include "windest/io/csv.hpp"
#include "windest/vec3.hpp"

namespace windest::quadsim {

/// One logged sample: time, pose, and the true wind at the vehicle.
struct LogSample {
  double t = 0.0;  // s
  Vec3 position;   // m, NED
  Vec3 attitude;   // rad
  Vec3 wind;       // m/s, NED (ground truth)
};

/// Downsampled simulation record. `meta` carries provenance (config hash,
/// seed, wind descriptor) and is written as a comment line in the CSV.
struct TrajectoryLog {
  double log_dt = 0.1;  // s between samples
  std::vector<LogSample> samples;
  io::MetaList meta;

  static const std::vector<std::string>& columns();
  void save(const std::string& path) const;
  static TrajectoryLog load(const std::string& path);
};

}  // namespace windest::quadsim
