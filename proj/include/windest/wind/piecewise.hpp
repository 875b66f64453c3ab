#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windest/vec3.hpp"
#include "windest/wind/wind_field.hpp"

namespace windest::wind {

/// Parameters for the random piecewise-constant wind signal: each segment
/// holds an independent uniform draw for the two horizontal components
/// (vertical is zero) over a random duration.
struct PiecewiseParams {
  double amp_min = -7.0;   ///< horizontal amplitude lower bound (m/s)
  double amp_max = 7.0;    ///< horizontal amplitude upper bound (m/s)
  double interval_min = 0.0;   ///< segment length lower bound (s), exclusive
  double interval_max = 15.0;  ///< segment length upper bound (s), inclusive
  double duration = 600.0;     ///< total signal length to generate (s)

  /// Throws ConfigError unless amp_max >= amp_min,
  /// 0 <= interval_min < interval_max, duration > 0.
  void validate() const;
};

/// Random piecewise-constant wind. Segments are drawn up-front from the
/// seed so sampling is deterministic and may use any time order. Queries
/// past the generated duration hold the final segment; queries before t=0
/// use the first.
class PiecewiseConstantWind final : public WindField {
 public:
  PiecewiseConstantWind(const PiecewiseParams& params, std::uint64_t seed);

  Vec3 sample(const Vec3& position, double t) override;
  std::string describe() const override;

  /// Segment boundaries: segment i covers [start_[i], start_[i+1]).
  const std::vector<double>& segment_starts() const { return start_; }
  const std::vector<Vec3>& segment_values() const { return value_; }

 private:
  PiecewiseParams params_;
  std::uint64_t seed_ = 0;
  std::vector<double> start_;  ///< ascending; start_[0] == 0
  std::vector<Vec3> value_;    ///< one per segment
  std::size_t cursor_ = 0;     ///< last segment hit, for O(1) monotone access
};

}  // namespace windest::wind
