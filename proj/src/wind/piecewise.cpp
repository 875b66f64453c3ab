#include "windest/wind/piecewise.hpp"

#include <algorithm>

#include "windest/errors.hpp"
#include "windest/io/csv.hpp"
#include "windest/rng.hpp"

namespace windest::wind {

void PiecewiseParams::validate() const {
  if (!(amp_max >= amp_min)) {
    throw ConfigError("piecewise wind: amplitude range must satisfy max >= min");
  }
  if (!(interval_min >= 0.0) || !(interval_max > interval_min)) {
    throw ConfigError("piecewise wind: interval range must satisfy 0 <= min < max");
  }
  if (!(duration > 0.0)) {
    throw ConfigError("piecewise wind: duration must be > 0");
  }
}

PiecewiseConstantWind::PiecewiseConstantWind(const PiecewiseParams& params, std::uint64_t seed)
    : params_(params), seed_(seed) {
  params_.validate();
  Rng rng(derive_seed(seed, 0x9c3a));
  double t = 0.0;
  while (t < params_.duration) {
    start_.push_back(t);
    value_.push_back({rng.uniform(params_.amp_min, params_.amp_max),
                      rng.uniform(params_.amp_min, params_.amp_max), 0.0});
    // Segment length drawn from (interval_min, interval_max]: uniform01()
    // lies in [0, 1), so the length is strictly positive even when the
    // lower bound is zero.
    t += params_.interval_max - (params_.interval_max - params_.interval_min) * rng.uniform01();
  }
}

Vec3 PiecewiseConstantWind::sample(const Vec3&, double t) {
  if (cursor_ >= start_.size()) cursor_ = 0;
  // Fast path: monotone queries usually stay in the current segment or move
  // to the next one; otherwise fall back to binary search.
  if (t >= start_[cursor_]) {
    while (cursor_ + 1 < start_.size() && t >= start_[cursor_ + 1]) ++cursor_;
  } else {
    const auto it = std::upper_bound(start_.begin(), start_.end(), t);
    cursor_ = (it == start_.begin()) ? 0 : static_cast<std::size_t>(it - start_.begin()) - 1;
  }
  return value_[cursor_];
}

std::string PiecewiseConstantWind::describe() const {
  std::string s = "piecewise(amp=";
  s += io::format_double(params_.amp_min) + "," + io::format_double(params_.amp_max);
  s += ";interval=" + io::format_double(params_.interval_min) + "," +
       io::format_double(params_.interval_max);
  s += ";duration=" + io::format_double(params_.duration);
  s += ";seed=" + std::to_string(seed_) + ")";
  return s;
}

}  // namespace windest::wind
