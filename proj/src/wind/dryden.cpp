#include "windest/wind/dryden.hpp"

#include <cmath>
#include <stdexcept>

#include "windest/errors.hpp"
#include "windest/io/csv.hpp"

namespace windest::wind {

void DrydenParams::validate() const {
  if (!(sigma.x >= 0.0) || !(sigma.y >= 0.0) || !(sigma.z >= 0.0)) {
    throw ConfigError("dryden: turbulence intensities must be >= 0");
  }
  if (!(scale.x > 0.0) || !(scale.y > 0.0) || !(scale.z > 0.0)) {
    throw ConfigError("dryden: scale lengths must be > 0");
  }
  if (!(airspeed > 0.0)) {
    throw ConfigError("dryden: nominal airspeed must be > 0");
  }
  if (!(update_dt > 0.0)) {
    throw ConfigError("dryden: update interval must be > 0");
  }
}

TustinFirstOrder::TustinFirstOrder(double gain, double pole, double dt) {
  const double c = 2.0 / dt;
  b0 = gain / (c + pole);
  a1 = (pole - c) / (c + pole);
}

double TustinFirstOrder::step(double x) {
  const double y = b0 * (x + x1) - a1 * y1;
  x1 = x;
  y1 = y;
  return y;
}

TustinSecondOrder::TustinSecondOrder(double gain, double zero, double pole, double dt) {
  const double c = 2.0 / dt;
  const double d0 = (c + pole) * (c + pole);
  b0 = gain * (c + zero) / d0;
  b1 = 2.0 * gain * zero / d0;
  b2 = gain * (zero - c) / d0;
  a1 = 2.0 * (pole - c) / (c + pole);
  a2 = ((pole - c) * (pole - c)) / d0;
}

double TustinSecondOrder::step(double x) {
  const double y = b0 * x + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
  x2 = x1;
  x1 = x;
  y2 = y1;
  y1 = y;
  return y;
}

DrydenFilter::DrydenFilter(const DrydenParams& params) : params_(params) {
  params_.validate();
  const double v = params_.airspeed;
  const double dt = params_.update_dt;
  noise_scale_ = 1.0 / std::sqrt(dt);
  u_ = TustinFirstOrder(params_.sigma.x * std::sqrt(2.0 * v / params_.scale.x),
                        v / params_.scale.x, dt);
  v_ = TustinSecondOrder(params_.sigma.y * std::sqrt(3.0 * v / params_.scale.y),
                         v / (std::sqrt(3.0) * params_.scale.y), v / params_.scale.y, dt);
  w_ = TustinSecondOrder(params_.sigma.z * std::sqrt(3.0 * v / params_.scale.z),
                         v / (std::sqrt(3.0) * params_.scale.z), v / params_.scale.z, dt);
}

Vec3 DrydenFilter::step(const Vec3& noise) {
  return {u_.step(noise.x * noise_scale_), v_.step(noise.y * noise_scale_),
          w_.step(noise.z * noise_scale_)};
}

DrydenWind::DrydenWind(const DrydenParams& params, const Vec3& mean_wind, std::uint64_t seed)
    : filter_(params), mean_(mean_wind), seed_(seed), rng_(derive_seed(seed, 0x8f1d)) {
  // Run the filters past their start-up transient (several correlation
  // lengths of the slowest component) so t = 0 already sees stationary
  // statistics.
  const DrydenParams& p = filter_.params();
  const double tau = std::max(p.scale.x, std::max(p.scale.y, p.scale.z)) / p.airspeed;
  const long long warm = static_cast<long long>(std::ceil(5.0 * tau / p.update_dt));
  for (long long i = 0; i < warm; ++i) {
    filter_.step({rng_.normal(), rng_.normal(), rng_.normal()});
  }
  current_ = filter_.step({rng_.normal(), rng_.normal(), rng_.normal()});
  steps_done_ = 1;  // current_ is the value on [0, update_dt)
}

Vec3 DrydenWind::sample(const Vec3&, double t) {
  if (t < last_t_ - 1e-12) {
    throw std::logic_error("DrydenWind::sample: time must be non-decreasing");
  }
  last_t_ = t;
  const double dt = filter_.params().update_dt;
  const long long want = static_cast<long long>(std::floor(t / dt + 1e-9)) + 1;
  while (steps_done_ < want) {
    current_ = filter_.step({rng_.normal(), rng_.normal(), rng_.normal()});
    ++steps_done_;
  }
  return mean_ + current_;
}

std::string DrydenWind::describe() const {
  const DrydenParams& p = filter_.params();
  std::string s = "dryden(sigma=";
  s += io::format_double(p.sigma.x) + "," + io::format_double(p.sigma.y) + "," +
       io::format_double(p.sigma.z);
  s += ";L=" + io::format_double(p.scale.x) + "," + io::format_double(p.scale.y) + "," +
       io::format_double(p.scale.z);
  s += ";V=" + io::format_double(p.airspeed);
  s += ";dt=" + io::format_double(p.update_dt);
  s += ";mean=" + io::format_double(mean_.x) + "," + io::format_double(mean_.y) + "," +
       io::format_double(mean_.z);
  s += ";seed=" + std::to_string(seed_) + ")";
  return s;
}

}  // namespace windest::wind
