#pragma once

#include <cstdint>
#include <string>

#include "windest/rng.hpp"
#include "windest/vec3.hpp"
#include "windest/wind/wind_field.hpp"

namespace windest::wind {

/// Dryden turbulence filter parameters.
///
/// Each velocity component is modelled as unit-variance white noise shaped by
/// a rational forming filter:
///
///   longitudinal:  H_u(s) = sigma_u sqrt(2 V / L_u) / (s + V/L_u)
///   transverse:    H_v(s) = sigma_v sqrt(3 V / L_v) (s + V/(sqrt(3) L_v))
///                           / (s + V/L_v)^2          (same form for w)
///
/// where V is the nominal airspeed. Driven by discrete standard-normal draws
/// scaled by 1/sqrt(dt), the long-run variance of each output equals sigma^2
/// for that component.
struct DrydenParams {
  Vec3 sigma{1.06, 1.06, 0.7};     ///< turbulence intensities (m/s), NED order
  Vec3 scale{67.38, 67.38, 10.0};  ///< turbulence scale lengths (m)
  double airspeed = 5.0;           ///< nominal airspeed V (m/s)
  double update_dt = 0.001;        ///< filter update interval (s)

  /// Throws ConfigError unless sigma >= 0, scale > 0, airspeed > 0, dt > 0.
  void validate() const;
};

/// First-order section discretized with the bilinear (Tustin) transform.
///   H(s) = K / (s + p)   ->   y_k = b0 (x_k + x_{k-1}) - a1 y_{k-1}
struct TustinFirstOrder {
  double b0 = 0.0;
  double a1 = 0.0;
  double x1 = 0.0;  ///< previous input
  double y1 = 0.0;  ///< previous output

  TustinFirstOrder() = default;
  /// Coefficients for H(s) = gain / (s + pole) sampled at interval dt.
  TustinFirstOrder(double gain, double pole, double dt);
  double step(double x);
};

/// Second-order section with one zero, discretized with the Tustin transform.
///   H(s) = G (s + z0) / (s + p)^2
struct TustinSecondOrder {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double x1 = 0.0, x2 = 0.0;
  double y1 = 0.0, y2 = 0.0;

  TustinSecondOrder() = default;
  /// Coefficients for H(s) = gain (s + zero) / (s + pole)^2 at interval dt.
  TustinSecondOrder(double gain, double zero, double pole, double dt);
  double step(double x);
};

/// The three shaping filters for one turbulence realization.
/// step() consumes exactly three standard-normal draws per update; passing
/// the draws explicitly keeps the filter deterministic and directly testable.
class DrydenFilter {
 public:
  explicit DrydenFilter(const DrydenParams& params);

  /// Advances all three filters one update interval. `noise` holds three
  /// independent standard-normal draws (longitudinal, lateral, vertical).
  /// Returns the turbulent velocity fluctuation (m/s).
  Vec3 step(const Vec3& noise);

  const DrydenParams& params() const { return params_; }

 private:
  DrydenParams params_;
  double noise_scale_ = 0.0;  ///< 1/sqrt(dt): white-noise intensity correction
  TustinFirstOrder u_;
  TustinSecondOrder v_;
  TustinSecondOrder w_;
};

/// Turbulent wind field: mean wind plus Dryden fluctuations updated at a
/// fixed interval (zero-order hold between updates). sample() must be called
/// with non-decreasing t. The filters are pre-warmed past their transient at
/// construction so output statistics are stationary from t = 0.
class DrydenWind final : public WindField {
 public:
  DrydenWind(const DrydenParams& params, const Vec3& mean_wind, std::uint64_t seed);

  Vec3 sample(const Vec3& position, double t) override;
  std::string describe() const override;

 private:
  DrydenFilter filter_;
  Vec3 mean_;
  std::uint64_t seed_ = 0;
  Rng rng_;
  long long steps_done_ = 0;  ///< updates applied so far; t covered = steps*dt
  Vec3 current_{};
  double last_t_ = 0.0;
};

}  // namespace windest::wind
