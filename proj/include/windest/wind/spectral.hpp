#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windest/vec3.hpp"
#include "windest/wind/wind_field.hpp"

namespace windest::wind {

/// Parameters for spectral turbulence synthesis of a single (longitudinal)
/// velocity component from a rational energy spectrum
///
///   Phi(Omega) = sigma^2 (2L/pi) (1 + a (L Omega)^2) / (1 + b (L Omega)^2)^c
///
/// sampled at N harmonic wavenumber bins Omega_i = i * (omega_max / N),
/// i = 1..N, so the synthesized signal is exactly periodic in space with
/// period 2*pi*N/omega_max.
struct SpectralParams {
  double sigma = 1.06;     ///< turbulence intensity (m/s)
  double scale = 67.38;    ///< scale length L (m)
  double a = 0.0;          ///< spectrum shape constant (numerator)
  double b = 1.0;          ///< spectrum shape constant (denominator)
  double c = 1.0;          ///< spectrum shape exponent
  int bins = 200;          ///< number of wavenumber bins N
  double omega_max = 0.5;  ///< highest wavenumber (rad/m)
  double airspeed = 5.0;   ///< V for the temporal mapping omega_i = Omega_i * V

  /// Throws ConfigError unless sigma >= 0, scale > 0, b > 0, c > 0,
  /// bins >= 1, omega_max > 0, airspeed > 0.
  void validate() const;
};

/// Energy spectral density Phi(Omega) for the parameters above (m^2/s^2 per
/// rad/m). Omega is a spatial wavenumber (rad/m), Omega >= 0.
double dryden_spectrum(const SpectralParams& params, double omega);

/// A synthesized sum-of-sinusoids realization:
///   u(x) = u0 + sum_i amplitude_i * sin(wavenumber_i * x + phase_i)
/// with amplitude_i = sqrt(dOmega * Phi(Omega_i)) and i.i.d. uniform phases.
/// The temporal variant evaluates the frozen field advected at `airspeed`:
/// u(t) uses angular frequency wavenumber_i * airspeed.
struct SpectralSignal {
  double u0 = 0.0;
  double airspeed = 0.0;
  std::vector<double> amplitude;   ///< a_i (m/s)
  std::vector<double> wavenumber;  ///< Omega_i (rad/m), harmonic grid
  std::vector<double> phase;       ///< phi_i (rad)

  double at_position(double x) const;
  double at_time(double t) const;
  /// Spatial period 2*pi/dOmega (s period at_time: this / airspeed).
  double spatial_period() const;
  /// Exact variance of the sinusoid sum: sum a_i^2 / 2.
  double analytic_variance() const;
};

/// Builds a realization with phases drawn from the seed.
SpectralSignal make_spectral_signal(const SpectralParams& params, double u0, std::uint64_t seed);

/// Convenience evaluators used by tests and the signal generator.
std::vector<double> synth_spectral_positions(const SpectralSignal& sig,
                                             const std::vector<double>& positions);
std::vector<double> synth_spectral_times(const SpectralSignal& sig,
                                         const std::vector<double>& times);

/// Wind field: mean wind plus the synthesized component applied to the north
/// axis as a function of time (frozen field advected at the nominal
/// airspeed). Stateless after construction; safe to share.
class SpectralWind final : public WindField {
 public:
  SpectralWind(const SpectralParams& params, const Vec3& mean_wind, std::uint64_t seed);

  Vec3 sample(const Vec3& position, double t) override;
  std::string describe() const override;

 private:
  SpectralSignal signal_;
  Vec3 mean_;
  std::uint64_t seed_ = 0;
  double sigma_ = 0.0;
};

}  // namespace windest::wind
