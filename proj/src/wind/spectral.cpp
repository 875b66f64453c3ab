#include "windest/wind/spectral.hpp"

#include <cmath>

#include "windest/errors.hpp"
#include "windest/io/csv.hpp"
#include "windest/rng.hpp"

namespace windest::wind {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void SpectralParams::validate() const {
  if (!(sigma >= 0.0)) throw ConfigError("spectral wind: sigma must be >= 0");
  if (!(scale > 0.0)) throw ConfigError("spectral wind: scale length must be > 0");
  if (!(b > 0.0) || !(c > 0.0)) {
    throw ConfigError("spectral wind: shape constants b and c must be > 0");
  }
  if (bins < 1) throw ConfigError("spectral wind: bin count must be >= 1");
  if (!(omega_max > 0.0)) throw ConfigError("spectral wind: omega_max must be > 0");
  if (!(airspeed > 0.0)) throw ConfigError("spectral wind: airspeed must be > 0");
}

double dryden_spectrum(const SpectralParams& params, double omega) {
  const double lo = params.scale * omega;
  const double lo2 = lo * lo;
  return params.sigma * params.sigma * (2.0 * params.scale / M_PI) * (1.0 + params.a * lo2) /
         std::pow(1.0 + params.b * lo2, params.c);
}

double SpectralSignal::at_position(double x) const {
  double u = u0;
  for (std::size_t i = 0; i < amplitude.size(); ++i) {
    u += amplitude[i] * std::sin(wavenumber[i] * x + phase[i]);
  }
  return u;
}

double SpectralSignal::at_time(double t) const { return at_position(airspeed * t); }

double SpectralSignal::spatial_period() const {
  return wavenumber.empty() ? 0.0 : kTwoPi / wavenumber.front();
}

double SpectralSignal::analytic_variance() const {
  double v = 0.0;
  for (const double a : amplitude) v += 0.5 * a * a;
  return v;
}

SpectralSignal make_spectral_signal(const SpectralParams& params, double u0, std::uint64_t seed) {
  params.validate();
  Rng rng(derive_seed(seed, 0x51ec));
  SpectralSignal sig;
  sig.u0 = u0;
  sig.airspeed = params.airspeed;
  const int n = params.bins;
  const double domega = params.omega_max / n;
  sig.amplitude.reserve(n);
  sig.wavenumber.reserve(n);
  sig.phase.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const double omega = i * domega;
    sig.wavenumber.push_back(omega);
    sig.amplitude.push_back(std::sqrt(domega * dryden_spectrum(params, omega)));
    sig.phase.push_back(rng.uniform(0.0, kTwoPi));
  }
  return sig;
}

std::vector<double> synth_spectral_positions(const SpectralSignal& sig,
                                             const std::vector<double>& positions) {
  std::vector<double> out;
  out.reserve(positions.size());
  for (const double x : positions) out.push_back(sig.at_position(x));
  return out;
}

std::vector<double> synth_spectral_times(const SpectralSignal& sig,
                                         const std::vector<double>& times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (const double t : times) out.push_back(sig.at_time(t));
  return out;
}

SpectralWind::SpectralWind(const SpectralParams& params, const Vec3& mean_wind,
                           std::uint64_t seed)
    : signal_(make_spectral_signal(params, 0.0, seed)),
      mean_(mean_wind),
      seed_(seed),
      sigma_(params.sigma) {}

Vec3 SpectralWind::sample(const Vec3&, double t) {
  return mean_ + Vec3{signal_.at_time(t), 0.0, 0.0};
}

std::string SpectralWind::describe() const {
  std::string s = "spectral(sigma=" + io::format_double(sigma_);
  s += ";bins=" + std::to_string(signal_.amplitude.size());
  s += ";V=" + io::format_double(signal_.airspeed);
  s += ";mean=" + io::format_double(mean_.x) + "," + io::format_double(mean_.y) + "," +
       io::format_double(mean_.z);
  s += ";seed=" + std::to_string(seed_) + ")";
  return s;
}

}  // namespace windest::wind
