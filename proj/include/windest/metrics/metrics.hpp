#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "windest/estimate/wind_estimate.hpp"
#include "windest/io/csv.hpp"

namespace windest::metrics {

/// Error convention throughout: eps = true - est, per component.
struct ComponentMetrics {
  double mae_norm = 0.0;     ///< mean|eps| / sigma_true (unnormalized if sigma_zero)
  double std_norm = 0.0;     ///< sigma_eps / sigma_true (unnormalized if sigma_zero)
  double mean_error = 0.0;   ///< mean eps, m/s
  double sigma_true = 0.0;   ///< sample std of the true component
  bool sigma_zero = false;   ///< true component had zero variance; *_norm raw
};

struct MetricsReport {
  ComponentMetrics north, east;
  double cov_distance = 0.0;   ///< sqrt(sum ln^2 lambda_i), true-vs-est covariance
  bool cov_defined = true;     ///< false when either covariance is singular (distance skipped)
  double true_offdiag = 0.0;   ///< north/east covariance cross term, true wind
  double est_offdiag = 0.0;    ///< same cross term, estimated wind
  double dir_mean_error = 0.0;      ///< rad, mean of quadrant-safe angle errors
  double dir_error_variance = 0.0;  ///< rad^2
  double speed_mean_error = 0.0;      ///< m/s, mean(|true| - |est|)
  double speed_error_variance = 0.0;  ///< (m/s)^2
  std::size_t samples = 0;            ///< samples entering the metrics
  std::size_t direction_excluded = 0; ///< zero-vector samples skipped for direction
};

/// Distance between symmetric positive definite 2x2 matrices (row-major
/// {a00, a01, a10, a11}): sqrt(ln^2 l1 + ln^2 l2) over the generalized
/// eigenvalues det(lambda A - B) = 0, solved in closed form. Symmetric in
/// its arguments and invariant under common positive scaling. Throws
/// NumericalError when either matrix is not symmetric positive definite.
double covariance_distance(const std::array<double, 4>& A, const std::array<double, 4>& B);

/// Quadrant-safe angle between two nonzero 2-vectors (n, e), in [0, pi]:
/// arccos(cos(atan2 difference)). Throws ConfigError on a zero vector.
double direction_error(double true_n, double true_e, double est_n, double est_e);

/// Sample covariance matrix {var_n, cov, cov, var_e} of paired series.
std::array<double, 4> covariance2(std::span<const double> n, std::span<const double> e);

/// Full evaluation of an estimate series over its valid samples (the series'
/// warm-up/endpoint exclusions are already encoded in `valid`). Samples where
/// true or estimated wind is the zero vector are excluded from direction
/// statistics only, and counted. Throws ConfigError when fewer than two
/// valid samples remain.
MetricsReport compute_metrics(const estimate::EstimateSeries& series);

/// Histogram of eps/sigma values on uniform bins of width `bin_width`
/// centered so that a bin edge falls on zero.
struct Histogram {
  std::vector<double> bin_left, bin_right;
  std::vector<std::size_t> count;
};
Histogram error_histogram(std::span<const double> errors, double sigma, double bin_width);
void save_histogram(const std::string& path, const Histogram& hist, const io::MetaList& meta);

/// Aligned-column text report (one method). `label` names the series.
std::string format_report(const MetricsReport& report, const std::string& label);
/// Machine-readable key=value lines with a provenance header.
void save_report_kv(const std::string& path, const MetricsReport& report,
                    const std::string& label, const io::MetaList& meta);

}  // namespace windest::metrics
