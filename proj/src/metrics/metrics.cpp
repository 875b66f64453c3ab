#include "windest/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "windest/errors.hpp"

namespace windest::metrics {

namespace {

bool is_spd(const std::array<double, 4>& m) {
  if (std::abs(m[1] - m[2]) > 1e-9 * (1.0 + std::abs(m[1]))) return false;
  const double det = m[0] * m[3] - m[1] * m[2];
  return m[0] > 0.0 && det > 0.0;
}

void require_spd(const std::array<double, 4>& m, const char* name) {
  if (std::abs(m[1] - m[2]) > 1e-9 * (1.0 + std::abs(m[1]))) {
    throw NumericalError(std::string("covariance_distance: matrix ") + name +
                         " is not symmetric");
  }
  const double det = m[0] * m[3] - m[1] * m[2];
  if (!(m[0] > 0.0) || !(det > 0.0)) {
    throw NumericalError(std::string("covariance_distance: matrix ") + name +
                         " is not positive definite (leading minors " + std::to_string(m[0]) +
                         ", " + std::to_string(det) + ")");
  }
}

double mean_of(std::span<const double> v) {
  double total = 0.0;
  for (const double x : v) total += x;
  return total / static_cast<double>(v.size());
}

double variance_of(std::span<const double> v) {
  const double mu = mean_of(v);
  double total = 0.0;
  for (const double x : v) total += (x - mu) * (x - mu);
  return total / static_cast<double>(v.size());
}

}  // namespace

double covariance_distance(const std::array<double, 4>& A, const std::array<double, 4>& B) {
  require_spd(A, "A");
  require_spd(B, "B");
  // The generalized eigenvalues of det(lambda A - B) = 0 equal the ordinary
  // eigenvalues of M = L^-1 B L^-T with A = L L^T (Cholesky). Going through
  // the symmetric M keeps the discriminant a sum of squares, which stays
  // accurate when the two eigenvalues nearly coincide (the direct quadratic
  // in lambda loses half the digits there).
  const double p = std::sqrt(A[0]);
  const double q = A[1] / p;
  const double r2 = A[3] - q * q;
  if (!(r2 > 0.0)) {
    throw NumericalError("covariance_distance: matrix A is numerically singular");
  }
  const double r = std::sqrt(r2);
  const double m00 = B[0] / (p * p);
  const double m01 = (B[1] - q * B[0] / p) / (p * r);
  const double m11 = (q * q * B[0] / (p * p) - 2.0 * q * B[1] / p + B[3]) / r2;
  const double half_sum = 0.5 * (m00 + m11);
  const double half_diff = 0.5 * (m00 - m11);
  const double s = std::hypot(half_diff, m01);
  const double l1 = half_sum + s;
  const double l2 = half_sum - s;
  if (!(l1 > 0.0) || !(l2 > 0.0)) {
    throw NumericalError("covariance_distance: non-positive generalized eigenvalue (" +
                         std::to_string(l1) + ", " + std::to_string(l2) + ")");
  }
  const double g1 = std::log(l1), g2 = std::log(l2);
  return std::sqrt(g1 * g1 + g2 * g2);
}

double direction_error(double true_n, double true_e, double est_n, double est_e) {
  if ((true_n == 0.0 && true_e == 0.0) || (est_n == 0.0 && est_e == 0.0)) {
    throw ConfigError("direction_error: undefined for a zero wind vector");
  }
  const double delta = std::atan2(true_n, true_e) - std::atan2(est_n, est_e);
  return std::acos(std::clamp(std::cos(delta), -1.0, 1.0));
}

std::array<double, 4> covariance2(std::span<const double> n, std::span<const double> e) {
  if (n.size() != e.size() || n.empty()) {
    throw ConfigError("covariance2: series must be non-empty and equal length");
  }
  const double mn = mean_of(n), me = mean_of(e);
  double vn = 0.0, ve = 0.0, cv = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    vn += (n[i] - mn) * (n[i] - mn);
    ve += (e[i] - me) * (e[i] - me);
    cv += (n[i] - mn) * (e[i] - me);
  }
  const double m = static_cast<double>(n.size());
  return {vn / m, cv / m, cv / m, ve / m};
}

MetricsReport compute_metrics(const estimate::EstimateSeries& series) {
  std::vector<double> tn, te, en, ee;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!series.valid[i]) continue;
    tn.push_back(series.wn_true[i]);
    te.push_back(series.we_true[i]);
    en.push_back(series.wn_est[i]);
    ee.push_back(series.we_est[i]);
  }
  if (tn.size() < 2) {
    throw ConfigError("compute_metrics: need at least 2 valid samples, have " +
                      std::to_string(tn.size()));
  }
  MetricsReport rep;
  rep.samples = tn.size();

  auto component = [](std::span<const double> truth, std::span<const double> est) {
    ComponentMetrics c;
    std::vector<double> eps(truth.size());
    double abs_total = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      eps[i] = truth[i] - est[i];
      abs_total += std::abs(eps[i]);
    }
    const double mae = abs_total / static_cast<double>(truth.size());
    const double std_eps = std::sqrt(variance_of(eps));
    c.mean_error = mean_of(eps);
    c.sigma_true = std::sqrt(variance_of(truth));
    c.sigma_zero = !(c.sigma_true > 0.0);
    // Zero-variance truth: report unnormalized errors instead of dividing.
    const double denom = c.sigma_zero ? 1.0 : c.sigma_true;
    c.mae_norm = mae / denom;
    c.std_norm = std_eps / denom;
    return c;
  };
  rep.north = component(tn, en);
  rep.east = component(te, ee);

  const std::array<double, 4> cov_true = covariance2(tn, te);
  const std::array<double, 4> cov_est = covariance2(en, ee);
  rep.true_offdiag = cov_true[1];
  rep.est_offdiag = cov_est[1];
  // A constant component makes its covariance singular; skip the distance
  // and flag it instead of failing the whole report.
  rep.cov_defined = is_spd(cov_true) && is_spd(cov_est);
  rep.cov_distance = rep.cov_defined ? covariance_distance(cov_true, cov_est) : 0.0;

  std::vector<double> dirs, speeds;
  dirs.reserve(tn.size());
  speeds.reserve(tn.size());
  for (std::size_t i = 0; i < tn.size(); ++i) {
    const double ts = std::hypot(tn[i], te[i]);
    const double es = std::hypot(en[i], ee[i]);
    speeds.push_back(ts - es);
    if (ts == 0.0 || es == 0.0) {
      ++rep.direction_excluded;
      continue;
    }
    dirs.push_back(direction_error(tn[i], te[i], en[i], ee[i]));
  }
  if (!dirs.empty()) {
    rep.dir_mean_error = mean_of(dirs);
    rep.dir_error_variance = variance_of(dirs);
  }
  rep.speed_mean_error = mean_of(speeds);
  rep.speed_error_variance = variance_of(speeds);
  return rep;
}

Histogram error_histogram(std::span<const double> errors, double sigma, double bin_width) {
  if (!(bin_width > 0.0)) {
    throw ConfigError("error_histogram: bin width must be positive");
  }
  if (!(sigma > 0.0)) {
    throw ConfigError("error_histogram: sigma must be positive");
  }
  Histogram h;
  if (errors.empty()) return h;
  // Bin k covers [k*w, (k+1)*w) in eps/sigma units, so an edge sits at 0.
  long long kmin = 0, kmax = 0;
  std::vector<long long> bins(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double x = errors[i] / sigma;
    const long long k = static_cast<long long>(std::floor(x / bin_width));
    bins[i] = k;
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  const std::size_t n_bins = static_cast<std::size_t>(kmax - kmin + 1);
  h.count.assign(n_bins, 0);
  h.bin_left.resize(n_bins);
  h.bin_right.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    h.bin_left[b] = static_cast<double>(kmin + static_cast<long long>(b)) * bin_width;
    h.bin_right[b] = h.bin_left[b] + bin_width;
  }
  for (const long long k : bins) ++h.count[static_cast<std::size_t>(k - kmin)];
  return h;
}

void save_histogram(const std::string& path, const Histogram& hist, const io::MetaList& meta) {
  io::CsvWriter out(path, meta, {"bin_left", "bin_right", "count"});
  for (std::size_t b = 0; b < hist.count.size(); ++b) {
    out.row(std::vector<double>{hist.bin_left[b], hist.bin_right[b],
                                static_cast<double>(hist.count[b])});
  }
  out.close();
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%12.6f", v);
  return buf;
}

}  // namespace

std::string format_report(const MetricsReport& rep, const std::string& label) {
  std::ostringstream os;
  os << "wind estimation metrics [" << label << "]  (error = true - estimate)\n";
  os << "  samples: " << rep.samples
     << "   direction samples excluded (zero vector): " << rep.direction_excluded << "\n";
  const char* note_n = rep.north.sigma_zero ? "  [unnormalized: sigma=0]" : "";
  const char* note_e = rep.east.sigma_zero ? "  [unnormalized: sigma=0]" : "";
  os << "                          north         east\n";
  os << "  MAE/sigma        " << fixed(rep.north.mae_norm) << "  " << fixed(rep.east.mae_norm)
     << note_n << note_e << "\n";
  os << "  sigma_eps/sigma  " << fixed(rep.north.std_norm) << "  " << fixed(rep.east.std_norm)
     << "\n";
  os << "  mean error (m/s) " << fixed(rep.north.mean_error) << "  "
     << fixed(rep.east.mean_error) << "\n";
  os << "  sigma true (m/s) " << fixed(rep.north.sigma_true) << "  "
     << fixed(rep.east.sigma_true) << "\n";
  if (rep.cov_defined) {
    os << "  covariance distance        " << fixed(rep.cov_distance) << "\n";
  } else {
    os << "  covariance distance        undefined (singular covariance)\n";
  }
  os << "  covariance off-diagonal    " << fixed(rep.true_offdiag) << " (true)  "
     << fixed(rep.est_offdiag) << " (est)\n";
  os << "  direction mean error (rad) " << fixed(rep.dir_mean_error) << "   variance (rad^2) "
     << fixed(rep.dir_error_variance) << "\n";
  os << "  speed mean error (m/s)     " << fixed(rep.speed_mean_error)
     << "   variance (m^2/s^2) " << fixed(rep.speed_error_variance) << "\n";
  return os.str();
}

void save_report_kv(const std::string& path, const MetricsReport& rep, const std::string& label,
                    const io::MetaList& meta) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw FormatError("report file '" + path + "': cannot open for writing");
  os << io::provenance_line(meta) << "\n";
  os << "label=" << label << "\n";
  os << "error_convention=true_minus_estimate\n";
  os << "samples=" << rep.samples << "\n";
  os << "direction_excluded=" << rep.direction_excluded << "\n";
  const auto emit = [&os](const std::string& prefix, const ComponentMetrics& c) {
    os << prefix << "_mae_norm=" << io::format_double(c.mae_norm) << "\n";
    os << prefix << "_std_norm=" << io::format_double(c.std_norm) << "\n";
    os << prefix << "_mean_error=" << io::format_double(c.mean_error) << "\n";
    os << prefix << "_sigma_true=" << io::format_double(c.sigma_true) << "\n";
    os << prefix << "_sigma_zero=" << (c.sigma_zero ? 1 : 0) << "\n";
  };
  emit("north", rep.north);
  emit("east", rep.east);
  os << "cov_defined=" << (rep.cov_defined ? 1 : 0) << "\n";
  os << "cov_distance=" << io::format_double(rep.cov_distance) << "\n";
  os << "true_offdiag=" << io::format_double(rep.true_offdiag) << "\n";
  os << "est_offdiag=" << io::format_double(rep.est_offdiag) << "\n";
  os << "dir_mean_error=" << io::format_double(rep.dir_mean_error) << "\n";
  os << "dir_error_variance=" << io::format_double(rep.dir_error_variance) << "\n";
  os << "speed_mean_error=" << io::format_double(rep.speed_mean_error) << "\n";
  os << "speed_error_variance=" << io::format_double(rep.speed_error_variance) << "\n";
  if (!os) throw FormatError("report file '" + path + "': write failed");
}

}  // namespace windest::metrics
