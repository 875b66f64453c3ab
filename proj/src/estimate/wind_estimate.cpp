#include "windest/estimate/wind_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "windest/errors.hpp"
#include "windest/estimate/dataset.hpp"
#include "windest/io/csv.hpp"
#include "windest/quadsim/aero.hpp"

namespace windest::estimate {

namespace {

EstimateSeries make_series(const quadsim::TrajectoryLog& log, std::string method) {
  EstimateSeries s;
  s.method = std::move(method);
  s.meta = log.meta;
  const std::size_t n = log.samples.size();
  s.t.resize(n);
  s.wn_true.resize(n);
  s.we_true.resize(n);
  s.wn_est.assign(n, 0.0);
  s.we_est.assign(n, 0.0);
  s.valid.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    s.t[i] = log.samples[i].t;
    s.wn_true[i] = log.samples[i].wind.x;
    s.we_true[i] = log.samples[i].wind.y;
  }
  return s;
}

}  // namespace

EstimateSeries nn_estimate(const nn::LoadedModel& model, const quadsim::TrajectoryLog& log,
                           int seq_len) {
  if (seq_len < 1) {
    throw ConfigError("sequence length must be >= 1 (got " + std::to_string(seq_len) + ")");
  }
  const nn::NetworkConfig& cfg = model.network.config;
  if (cfg.input_dim != kInputDim || static_cast<int>(model.input_norm.dim()) != kInputDim) {
    throw ConfigError("model input dimension mismatch: network expects " +
                      std::to_string(cfg.input_dim) + " features, normalizer has " +
                      std::to_string(model.input_norm.dim()) + ", log provides " +
                      std::to_string(kInputDim));
  }
  if (cfg.output_dim != kTargetDim || static_cast<int>(model.target_norm.dim()) != kTargetDim) {
    throw ConfigError("model output dimension mismatch: network yields " +
                      std::to_string(cfg.output_dim) + " components, target normalizer has " +
                      std::to_string(model.target_norm.dim()));
  }
  if (log.samples.size() < static_cast<std::size_t>(seq_len)) {
    throw ConfigError("trajectory log has " + std::to_string(log.samples.size()) +
                      " samples; need at least the sequence length " + std::to_string(seq_len));
  }

  EstimateSeries s = make_series(log, "nn");
  const std::size_t n = static_cast<std::size_t>(seq_len);
  std::vector<double> window(n * kInputDim);
  std::vector<double> out(kTargetDim);
  for (std::size_t i = n - 1; i < log.samples.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& smp = log.samples[i + 1 - n + k];
      double* row = window.data() + k * kInputDim;
      row[0] = smp.position.x;
      row[1] = smp.position.y;
      row[2] = smp.attitude.x;
      row[3] = smp.attitude.y;
    }
    model.input_norm.normalize_rows(window);
    const std::vector<double> y = model.network.forward_eval(window, seq_len);
    model.target_norm.denormalize(y, out);
    s.wn_est[i] = out[0];
    s.we_est[i] = out[1];
    s.valid[i] = true;
  }
  return s;
}

double wt_airspeed_from_tilt(double tilt, double mass, double gravity) {
  // Moderate-tilt map; clamp keeps tan() finite for pathological attitudes.
  tilt = std::clamp(tilt, 0.0, 1.55);
  if (tilt <= 0.0) return 0.0;
  const double target = mass * gravity * std::tan(tilt);
  // C_d >= 0.2 everywhere, so V <= sqrt(target / 0.2) brackets the root.
  double lo = 0.0;
  double hi = std::sqrt(target / 0.2) + 1.0;
  for (int k = 0; k < 100; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double f = quadsim::drag_coefficient(mid) * mid * mid - target;
    if (f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EstimateSeries wt_estimate(const quadsim::TrajectoryLog& log,
                           const quadsim::QuadParams& params) {
  EstimateSeries s = make_series(log, "wt");
  const std::size_t n = log.samples.size();
  if (n < 3) return s;  // central differences need interior samples
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto& smp = log.samples[i];
    const double dt2 = log.samples[i + 1].t - log.samples[i - 1].t;
    const double vn = (log.samples[i + 1].position.x - log.samples[i - 1].position.x) / dt2;
    const double ve = (log.samples[i + 1].position.y - log.samples[i - 1].position.y) / dt2;

    const double cphi = std::cos(smp.attitude.x), sphi = std::sin(smp.attitude.x);
    const double cth = std::cos(smp.attitude.y), sth = std::sin(smp.attitude.y);
    const double cpsi = std::cos(smp.attitude.z), spsi = std::sin(smp.attitude.z);
    // Inertial components of the body z axis (third rotation-matrix column).
    const double r13 = cphi * sth * cpsi + sphi * spsi;
    const double r23 = cphi * sth * spsi - sphi * cpsi;
    const double r33 = cphi * cth;
    const double tilt = std::acos(std::clamp(r33, -1.0, 1.0));
    const double airspeed = wt_airspeed_from_tilt(tilt, params.mass, params.gravity);

    // Steady state: horizontal thrust opposes drag, so the airspeed points
    // along the horizontal projection of the body z axis.
    const double hnorm = std::hypot(r13, r23);
    double va_n = 0.0, va_e = 0.0;
    if (hnorm > 1e-12) {
      va_n = airspeed * r13 / hnorm;
      va_e = airspeed * r23 / hnorm;
    }
    s.wn_est[i] = vn + va_n;
    s.we_est[i] = ve + va_e;
    s.valid[i] = true;
  }
  return s;
}

namespace {

const std::vector<std::string>& estimate_columns() {
  static const std::vector<std::string> cols = {"t",      "wn_true", "we_true",
                                                "wn_est", "we_est",  "method"};
  return cols;
}

}  // namespace

void save_estimates(const std::string& path, const EstimateSeries& series) {
  io::CsvWriter out(path, series.meta, estimate_columns());
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!series.valid[i]) continue;
    out.row(std::vector<double>{series.t[i], series.wn_true[i], series.we_true[i],
                                series.wn_est[i], series.we_est[i]},
            series.method);
  }
  out.close();
}

EstimateSeries load_estimates(const std::string& path) {
  const io::CsvData data = io::read_csv(path, estimate_columns());
  EstimateSeries s;
  s.meta = data.meta;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto& row = data.rows[i];
    if (row.size() != 5) {
      throw FormatError("estimate file '" + path + "': row " + std::to_string(i) + " has " +
                        std::to_string(row.size()) + " numeric fields, expected 5");
    }
    s.t.push_back(row[0]);
    s.wn_true.push_back(row[1]);
    s.we_true.push_back(row[2]);
    s.wn_est.push_back(row[3]);
    s.we_est.push_back(row[4]);
    s.valid.push_back(true);
    if (i < data.tails.size() && !data.tails[i].empty()) {
      if (s.method.empty()) {
        s.method = data.tails[i];
      } else if (s.method != data.tails[i]) {
        throw FormatError("estimate file '" + path + "': mixed method tags ('" + s.method +
                          "' vs '" + data.tails[i] + "')");
      }
    }
  }
  return s;
}

}  // namespace windest::estimate
