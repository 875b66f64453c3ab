#pragma once

#include <string>
#include <vector>

#include "windest/nn/model_io.hpp"
#include "windest/quadsim/params.hpp"
#include "windest/quadsim/trajectory_log.hpp"

namespace windest::estimate {

/// Per-sample wind estimates aligned with a trajectory log. `valid[i]` is
/// false where the method cannot produce an estimate (the NN warm-up region
/// of the first n-1 samples; the endpoint samples of the finite-differenced
/// baseline); invalid samples carry zeros and are excluded from files and
/// metrics.
struct EstimateSeries {
  std::string method;  ///< "nn" or "wt"
  std::vector<double> t;
  std::vector<double> wn_true, we_true;
  std::vector<double> wn_est, we_est;
  std::vector<bool> valid;
  io::MetaList meta;

  std::size_t size() const { return t.size(); }
};

/// Sliding-window (stride 1) deployment of a trained model: each sample from
/// index n-1 on is estimated from its trailing n-sample pose window,
/// normalized with the model's stored input normalizer; raw outputs are
/// mapped back through the stored target normalizer. Throws ConfigError when
/// the model's feature dimensions don't match or the log is shorter than n.
EstimateSeries nn_estimate(const nn::LoadedModel& model, const quadsim::TrajectoryLog& log,
                           int seq_len);

/// Wind-triangle baseline: ground velocity from central finite differences
/// of logged position; airspeed magnitude from the steady-state balance of
/// the horizontal thrust component against drag,
///   m g tan(tilt) = C_d(V) V^2,  tilt = arccos(cos(roll) cos(pitch)),
/// solved by bisection; airspeed direction along the horizontal projection
/// of the body z axis; wind = ground velocity + airspeed (V_w = pdot + V_a).
EstimateSeries wt_estimate(const quadsim::TrajectoryLog& log, const quadsim::QuadParams& params);

/// Tilt-to-airspeed map used by the baseline (exposed for testing):
/// the V >= 0 solving m g tan(tilt) = C_d(V) V^2 by bisection.
double wt_airspeed_from_tilt(double tilt, double mass, double gravity);

/// CSV schema: t,wn_true,we_true,wn_est,we_est,method (invalid samples are
/// not written).
void save_estimates(const std::string& path, const EstimateSeries& series);
EstimateSeries load_estimates(const std::string& path);

}  // namespace windest::estimate
