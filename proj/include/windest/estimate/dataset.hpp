#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windest/nn/normalizer.hpp"
#include "windest/quadsim/trajectory_log.hpp"

namespace windest::estimate {

inline constexpr int kInputDim = 4;   // p_n, p_e, roll, pitch
inline constexpr int kTargetDim = 2;  // w_n, w_e

inline const std::vector<std::string>& input_feature_names() {
  static const std::vector<std::string> names = {"pn", "pe", "phi", "theta"};
  return names;
}
inline const std::vector<std::string>& target_feature_names() {
  static const std::vector<std::string> names = {"wn", "we"};
  return names;
}

/// Supervised sequence windows cut from a trajectory log. Window k covers
/// samples [k*stride, k*stride + n); its input rows are the four pose
/// features at each sample and its target is the true horizontal wind at the
/// window's final sample. Normalizers are fitted on the training split only.
struct Dataset {
  int seq_len = 10;
  int stride = 5;
  std::vector<double> inputs;   ///< [count x seq_len x kInputDim]
  std::vector<double> targets;  ///< [count x kTargetDim]
  std::vector<double> end_times;  ///< [count] time of each window's last sample
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> val_indices;
  nn::Normalizer input_norm;
  nn::Normalizer target_norm;
  io::MetaList meta;  ///< provenance carried over from the log

  std::size_t count() const { return targets.size() / kTargetDim; }

  void save(const std::string& path) const;
  static Dataset load(const std::string& path);
};

/// Cuts windows at starts 0, stride, 2*stride, ... (count =
/// floor((len-n)/stride) + 1), draws a seeded random validation subset of
/// round(val_fraction * count) windows, and fits input/target normalizers on
/// the training split. Throws ConfigError when the log is shorter than n or
/// n/stride are invalid (stride must be in [1, n]), FormatError when the log
/// timestamps are not uniformly spaced at the log rate.
Dataset build_sequences(const quadsim::TrajectoryLog& log, int n, int stride,
                        double val_fraction = 0.10, std::uint64_t seed = 0);

}  // namespace windest::estimate
