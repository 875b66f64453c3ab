#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace windest::nn {

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam over a fixed-size flattened parameter set. The block
/// lists passed to step() must enumerate the same parameters in the same
/// order every call (Network::param_blocks provides that).
class Adam {
 public:
  Adam(const AdamConfig& cfg, std::size_t n_params);

  void step(const std::vector<std::span<double>>& params,
            const std::vector<std::span<const double>>& grads);

  const AdamConfig& config() const { return cfg_; }
  long long steps_taken() const { return t_; }

 private:
  AdamConfig cfg_;
  std::vector<double> m_, v_;
  long long t_ = 0;
};

}  // namespace windest::nn
