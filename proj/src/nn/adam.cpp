#include "windest/nn/adam.hpp"

#include <cmath>

#include "windest/errors.hpp"

namespace windest::nn {

Adam::Adam(const AdamConfig& cfg, std::size_t n_params) : cfg_(cfg) {
  if (!(cfg.lr > 0.0) || !(cfg.beta1 >= 0.0) || cfg.beta1 >= 1.0 || !(cfg.beta2 >= 0.0) ||
      cfg.beta2 >= 1.0 || !(cfg.eps > 0.0)) {
    throw ConfigError("adam: invalid hyperparameters");
  }
  m_.assign(n_params, 0.0);
  v_.assign(n_params, 0.0);
}

void Adam::step(const std::vector<std::span<double>>& params,
                const std::vector<std::span<const double>>& grads) {
  if (params.size() != grads.size()) {
    throw ConfigError("adam: parameter/gradient block count mismatch");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  std::size_t k = 0;
  for (std::size_t blk = 0; blk < params.size(); ++blk) {
    std::span<double> p = params[blk];
    std::span<const double> g = grads[blk];
    if (p.size() != g.size()) {
      throw ConfigError("adam: parameter/gradient block size mismatch");
    }
    if (k + p.size() > m_.size()) {
      throw ConfigError("adam: more parameters than the optimizer was sized for");
    }
    for (std::size_t j = 0; j < p.size(); ++j, ++k) {
      m_[k] = cfg_.beta1 * m_[k] + (1.0 - cfg_.beta1) * g[j];
      v_[k] = cfg_.beta2 * v_[k] + (1.0 - cfg_.beta2) * g[j] * g[j];
      const double mhat = m_[k] / bc1;
      const double vhat = v_[k] / bc2;
      p[j] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
  if (k != m_.size()) {
    throw ConfigError("adam: fewer parameters than the optimizer was sized for");
  }
}

}  // namespace windest::nn
