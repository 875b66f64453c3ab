#include "windest/nn/network.hpp"

#include <cmath>
#include <cstring>

#include "windest/errors.hpp"

namespace windest::nn {

void NetworkConfig::validate() const {
  if (input_dim <= 0 || hidden <= 0 || num_layers <= 0 || output_dim <= 0) {
    throw ConfigError("network: all dimensions must be positive");
  }
  if (!(dropout >= 0.0) || dropout >= 1.0) {
    throw ConfigError("network: dropout must lie in [0, 1)");
  }
}

Network::Network(const NetworkConfig& cfg) : config(cfg) {
  config.validate();
  lstm.reserve(static_cast<std::size_t>(cfg.num_layers));
  for (int l = 0; l < cfg.num_layers; ++l) {
    lstm.emplace_back(l == 0 ? cfg.input_dim : cfg.hidden, cfg.hidden, cfg.tanh_candidate);
  }
  dense_w = Matrix(cfg.output_dim, cfg.hidden);
  dense_b.assign(static_cast<std::size_t>(cfg.output_dim), 0.0);
}

void Network::init_params(Rng& rng) {
  for (LstmLayer& layer : lstm) layer.init_params(rng);
  const double bound = 1.0 / std::sqrt(static_cast<double>(config.hidden));
  for (double& v : dense_w.a) v = rng.uniform(-bound, bound);
  for (double& v : dense_b) v = 0.0;
}

void Network::zero_params() {
  for (LstmLayer& layer : lstm) {
    std::fill(layer.w.a.begin(), layer.w.a.end(), 0.0);
    std::fill(layer.b.begin(), layer.b.end(), 0.0);
  }
  std::fill(dense_w.a.begin(), dense_w.a.end(), 0.0);
  std::fill(dense_b.begin(), dense_b.end(), 0.0);
}

namespace {

/// Shared forward machinery; train mode iff cache and rng are non-null.
std::vector<double> run_forward(const Network& net, std::span<const double> sequence, int steps,
                                Rng* rng, ForwardCache* cache) {
  const NetworkConfig& cfg = net.config;
  if (steps < 1) throw ConfigError("network forward: sequence must have at least one step");
  if (sequence.size() != static_cast<std::size_t>(steps) * cfg.input_dim) {
    throw ConfigError("network forward: sequence size does not match steps * input_dim");
  }
  const bool train = cache != nullptr;
  const double keep = 1.0 - cfg.dropout;
  const double inv_keep = 1.0 / keep;

  ForwardCache local;
  ForwardCache& cc = train ? *cache : local;
  cc.steps = steps;
  cc.layers.assign(static_cast<std::size_t>(cfg.num_layers), LstmCache{});
  cc.inter_mask.assign(static_cast<std::size_t>(cfg.num_layers - 1), {});

  std::vector<double> inputs(sequence.begin(), sequence.end());
  for (int l = 0; l < cfg.num_layers; ++l) {
    lstm_forward(net.lstm[static_cast<std::size_t>(l)], inputs.data(), steps,
                 cc.layers[static_cast<std::size_t>(l)]);
    if (l + 1 < cfg.num_layers) {
      // Next layer consumes this layer's hidden sequence, dropout-masked
      // per time step in train mode.
      const std::vector<double>& h = cc.layers[static_cast<std::size_t>(l)].h;
      inputs.assign(h.begin(), h.end());
      if (train && cfg.dropout > 0.0) {
        std::vector<double>& mask = cc.inter_mask[static_cast<std::size_t>(l)];
        mask.resize(inputs.size());
        for (std::size_t k = 0; k < inputs.size(); ++k) {
          mask[k] = (rng->uniform01() < keep) ? inv_keep : 0.0;
          inputs[k] *= mask[k];
        }
      }
    }
  }

  // Dense head reads the final hidden state of the top layer.
  const LstmCache& top = cc.layers.back();
  const std::size_t at = static_cast<std::size_t>(steps - 1) * cfg.hidden;
  std::vector<double> head(top.h.begin() + at, top.h.begin() + at + cfg.hidden);
  if (train && cfg.dropout > 0.0) {
    cc.head_mask.resize(static_cast<std::size_t>(cfg.hidden));
    for (int u = 0; u < cfg.hidden; ++u) {
      cc.head_mask[static_cast<std::size_t>(u)] = (rng->uniform01() < keep) ? inv_keep : 0.0;
      head[static_cast<std::size_t>(u)] *= cc.head_mask[static_cast<std::size_t>(u)];
    }
  } else {
    cc.head_mask.clear();
  }
  cc.head_input = head;

  std::vector<double> y(static_cast<std::size_t>(cfg.output_dim), 0.0);
  for (int r = 0; r < cfg.output_dim; ++r) {
    const double* wr = net.dense_w.row(r);
    double acc = net.dense_b[static_cast<std::size_t>(r)];
    for (int u = 0; u < cfg.hidden; ++u) acc += wr[u] * head[static_cast<std::size_t>(u)];
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

}  // namespace

std::vector<double> Network::forward_eval(std::span<const double> sequence, int steps) const {
  return run_forward(*this, sequence, steps, nullptr, nullptr);
}

std::vector<double> Network::forward_train(std::span<const double> sequence, int steps, Rng& rng,
                                           ForwardCache& cache) const {
  return run_forward(*this, sequence, steps, &rng, &cache);
}

void Network::backward(const ForwardCache& cache, std::span<const double> dLdy,
                       Network& grads) const {
  const NetworkConfig& cfg = config;
  if (dLdy.size() != static_cast<std::size_t>(cfg.output_dim)) {
    throw ConfigError("network backward: loss gradient size mismatch");
  }
  const int steps = cache.steps;
  const int n = cfg.hidden;

  // Dense head: gradients plus the gradient reaching the masked hidden state.
  std::vector<double> dhead(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < cfg.output_dim; ++r) {
    const double dy = dLdy[static_cast<std::size_t>(r)];
    grads.dense_b[static_cast<std::size_t>(r)] += dy;
    double* gw = grads.dense_w.row(r);
    const double* wr = dense_w.row(r);
    for (int u = 0; u < n; ++u) {
      gw[u] += dy * cache.head_input[static_cast<std::size_t>(u)];
      dhead[static_cast<std::size_t>(u)] += dy * wr[u];
    }
  }
  if (!cache.head_mask.empty()) {
    for (int u = 0; u < n; ++u) {
      dhead[static_cast<std::size_t>(u)] *= cache.head_mask[static_cast<std::size_t>(u)];
    }
  }

  // Top layer receives the head gradient at its final step only.
  std::vector<double> dh_ext(static_cast<std::size_t>(steps) * n, 0.0);
  std::memcpy(dh_ext.data() + static_cast<std::size_t>(steps - 1) * n, dhead.data(),
              static_cast<std::size_t>(n) * sizeof(double));

  std::vector<double> dx;
  for (int l = cfg.num_layers - 1; l >= 0; --l) {
    const LstmLayer& layer = lstm[static_cast<std::size_t>(l)];
    dx.assign(static_cast<std::size_t>(steps) * layer.input_dim, 0.0);
    lstm_backward(layer, cache.layers[static_cast<std::size_t>(l)], dh_ext.data(),
                  grads.lstm[static_cast<std::size_t>(l)], dx.data());
    if (l > 0) {
      // dx is the gradient w.r.t. the masked output of layer l-1.
      dh_ext = dx;
      const std::vector<double>& mask = cache.inter_mask[static_cast<std::size_t>(l - 1)];
      if (!mask.empty()) {
        for (std::size_t k = 0; k < dh_ext.size(); ++k) dh_ext[k] *= mask[k];
      }
    }
  }
}

std::vector<std::span<double>> Network::param_blocks() {
  std::vector<std::span<double>> blocks;
  for (LstmLayer& layer : lstm) {
    blocks.emplace_back(layer.w.a);
    blocks.emplace_back(layer.b);
  }
  blocks.emplace_back(dense_w.a);
  blocks.emplace_back(dense_b);
  return blocks;
}

std::vector<std::span<const double>> Network::param_blocks() const {
  std::vector<std::span<const double>> blocks;
  for (const LstmLayer& layer : lstm) {
    blocks.emplace_back(layer.w.a);
    blocks.emplace_back(layer.b);
  }
  blocks.emplace_back(dense_w.a);
  blocks.emplace_back(dense_b);
  return blocks;
}

std::size_t Network::param_count() const {
  std::size_t n = 0;
  for (const auto& blk : param_blocks()) n += blk.size();
  return n;
}

double mse_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size() || pred.empty()) {
    throw ConfigError("mse_loss: size mismatch");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const double e = pred[k] - target[k];
    acc += e * e;
  }
  return acc / static_cast<double>(pred.size());
}

std::vector<double> mse_gradient(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size() || pred.empty()) {
    throw ConfigError("mse_gradient: size mismatch");
  }
  std::vector<double> g(pred.size());
  for (std::size_t k = 0; k < pred.size(); ++k) {
    g[k] = 2.0 * (pred[k] - target[k]) / static_cast<double>(pred.size());
  }
  return g;
}

}  // namespace windest::nn
