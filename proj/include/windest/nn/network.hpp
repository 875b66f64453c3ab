#pragma once

#include <span>
#include <vector>

#include "windest/nn/lstm.hpp"
#include "windest/nn/matrix.hpp"
#include "windest/rng.hpp"

namespace windest::nn {

struct NetworkConfig {
  int input_dim = 4;  ///< p_n, p_e, roll, pitch
  int hidden = 100;
  int num_layers = 2;
  int output_dim = 2;
  double dropout = 0.1;
  bool tanh_candidate = false;

  /// Throws ConfigError on non-positive dims or dropout outside [0, 1).
  void validate() const;
};

/// Activations recorded by a train-mode forward pass, consumed by backward().
struct ForwardCache {
  int steps = 0;
  std::vector<LstmCache> layers;
  /// Inverted-dropout masks (entries 0 or 1/(1-p)). Between stacked LSTM
  /// layers the mask is per time step ([T x hidden], applied to the lower
  /// layer's whole output sequence); the mask before the dense head is a
  /// single [hidden] vector (only the final hidden state feeds the head).
  std::vector<std::vector<double>> inter_mask;  ///< num_layers-1 of [T x hidden]
  std::vector<double> head_mask;                ///< [hidden]
  std::vector<double> head_input;               ///< final hidden state after mask
};

/// Stacked LSTM network with a linear output head. Also doubles as the
/// gradient container: backward() accumulates into a Network of identical
/// architecture whose parameters hold the gradient values.
struct Network {
  NetworkConfig config;
  std::vector<LstmLayer> lstm;
  Matrix dense_w;               ///< [output_dim x hidden]
  std::vector<double> dense_b;  ///< [output_dim]

  Network() = default;
  explicit Network(const NetworkConfig& cfg);

  void init_params(Rng& rng);
  void zero_params();

  /// Deterministic inference pass (no dropout). `sequence` is
  /// [steps x input_dim], flattened row-major; returns output_dim values.
  std::vector<double> forward_eval(std::span<const double> sequence, int steps) const;

  /// Training pass: applies inverted dropout with masks drawn from `rng`
  /// and records activations for backward().
  std::vector<double> forward_train(std::span<const double> sequence, int steps, Rng& rng,
                                    ForwardCache& cache) const;

  /// Exact reverse-mode gradients of a scalar loss with gradient `dLdy`
  /// w.r.t. the network output. Accumulates parameter gradients into
  /// `grads` (zero it before the first sequence of a batch).
  void backward(const ForwardCache& cache, std::span<const double> dLdy, Network& grads) const;

  /// Fixed-order views over all parameters (layer 0 w, b; layer 1 w, b; ...;
  /// dense w, b) for the optimizer and model serialization.
  std::vector<std::span<double>> param_blocks();
  std::vector<std::span<const double>> param_blocks() const;
  std::size_t param_count() const;
};

/// Mean of squared component errors.
double mse_loss(std::span<const double> pred, std::span<const double> target);

/// d(mse)/d(pred) -- 2*(pred-target)/n per component.
std::vector<double> mse_gradient(std::span<const double> pred, std::span<const double> target);

}  // namespace windest::nn
