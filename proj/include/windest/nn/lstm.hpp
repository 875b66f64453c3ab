#pragma once

#include <vector>

#include "windest/nn/matrix.hpp"
#include "windest/rng.hpp"

namespace windest::nn {

/// One LSTM layer with fused gate storage.
///
/// The four gate projections (input i, forget f, output o, cell candidate)
/// share a single weight matrix of shape [4*hidden x (input_dim + hidden)]:
/// row block g*hidden..(g+1)*hidden holds gate g's rows (order i, f, o,
/// candidate); within a row, columns [0, input_dim) are the input weights U
/// and columns [input_dim, input_dim+hidden) the recurrent weights W. The
/// bias vector is blocked the same way. One matrix-vector product per time
/// step then evaluates every gate pre-activation:
///
///   i = sigmoid(b_i + U_i x + W_i h_prev)          (same for f, o)
///   c = f .* c_prev + i .* act(b + U x + W h_prev)
///   h = tanh(c) .* o
///
/// The cell candidate activation `act` is the sigmoid (matching the wind
/// estimator formulation this follows); `tanh_candidate` switches to the
/// conventional tanh cell for ablation.
struct LstmLayer {
  int input_dim = 0;
  int hidden = 0;
  bool tanh_candidate = false;
  Matrix w;               ///< [4*hidden x (input_dim + hidden)]
  std::vector<double> b;  ///< [4*hidden]

  LstmLayer() = default;
  LstmLayer(int input_dim, int hidden, bool tanh_candidate);

  /// Weights uniform in +/- 1/sqrt(fan_in) with fan_in = input_dim + hidden
  /// (the fused projection's input width); forget-gate biases 1, others 0.
  void init_params(Rng& rng);

  /// One cell update. All pointers reference caller-owned storage:
  /// x[input_dim], h_prev/c_prev[hidden]; outputs i,f,o,g,c,tanh_c,h[hidden];
  /// z is scratch for the 4*hidden pre-activations.
  void step(const double* x, const double* h_prev, const double* c_prev, double* i, double* f,
            double* o, double* g, double* c, double* tanh_c, double* h, double* z) const;
};

/// Everything the backward pass needs from one layer's forward run over a
/// sequence of T steps. All buffers are [T x width], flattened row-major.
struct LstmCache {
  int steps = 0;
  std::vector<double> x;  ///< layer inputs, [T x input_dim]
  std::vector<double> i, f, o, g, c, tanh_c, h;  ///< [T x hidden] each

  void reset(int steps, int input_dim, int hidden);
};

/// Runs the layer over a whole sequence (initial h, c are zero), filling the
/// cache. `xs` is [T x input_dim] flattened.
void lstm_forward(const LstmLayer& layer, const double* xs, int steps, LstmCache& cache);

/// Exact reverse-mode gradients through the cached forward run.
/// `dh_ext` [T x hidden] holds the loss gradient arriving at each step's
/// hidden output from outside the layer (zero where nothing is connected).
/// Parameter gradients accumulate into `grads` (same shape as the layer);
/// `dx` [T x input_dim] receives gradients w.r.t. the layer inputs.
void lstm_backward(const LstmLayer& layer, const LstmCache& cache, const double* dh_ext,
                   LstmLayer& grads, double* dx);

/// Single-step convenience wrapper (h_k, c_k packed as out_h, out_c).
void lstm_cell_step(const LstmLayer& layer, const std::vector<double>& x,
                    const std::vector<double>& h_prev, const std::vector<double>& c_prev,
                    std::vector<double>& out_h, std::vector<double>& out_c);

}  // namespace windest::nn
