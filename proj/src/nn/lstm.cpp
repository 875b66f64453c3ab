#include "windest/nn/lstm.hpp"

#include <cmath>
#include <cstring>

#include "windest/errors.hpp"

namespace windest::nn {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

LstmLayer::LstmLayer(int input_dim_, int hidden_, bool tanh_candidate_)
    : input_dim(input_dim_),
      hidden(hidden_),
      tanh_candidate(tanh_candidate_),
      w(4 * hidden_, input_dim_ + hidden_),
      b(static_cast<std::size_t>(4) * hidden_, 0.0) {
  if (input_dim <= 0 || hidden <= 0) {
    throw ConfigError("lstm layer: dimensions must be positive");
  }
}

void LstmLayer::init_params(Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(input_dim + hidden));
  for (double& v : w.a) v = rng.uniform(-bound, bound);
  // Forget-gate block gets bias 1 so early training can retain cell state.
  for (int r = 0; r < 4 * hidden; ++r) {
    b[static_cast<std::size_t>(r)] = (r >= hidden && r < 2 * hidden) ? 1.0 : 0.0;
  }
}

void LstmLayer::step(const double* x, const double* h_prev, const double* c_prev, double* i,
                     double* f, double* o, double* g, double* c, double* tanh_c, double* h,
                     double* z) const {
  const int d = input_dim;
  const int n = hidden;
  for (int r = 0; r < 4 * n; ++r) {
    const double* wr = w.row(r);
    double acc = b[static_cast<std::size_t>(r)];
    for (int j = 0; j < d; ++j) acc += wr[j] * x[j];
    for (int j = 0; j < n; ++j) acc += wr[d + j] * h_prev[j];
    z[r] = acc;
  }
  for (int u = 0; u < n; ++u) {
    i[u] = sigmoid(z[u]);
    f[u] = sigmoid(z[n + u]);
    o[u] = sigmoid(z[2 * n + u]);
    g[u] = tanh_candidate ? std::tanh(z[3 * n + u]) : sigmoid(z[3 * n + u]);
    c[u] = f[u] * c_prev[u] + i[u] * g[u];
    tanh_c[u] = std::tanh(c[u]);
    h[u] = tanh_c[u] * o[u];
  }
}

void LstmCache::reset(int steps_, int input_dim, int hidden) {
  steps = steps_;
  const std::size_t tn = static_cast<std::size_t>(steps_) * hidden;
  x.assign(static_cast<std::size_t>(steps_) * input_dim, 0.0);
  i.assign(tn, 0.0);
  f.assign(tn, 0.0);
  o.assign(tn, 0.0);
  g.assign(tn, 0.0);
  c.assign(tn, 0.0);
  tanh_c.assign(tn, 0.0);
  h.assign(tn, 0.0);
}

void lstm_forward(const LstmLayer& layer, const double* xs, int steps, LstmCache& cache) {
  const int d = layer.input_dim;
  const int n = layer.hidden;
  cache.reset(steps, d, n);
  std::memcpy(cache.x.data(), xs, static_cast<std::size_t>(steps) * d * sizeof(double));
  std::vector<double> z(static_cast<std::size_t>(4) * n);
  std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
  for (int t = 0; t < steps; ++t) {
    const std::size_t at = static_cast<std::size_t>(t) * n;
    const double* h_prev = (t == 0) ? zeros.data() : cache.h.data() + at - n;
    const double* c_prev = (t == 0) ? zeros.data() : cache.c.data() + at - n;
    layer.step(cache.x.data() + static_cast<std::size_t>(t) * d, h_prev, c_prev,
               cache.i.data() + at, cache.f.data() + at, cache.o.data() + at,
               cache.g.data() + at, cache.c.data() + at, cache.tanh_c.data() + at,
               cache.h.data() + at, z.data());
  }
}

void lstm_backward(const LstmLayer& layer, const LstmCache& cache, const double* dh_ext,
                   LstmLayer& grads, double* dx) {
  const int d = layer.input_dim;
  const int n = layer.hidden;
  const int steps = cache.steps;
  std::vector<double> dh(static_cast<std::size_t>(n), 0.0);  // recurrent part
  std::vector<double> dc(static_cast<std::size_t>(n), 0.0);
  std::vector<double> dz(static_cast<std::size_t>(4) * n);
  std::memset(dx, 0, static_cast<std::size_t>(steps) * d * sizeof(double));

  for (int t = steps - 1; t >= 0; --t) {
    const std::size_t at = static_cast<std::size_t>(t) * n;
    const double* i = cache.i.data() + at;
    const double* f = cache.f.data() + at;
    const double* o = cache.o.data() + at;
    const double* g = cache.g.data() + at;
    const double* tanh_c = cache.tanh_c.data() + at;
    const double* c_prev = (t == 0) ? nullptr : cache.c.data() + at - n;
    const double* h_prev = (t == 0) ? nullptr : cache.h.data() + at - n;
    const double* xt = cache.x.data() + static_cast<std::size_t>(t) * d;

    for (int u = 0; u < n; ++u) {
      const double dhu = dh[static_cast<std::size_t>(u)] + dh_ext[at + u];
      const double do_u = dhu * tanh_c[u];
      const double dcu =
          dc[static_cast<std::size_t>(u)] + dhu * o[u] * (1.0 - tanh_c[u] * tanh_c[u]);
      const double di_u = dcu * g[u];
      const double dg_u = dcu * i[u];
      const double df_u = dcu * (t == 0 ? 0.0 : c_prev[u]);
      dc[static_cast<std::size_t>(u)] = dcu * f[u];  // flows to step t-1
      dz[static_cast<std::size_t>(u)] = di_u * i[u] * (1.0 - i[u]);
      dz[static_cast<std::size_t>(n + u)] = df_u * f[u] * (1.0 - f[u]);
      dz[static_cast<std::size_t>(2 * n + u)] = do_u * o[u] * (1.0 - o[u]);
      dz[static_cast<std::size_t>(3 * n + u)] =
          layer.tanh_candidate ? dg_u * (1.0 - g[u] * g[u]) : dg_u * g[u] * (1.0 - g[u]);
    }

    // Parameter gradients and input/recurrent gradients, streamed row-major.
    double* dxt = dx + static_cast<std::size_t>(t) * d;
    std::fill(dh.begin(), dh.end(), 0.0);
    for (int r = 0; r < 4 * n; ++r) {
      const double dzr = dz[static_cast<std::size_t>(r)];
      grads.b[static_cast<std::size_t>(r)] += dzr;
      if (dzr == 0.0) continue;
      double* gw = grads.w.row(r);
      const double* wr = layer.w.row(r);
      for (int j = 0; j < d; ++j) {
        gw[j] += dzr * xt[j];
        dxt[j] += dzr * wr[j];
      }
      if (t > 0) {
        for (int j = 0; j < n; ++j) {
          gw[d + j] += dzr * h_prev[j];
          dh[static_cast<std::size_t>(j)] += dzr * wr[d + j];
        }
      }
      // t == 0: h_prev is zero, so the recurrent weight gradient vanishes
      // and there is no earlier step to receive dh.
    }
  }
}

void lstm_cell_step(const LstmLayer& layer, const std::vector<double>& x,
                    const std::vector<double>& h_prev, const std::vector<double>& c_prev,
                    std::vector<double>& out_h, std::vector<double>& out_c) {
  const int n = layer.hidden;
  if (static_cast<int>(x.size()) != layer.input_dim || static_cast<int>(h_prev.size()) != n ||
      static_cast<int>(c_prev.size()) != n) {
    throw ConfigError("lstm_cell_step: dimension mismatch");
  }
  out_h.assign(static_cast<std::size_t>(n), 0.0);
  out_c.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> i(n), f(n), o(n), g(n), tanh_c(n), z(static_cast<std::size_t>(4) * n);
  layer.step(x.data(), h_prev.data(), c_prev.data(), i.data(), f.data(), o.data(), g.data(),
             out_c.data(), tanh_c.data(), out_h.data(), z.data());
}

}  // namespace windest::nn
