#include "windest/estimate/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "windest/errors.hpp"
#include "windest/io/csv.hpp"
#include "windest/rng.hpp"

namespace windest::estimate {

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1 (got " + std::to_string(epochs) + ")");
  if (batch_size < 1) {
    throw ConfigError("batch size must be >= 1 (got " + std::to_string(batch_size) + ")");
  }
  if (patience < 1) {
    throw ConfigError("early-stopping patience must be >= 1 (got " + std::to_string(patience) +
                      ")");
  }
  network.validate();  // Adam hyperparameters are validated on construction
  if (network.input_dim != kInputDim) {
    throw ConfigError("network input dim must be " + std::to_string(kInputDim) +
                      " (pose features), got " + std::to_string(network.input_dim));
  }
  if (network.output_dim != kTargetDim) {
    throw ConfigError("network output dim must be " + std::to_string(kTargetDim) +
                      " (wind components), got " + std::to_string(network.output_dim));
  }
}

namespace {

std::vector<double> snapshot_params(const nn::Network& net) {
  std::vector<double> flat;
  flat.reserve(net.param_count());
  for (const auto& blk : net.param_blocks()) flat.insert(flat.end(), blk.begin(), blk.end());
  return flat;
}

void restore_params(nn::Network& net, const std::vector<double>& flat) {
  std::size_t pos = 0;
  for (auto blk : net.param_blocks()) {
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos),
              flat.begin() + static_cast<std::ptrdiff_t>(pos + blk.size()), blk.begin());
    pos += blk.size();
  }
}

}  // namespace

TrainResult train(const Dataset& dataset, const TrainConfig& config) {
  config.validate();
  if (dataset.count() == 0 || dataset.train_indices.empty()) {
    throw ConfigError("dataset has no training windows");
  }
  const int n = dataset.seq_len;
  const std::size_t row_len = static_cast<std::size_t>(n) * kInputDim;

  // Normalize every window once up front (training runs in normalized space).
  std::vector<double> inputs = dataset.inputs;
  dataset.input_norm.normalize_rows(inputs);
  std::vector<double> targets = dataset.targets;
  dataset.target_norm.normalize_rows(targets);

  TrainResult result;
  result.network = nn::Network(config.network);
  nn::Network& net = result.network;
  Rng init_rng(derive_seed(config.seed, 0x1a17));
  net.init_params(init_rng);
  Rng shuffle_rng(derive_seed(config.seed, 0x5bf1));
  Rng dropout_rng(derive_seed(config.seed, 0xd409));

  nn::Adam adam(config.adam, net.param_count());
  nn::Network grads(config.network);
  grads.zero_params();
  nn::ForwardCache cache;

  const std::vector<std::size_t>& val_set =
      dataset.val_indices.empty() ? dataset.train_indices : dataset.val_indices;

  auto eval_mse = [&](const std::vector<std::size_t>& idx) {
    double total = 0.0;
    for (const std::size_t w : idx) {
      const std::vector<double> y = net.forward_eval(
          std::span<const double>(inputs.data() + w * row_len, row_len), n);
      total += nn::mse_loss(y, std::span<const double>(targets.data() + w * kTargetDim,
                                                       kTargetDim));
    }
    return total / static_cast<double>(idx.size());
  };

  std::vector<std::size_t> order = dataset.train_indices;
  std::vector<double> best_params = snapshot_params(net);
  result.best_val_mse = std::numeric_limits<double>::infinity();
  int stale = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double train_total = 0.0;
    std::size_t done = 0;
    while (done < order.size()) {
      const std::size_t batch =
          std::min<std::size_t>(static_cast<std::size_t>(config.batch_size),
                                order.size() - done);
      grads.zero_params();
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t w = order[done + b];
        const std::vector<double> y = net.forward_train(
            std::span<const double>(inputs.data() + w * row_len, row_len), n, dropout_rng,
            cache);
        const std::span<const double> target(targets.data() + w * kTargetDim, kTargetDim);
        const double loss = nn::mse_loss(y, target);
        if (!std::isfinite(loss)) {
          throw NumericalError("training diverged: non-finite loss at epoch " +
                               std::to_string(epoch) + ", window " + std::to_string(w) +
                               " (batch starting at " + std::to_string(done) + ")");
        }
        train_total += loss;
        // Mean reduction over the batch: scale each window's contribution.
        std::vector<double> dy = nn::mse_gradient(y, target);
        for (double& g : dy) g /= static_cast<double>(batch);
        net.backward(cache, dy, grads);
      }
      std::vector<std::span<const double>> gview;
      for (const auto& blk : grads.param_blocks()) gview.emplace_back(blk);
      auto params = net.param_blocks();
      adam.step(params, gview);
      done += batch;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_mse = train_total / static_cast<double>(order.size());
    stats.val_mse = eval_mse(val_set);
    if (!std::isfinite(stats.val_mse)) {
      throw NumericalError("training diverged: non-finite validation loss at epoch " +
                           std::to_string(epoch));
    }
    result.history.push_back(stats);

    if (stats.val_mse < result.best_val_mse) {
      result.best_val_mse = stats.val_mse;
      result.best_epoch = epoch;
      best_params = snapshot_params(net);
      stale = 0;
    } else {
      ++stale;
      if (stale >= config.patience) {
        result.stopped_early = true;
        break;
      }
    }
  }

  restore_params(net, best_params);
  return result;
}

void save_loss_history(const std::string& path, const std::vector<EpochStats>& history,
                       const io::MetaList& meta) {
  io::CsvWriter out(path, meta, {"epoch", "train_mse", "val_mse"});
  for (const EpochStats& e : history) {
    out.row(std::vector<double>{static_cast<double>(e.epoch), e.train_mse, e.val_mse});
  }
  out.close();
}

}  // namespace windest::estimate
