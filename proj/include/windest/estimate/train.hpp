#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windest/estimate/dataset.hpp"
#include "windest/nn/adam.hpp"
#include "windest/nn/network.hpp"

namespace windest::estimate {

struct TrainConfig {
  int epochs = 100;     ///< upper bound; early stopping usually ends sooner
  int batch_size = 10;
  int patience = 10;    ///< epochs without validation improvement before stop
  std::uint64_t seed = 0;
  nn::AdamConfig adam;          ///< lr 0.001 default
  nn::NetworkConfig network;    ///< hidden 100, 2 layers, dropout 0.1 default

  void validate() const;  // throws ConfigError
};

struct EpochStats {
  int epoch = 0;      ///< 1-based
  double train_mse = 0.0;  ///< mean per-window MSE as optimized (dropout on)
  double val_mse = 0.0;    ///< eval-mode MSE on the validation split
};

struct TrainResult {
  nn::Network network;  ///< parameters restored from the best epoch
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_mse = 0.0;
  bool stopped_early = false;
};

/// Mini-batch training on the dataset's training split in normalized space:
/// seeded shuffle each epoch, mean loss gradient over each batch, one Adam
/// step per batch, per-epoch validation in eval mode, early stopping with
/// parameter restore after `patience` stale epochs. The validation split
/// falls back to the training split when empty. Throws NumericalError with
/// epoch/batch diagnostics if the loss turns non-finite.
TrainResult train(const Dataset& dataset, const TrainConfig& config);

/// Writes `epoch,train_mse,val_mse` CSV.
void save_loss_history(const std::string& path, const std::vector<EpochStats>& history,
                       const io::MetaList& meta);

}  // namespace windest::estimate
