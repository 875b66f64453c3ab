#pragma once

#include <span>
#include <string>
#include <vector>

namespace windest::nn {

/// Per-feature affine normalization x_norm = (x - mean) / max|x - mean|,
/// fitted on training data so normalized training features lie in [-1, 1].
/// The transform is affine and never clips, so unseen data may map outside
/// that interval.
struct Normalizer {
  std::vector<double> mean;
  std::vector<double> scale;               ///< max|x - mean| per feature, > 0
  std::vector<std::string> feature_names;  ///< optional, for diagnostics

  /// Fits over `rows` samples of `dim` features (row-major). A constant
  /// feature has zero scale and raises ConfigError naming the feature.
  static Normalizer fit(std::span<const double> data, std::size_t dim,
                        std::vector<std::string> names = {});

  std::size_t dim() const { return mean.size(); }

  void normalize(std::span<const double> x, std::span<double> out) const;
  void denormalize(std::span<const double> y, std::span<double> out) const;
  /// Applies normalize() to every `dim()`-sized row of a flattened buffer.
  void normalize_rows(std::span<double> data) const;
};

}  // namespace windest::nn
