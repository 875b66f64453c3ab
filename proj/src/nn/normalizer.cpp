#include "windest/nn/normalizer.hpp"

#include <cmath>

#include "windest/errors.hpp"

namespace windest::nn {

Normalizer Normalizer::fit(std::span<const double> data, std::size_t dim,
                           std::vector<std::string> names) {
  if (dim == 0 || data.size() % dim != 0 || data.empty()) {
    throw ConfigError("normalizer: data size must be a positive multiple of the feature count");
  }
  const std::size_t rows = data.size() / dim;
  Normalizer n;
  n.mean.assign(dim, 0.0);
  n.scale.assign(dim, 0.0);
  n.feature_names = std::move(names);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < dim; ++j) n.mean[j] += data[r * dim + j];
  }
  for (double& m : n.mean) m /= static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < dim; ++j) {
      n.scale[j] = std::max(n.scale[j], std::abs(data[r * dim + j] - n.mean[j]));
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    if (!(n.scale[j] > 0.0)) {
      const std::string label = (j < n.feature_names.size() && !n.feature_names[j].empty())
                                    ? ("'" + n.feature_names[j] + "' (index " +
                                       std::to_string(j) + ")")
                                    : ("index " + std::to_string(j));
      throw ConfigError("normalizer: feature " + label +
                        " is constant over the training data; cannot scale");
    }
  }
  return n;
}

void Normalizer::normalize(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim() || out.size() != dim()) {
    throw ConfigError("normalizer: dimension mismatch");
  }
  for (std::size_t j = 0; j < dim(); ++j) out[j] = (x[j] - mean[j]) / scale[j];
}

void Normalizer::denormalize(std::span<const double> y, std::span<double> out) const {
  if (y.size() != dim() || out.size() != dim()) {
    throw ConfigError("normalizer: dimension mismatch");
  }
  for (std::size_t j = 0; j < dim(); ++j) out[j] = y[j] * scale[j] + mean[j];
}

void Normalizer::normalize_rows(std::span<double> data) const {
  if (dim() == 0 || data.size() % dim() != 0) {
    throw ConfigError("normalizer: buffer size must be a multiple of the feature count");
  }
  for (std::size_t at = 0; at < data.size(); at += dim()) {
    for (std::size_t j = 0; j < dim(); ++j) {
      data[at + j] = (data[at + j] - mean[j]) / scale[j];
    }
  }
}

}  // namespace windest::nn
