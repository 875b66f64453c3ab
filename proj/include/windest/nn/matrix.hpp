#pragma once

#include <cstddef>
#include <vector>

namespace windest::nn {

/// Dense row-major matrix of doubles. Deliberately minimal: the network
/// kernels index rows directly so the hot loops stay contiguous.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  ///< rows*cols entries, row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  double* row(int r) { return a.data() + static_cast<std::size_t>(r) * cols; }
  const double* row(int r) const { return a.data() + static_cast<std::size_t>(r) * cols; }
  std::size_t size() const { return a.size(); }
};

}  // namespace windest::nn
