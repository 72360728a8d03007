#pragma once

#include <cstddef>
#include <vector>

namespace netpca {

// Dense row-major matrix of doubles. Just storage plus indexing; the handful
// of linear-algebra routines that operate on it live in pca.hpp.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

}  // namespace netpca
