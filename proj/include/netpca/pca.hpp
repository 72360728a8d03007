#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netpca/matrix.hpp"

namespace netpca {

// Feature-by-observation matrix (rows = subgraph configurations, columns =
// graphs) after centering and optional unit-variance scaling. Rows whose
// sample variance is zero are dropped and recorded with a reason.
struct DensityMatrix {
  Matrix values;                       // p x N
  std::vector<std::string> row_names;  // retained rows
  std::vector<std::string> col_ids;
  std::vector<double> row_means;       // pre-transform, retained rows
  std::vector<double> row_sds;         // 1/N convention
  std::vector<std::pair<std::string, std::string>> dropped_rows;  // (name, reason)
  bool unit_sd = true;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns are unit eigenvectors, same order
};

struct PcaResult {
  DensityMatrix input;
  std::vector<double> eigenvalues;        // all p, descending
  Matrix loadings;                        // p x p, columns = eigenvectors
  Matrix scores;                          // N x r
  std::size_t r = 0;                      // retained components
  std::vector<double> variance_explained; // per component, fractions
  std::vector<bool> near_degenerate;      // gap flag per component
};

// Centers each row (mean over N columns) and, when unit_sd, divides by the
// 1/N standard deviation. Rows with sd < 1e-14 are dropped. Requires at
// least two columns; throws when every row is dropped.
DensityMatrix standardize_rows(const Matrix& raw, const std::vector<std::string>& row_names,
                               const std::vector<std::string>& col_ids, bool unit_sd);

// (1/N) * V * V^T of the already-standardized values.
Matrix covariance(const DensityMatrix& d);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues are sorted descending; each eigenvector is normalized and
// signed so its largest-magnitude entry (lowest index on ties) is positive.
// Throws when the input is not symmetric, is larger than 64x64, fails to
// converge in 100 sweeps, or a residual ||Av - lambda v|| exceeds tolerance.
EigenDecomposition symmetric_eigen(const Matrix& a);

// Column i of d.values projected onto the first r eigenvectors: N x r.
Matrix scores(const DensityMatrix& d, const Matrix& loadings, std::size_t r);

// Cumulative share of total variance captured by the top r eigenvalues.
// Negative eigenvalues (round-off) are clamped to zero before summing.
double variance_explained(const std::vector<double>& eigenvalues, std::size_t r);

// Percentage contribution of each feature to one loading vector:
// 100*|v_j| / sum_k |v_k|.
std::vector<double> contributions(const std::vector<double>& loading);

// Rank-r reconstruction of the standardized matrix from scores and loadings.
Matrix reconstruct(const PcaResult& result, std::size_t r);

// Full pipeline on a standardized matrix: covariance, eigendecomposition,
// scores for the top r components (all when r is absent or exceeds p).
PcaResult run_pca(DensityMatrix d, std::optional<std::size_t> r = std::nullopt);

}  // namespace netpca
