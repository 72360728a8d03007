#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "netpca/census.hpp"
#include "netpca/graph.hpp"
#include "netpca/pca.hpp"

namespace netpca {

struct PipelineSettings {
  std::vector<SubgraphConfig> configs;  // empty -> default_configuration_set()
  CountMode mode = CountMode::Copies;
  bool unit_sd = true;
  std::optional<std::size_t> r;    // retained components; absent -> all
  std::optional<std::size_t> k;    // classes per graph (subsampled variant)
  std::optional<std::size_t> tau;  // minimum class size (subsampled variant)
  std::uint64_t seed = 0;          // drives the per-graph partitions
  int threads = 0;                 // 0 -> hardware concurrency
};

struct PipelineResult {
  PcaResult pca;
  std::vector<PartitionPlan> plans;  // one per graph (subsampled variant only)
  std::size_t k = 0;                 // resolved values (subsampled variant only)
  std::size_t tau = 0;
  double runtime_seconds = 0.0;
};

// Smallest minimum class size that fits the configurations (twice the largest
// pattern) and the largest class count it allows on n_min vertices. Throws
// when even one class of that size does not fit.
std::pair<std::size_t, std::size_t> default_tau_k(std::size_t n_min,
                                                  std::span<const SubgraphConfig> configs);

// Full-graph analysis: one density column per graph, rows standardized, PCA.
PipelineResult pcan(const NetworkSample& sample, const PipelineSettings& settings);

// Subsampled analysis: each graph is split into k random classes of size >=
// tau, the column is the mean of the class density vectors. Unset k/tau fall
// back to default_tau_k. Requires 2*max|F| <= tau and k*tau <= n_min.
PipelineResult spcan(const NetworkSample& sample, const PipelineSettings& settings);

}  // namespace netpca
