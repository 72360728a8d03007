#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netpca/census.hpp"
#include "netpca/graph.hpp"
#include "netpca/kernel.hpp"

namespace netpca {

enum class CheckStatus { Pass, Fail, Skipped };

// One asserted inequality: lower <= statistic <= upper. `pass` is always
// recomputable from the three numbers (see CheckReport::recompute).
struct CheckCriterion {
  std::string label;
  double statistic = 0.0;
  double reference = 0.0;  // the value the statistic is compared against
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string skip_reason;
  double statistic = 0.0;    // headline observed value
  double reference = 0.0;    // headline theoretical value
  double z_or_ratio = 0.0;   // standardized discrepancy or ratio
  std::vector<std::size_t> replicates;
  std::vector<CheckCriterion> criteria;
  std::map<std::string, double> details;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;  // informational; not deterministic

  // Re-evaluates every criterion from its stored numbers and returns the
  // resulting status; equals `status` for reports produced by the checks.
  CheckStatus recompute() const;
  bool passed() const { return status == CheckStatus::Pass; }
  std::string to_json() const;
  std::string summary_line() const;
};

// Monte Carlo checks of the sampler/census stack. All are deterministic in
// their arguments; `threads` only changes the wall clock.

// Mean copy density over N sampled graphs against the kernel moment,
// within 4 standard errors (sampling SE plus the moment's own error).
CheckReport check_mean_density(const Kernel& kernel, const SubgraphConfig& config,
                               std::size_t n, std::size_t sample_count, std::uint64_t seed,
                               int threads = 0);

// Full-graph density vs the mean over a random partition's classes: both
// estimate the same moment, so their replicate means must agree within 4
// combined standard errors (and each must sit near the moment itself).
CheckReport check_subsample_mean(const Kernel& kernel, const SubgraphConfig& config,
                                 std::size_t n, std::size_t k, std::size_t tau,
                                 std::size_t reps, std::uint64_t seed, int threads = 0);

// Root-K normality of the class-mean density: the replicate variance must
// shrink like 1/K across k_values (each consecutive pair within a third of
// the exact ratio), and at the largest K the standardized skewness and excess
// kurtosis must be small. Cells have exactly `cell_size` vertices.
CheckReport check_clt_partition_mean(const Kernel& kernel, const SubgraphConfig& config,
                                     std::size_t cell_size, std::vector<std::size_t> k_values,
                                     std::size_t reps, std::uint64_t seed, int threads = 0);

// Root-N normality of the leading eigenvalue of the subsampled-pipeline
// covariance (rows centered, not scaled): N*var(lambda_1) must be within a
// factor of two of 2*lambda_1^2 and stable across sample sizes, and the
// leading-eigenvector MSE must shrink like 1/N. Each replicate samples
// sample_sizes.back() graphs once and reads the smaller sizes off the leading
// columns, so the per-size estimates share draws. Skipped when the pooled
// leading eigenvalue is not isolated (relative gap to the second below 0.05);
// the tail of the spectrum is not constrained.
CheckReport check_clt_eigen(const Kernel& kernel, std::vector<SubgraphConfig> configs,
                            std::size_t n, std::size_t k, std::size_t tau,
                            std::vector<std::size_t> sample_sizes, std::size_t reps,
                            std::uint64_t seed, int threads = 0);

// Agreement and speed of the subsampled pipeline against the full one on a
// fixed sample: median |cos| between leading loading vectors >= 0.9 over
// `reps` partition seeds; wall-clock ratio reported, required > 1 only when
// every graph has at least 500 vertices. The subsampled variance-explained
// spread (min/median/max for PC1 and PC2) and the full pipeline's point
// values go into details. Loadings are aligned by row name
// (rows one pipeline dropped count as weight zero). `configs` empty means the
// default set; passing the edge-bearing subset keeps the retained feature
// sets structurally identical when small partition cells contain isolated
// vertices but the full graphs do not.
CheckReport compare_pcan_spcan(const NetworkSample& sample, std::size_t k, std::size_t tau,
                               std::size_t reps, std::uint64_t seed, int threads = 0,
                               std::vector<SubgraphConfig> configs = {});

}  // namespace netpca
