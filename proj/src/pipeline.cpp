#include "netpca/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "netpca/parallel.hpp"
#include "netpca/rng.hpp"

namespace netpca {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<SubgraphConfig> resolve_configs(const PipelineSettings& settings) {
  if (settings.configs.empty()) return default_configuration_set();
  return settings.configs;
}

// Every configuration must fit every graph, otherwise densities are undefined.
void require_fit(const NetworkSample& sample, const std::vector<SubgraphConfig>& configs) {
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (const auto& c : configs)
      if (sample.graphs[i].vertex_count() < static_cast<std::size_t>(c.node_count))
        throw std::invalid_argument("graph '" + sample.ids[i] + "' has fewer vertices than configuration '" +
                                    c.name + "' needs");
}

std::size_t max_pattern_size(std::span<const SubgraphConfig> configs) {
  std::size_t m = 0;
  for (const auto& c : configs) m = std::max(m, static_cast<std::size_t>(c.node_count));
  return m;
}

}  // namespace

std::pair<std::size_t, std::size_t> default_tau_k(std::size_t n_min,
                                                  std::span<const SubgraphConfig> configs) {
  if (configs.empty()) throw std::invalid_argument("no configurations given");
  std::size_t tau = 2 * max_pattern_size(configs);
  if (tau > n_min)
    throw std::invalid_argument(
        "smallest graph (" + std::to_string(n_min) + " vertices) cannot hold one class of size " +
        std::to_string(tau) + "; the constraint 2*max|F| <= tau <= n_min/K requires dropping the "
        "largest configurations or using the full-graph pipeline");
  return {tau, n_min / tau};
}

PipelineResult pcan(const NetworkSample& sample, const PipelineSettings& settings) {
  auto start = Clock::now();
  sample.validate();
  if (sample.size() < 2) throw std::invalid_argument("need at least two graphs");
  auto configs = resolve_configs(settings);
  require_fit(sample, configs);

  const std::size_t p = configs.size();
  const std::size_t N = sample.size();
  Matrix raw(p, N);
  parallel_for(N, settings.threads, [&](std::size_t i) {
    auto col = density_vector(sample.graphs[i], configs, settings.mode);
    for (std::size_t j = 0; j < p; ++j) raw(j, i) = col[j];
  });

  std::vector<std::string> row_names;
  row_names.reserve(p);
  for (const auto& c : configs) row_names.push_back(c.name);

  PipelineResult out;
  out.pca = run_pca(standardize_rows(raw, row_names, sample.ids, settings.unit_sd), settings.r);
  out.runtime_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

PipelineResult spcan(const NetworkSample& sample, const PipelineSettings& settings) {
  auto start = Clock::now();
  sample.validate();
  if (sample.size() < 2) throw std::invalid_argument("need at least two graphs");
  auto configs = resolve_configs(settings);
  require_fit(sample, configs);

  const std::size_t n_min = sample.min_vertex_count();
  const std::size_t pattern = max_pattern_size(configs);
  std::size_t tau = settings.tau.value_or(2 * pattern);
  std::size_t k = settings.k.value_or(tau > 0 && tau <= n_min ? n_min / tau : 0);
  if (2 * pattern > tau || k < 1 || k * tau > n_min)
    throw std::invalid_argument(
        "infeasible subsampling parameters: need 2*max|F| <= tau <= n_min/K, got tau = " +
        std::to_string(tau) + ", K = " + std::to_string(k) + ", 2*max|F| = " +
        std::to_string(2 * pattern) + ", n_min = " + std::to_string(n_min));

  const std::size_t p = configs.size();
  const std::size_t N = sample.size();
  Matrix raw(p, N);
  std::vector<PartitionPlan> plans(N);
  parallel_for(N, settings.threads, [&](std::size_t i) {
    auto [plan, classes] = partition(sample.graphs[i], k, tau, derive_seed(settings.seed, i));
    std::vector<double> mean(p, 0.0);
    for (const auto& cls : classes) {
      auto col = density_vector(cls, configs, settings.mode);
      for (std::size_t j = 0; j < p; ++j) mean[j] += col[j];
    }
    for (std::size_t j = 0; j < p; ++j) raw(j, i) = mean[j] / static_cast<double>(k);
    plans[i] = std::move(plan);
  });

  std::vector<std::string> row_names;
  row_names.reserve(p);
  for (const auto& c : configs) row_names.push_back(c.name);

  PipelineResult out;
  out.pca = run_pca(standardize_rows(raw, row_names, sample.ids, settings.unit_sd), settings.r);
  out.plans = std::move(plans);
  out.k = k;
  out.tau = tau;
  out.runtime_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace netpca
