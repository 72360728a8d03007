#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netpca/graph.hpp"

namespace netpca {

// Occurrence counts use 128-bit accumulation: the normalizer for a 5-vertex
// pattern is n(n-1)...(n-4)/|Aut|, which overflows 64 bits near n = 10^4.
using Count = unsigned __int128;

enum class ConfigKind { Isolate, Star, Triangle, Cycle4, Cycle5 };

// Copies: occurrences whose edges are present in the host graph (extra edges
// among the chosen vertices are fine). Induced: the chosen vertices must
// reproduce the pattern exactly. Isolates are degree-0 vertices either way.
enum class CountMode { Copies, Induced };

struct SubgraphConfig {
  ConfigKind kind = ConfigKind::Isolate;
  int star_k = 0;  // number of leaves, Star only
  int node_count = 1;
  int edge_count = 0;
  std::int64_t aut_size = 1;
  std::string name = "isolate";

  static SubgraphConfig isolate();
  static SubgraphConfig star(int k);  // k in 1..5
  static SubgraphConfig triangle();
  static SubgraphConfig cycle4();
  static SubgraphConfig cycle5();
};

// isolate, star1..star5, triangle, cycle4, cycle5 in that order
std::vector<SubgraphConfig> default_configuration_set();

// Accepts the names produced by default_configuration_set(); throws on
// anything else, listing the valid names.
SubgraphConfig config_from_name(std::string_view name);

// Pattern edges on vertices 0..node_count-1 (empty for the isolate). Stars
// have center 0; cycles are 0-1-...-0.
std::vector<std::pair<int, int>> pattern_edges(const SubgraphConfig& config);

Count count(const Graph& g, const SubgraphConfig& config,
            CountMode mode = CountMode::Copies);

// Largest possible count on n vertices: n for the isolate, otherwise
// n! / ((n - |F|)! * |Aut(F)|). Identical in both modes.
Count max_count(std::size_t n, const SubgraphConfig& config);

// count / max_count, in [0,1]. Throws when max_count is zero (n < |F|).
double density(const Graph& g, const SubgraphConfig& config,
               CountMode mode = CountMode::Copies);

// Densities for several configurations, sharing per-graph precomputation.
std::vector<double> density_vector(const Graph& g, std::span<const SubgraphConfig> configs,
                                   CountMode mode = CountMode::Copies);

// Reference implementation by subset enumeration; O(n^|F| * |F|!), guarded to
// n <= 12. Shares nothing with count() beyond the pattern edge lists.
Count brute_force_count(const Graph& g, const SubgraphConfig& config, CountMode mode);

std::string count_to_string(Count c);
double count_to_double(Count c);

}  // namespace netpca
