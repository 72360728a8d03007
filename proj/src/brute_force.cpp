#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "netpca/census.hpp"

namespace netpca {

// Reference counter by exhaustive subset enumeration. Deliberately shares no
// machinery with count(): occurrences are found by trying every vertex
// subset and every mapping of pattern vertices onto it.
Count brute_force_count(const Graph& g, const SubgraphConfig& config, CountMode mode) {
  const std::size_t n = g.vertex_count();
  if (n > 12)
    throw std::invalid_argument("brute-force counting is limited to 12 vertices");

  if (config.kind == ConfigKind::Isolate) {
    Count c = 0;
    for (VertexId v = 0; v < n; ++v)
      if (g.degree(v) == 0) ++c;
    return c;
  }

  const int s = config.node_count;
  if (static_cast<std::size_t>(s) > n) return 0;

  bool pattern_adj[6][6] = {};
  for (const auto& [a, b] : pattern_edges(config)) {
    pattern_adj[a][b] = true;
    pattern_adj[b][a] = true;
  }

  std::vector<VertexId> subset(static_cast<std::size_t>(s));
  std::vector<int> perm(static_cast<std::size_t>(s));
  Count embeddings = 0;      // pattern-edge-preserving injections
  Count induced_hits = 0;    // subsets inducing exactly the pattern

  // ascending combinations over {0,...,n-1}
  std::iota(subset.begin(), subset.end(), 0);
  for (;;) {
    std::iota(perm.begin(), perm.end(), 0);
    bool subset_matches = false;
    do {
      bool copies_ok = true;
      bool exact_ok = true;
      for (int i = 0; i < s && (copies_ok || exact_ok); ++i)
        for (int j = i + 1; j < s; ++j) {
          bool host = g.has_edge(subset[static_cast<std::size_t>(perm[i])],
                                 subset[static_cast<std::size_t>(perm[j])]);
          if (pattern_adj[i][j] && !host) { copies_ok = false; exact_ok = false; break; }
          if (pattern_adj[i][j] != host) exact_ok = false;
        }
      if (copies_ok) ++embeddings;
      if (exact_ok) subset_matches = true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (subset_matches) ++induced_hits;

    // advance the combination
    int i = s - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] ==
                         static_cast<VertexId>(n - static_cast<std::size_t>(s - i)))
      --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }

  if (mode == CountMode::Induced) return induced_hits;
  if (embeddings % Count(config.aut_size) != 0)
    throw std::logic_error("embedding count not divisible by automorphism count");
  return embeddings / Count(config.aut_size);
}

}  // namespace netpca
