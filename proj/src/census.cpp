#include "netpca/census.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netpca {

namespace {

Count binomial128(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Count result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::uint64_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::uint64_t c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

// |{x in a cap b : x > floor}| for sorted inputs
std::uint64_t intersection_above(std::span<const VertexId> a, const std::vector<VertexId>& b,
                                 VertexId floor) {
  std::uint64_t c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else {
      if (a[i] > floor) ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

// Per-graph quantities shared by the triangle and pentagon counters.
struct GraphStats {
  const Graph& g;
  bool have_triangles = false;
  Count triangle_total = 0;
  std::vector<std::uint64_t> tri_per_vertex;  // triangles containing v

  explicit GraphStats(const Graph& graph) : g(graph) {}

  void ensure_triangles() {
    if (have_triangles) return;
    const std::size_t n = g.vertex_count();
    std::vector<std::uint64_t> acc(n, 0);  // sum of codegrees over incident edges
    Count total3 = 0;
    for (const auto& [u, v] : g.edges()) {
      std::uint64_t c = intersection_size(g.neighbors(u), g.neighbors(v));
      acc[u] += c;
      acc[v] += c;
      total3 += c;
    }
    // every triangle is seen once per edge, and twice per incident vertex
    if (total3 % 3 != 0) throw std::logic_error("triangle count not divisible by 3");
    triangle_total = total3 / 3;
    tri_per_vertex.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) tri_per_vertex[v] = acc[v] / 2;
    have_triangles = true;
  }
};

Count count_isolates(const Graph& g) {
  Count c = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) ++c;
  return c;
}

Count count_star_copies(const Graph& g, int k) {
  // center/leaf are interchangeable in a single edge, so k = 1 is |E|,
  // not the sum of degrees
  if (k == 1) return g.edge_count();
  Count total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    total += binomial128(g.degree(v), static_cast<std::uint64_t>(k));
  return total;
}

Count count_cycle4_copies(const Graph& g) {
  // sum over ordered vertex pairs (u,w) of (codeg choose 2); every
  // four-cycle contributes twice per diagonal, i.e. 4 in total
  const std::size_t n = g.vertex_count();
  Count total = 0;
  std::vector<std::uint32_t> paths(n, 0);
  std::vector<VertexId> touched;
  for (VertexId u = 0; u < n; ++u) {
    touched.clear();
    for (VertexId a : g.neighbors(u)) {
      for (VertexId w : g.neighbors(a)) {
        if (w == u) continue;
        if (paths[w]++ == 0) touched.push_back(w);
      }
    }
    for (VertexId w : touched) {
      std::uint64_t c = paths[w];
      paths[w] = 0;
      total += Count(c * (c - 1) / 2);
    }
  }
  if (total % 4 != 0) throw std::logic_error("four-cycle count not divisible by 4");
  return total / 4;
}

Count count_cycle5_copies(GraphStats& stats) {
  // Rooted at v: walks v-a-x, edge {x,y} away from v, walk y-b-v. With
  // p2[t] = |N(v) cap N(t)|, the pairs (a,b) giving five distinct vertices
  // number (p2[x] - [y ~ v])(p2[y] - [x ~ v]) minus the common-neighbor
  // choices a = b, which total sum_{c in N(v)} t_c - 2 t_v over all edges.
  // Each pentagon is seen once per root.
  const Graph& g = stats.g;
  const std::size_t n = g.vertex_count();
  if (n < 5) return 0;
  stats.ensure_triangles();

  std::vector<std::uint32_t> p2(n, 0);
  std::vector<std::uint8_t> near(n, 0);
  std::vector<VertexId> touched;
  __int128 total = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) < 2) continue;
    touched.clear();
    for (VertexId a : g.neighbors(v)) {
      near[a] = 1;
      for (VertexId x : g.neighbors(a)) {
        if (x == v) continue;
        if (p2[x]++ == 0) touched.push_back(x);
      }
    }

    __int128 local = 0;
    for (const auto& [x, y] : g.edges()) {
      if (x == v || y == v) continue;
      std::int64_t alpha = std::int64_t(p2[x]) - near[y];
      std::int64_t beta = std::int64_t(p2[y]) - near[x];
      if (alpha > 0 && beta > 0) local += static_cast<__int128>(alpha) * beta;
    }
    std::uint64_t repeats = 0;  // a = b cases
    for (VertexId c : g.neighbors(v)) repeats += stats.tri_per_vertex[c];
    repeats -= 2 * stats.tri_per_vertex[v];
    total += local - static_cast<__int128>(repeats);

    for (VertexId x : touched) p2[x] = 0;
    for (VertexId a : g.neighbors(v)) near[a] = 0;
  }
  if (total < 0 || total % 5 != 0) throw std::logic_error("five-cycle root sum invalid");
  return static_cast<Count>(total / 5);
}

// --- induced variants ---------------------------------------------------

// Independent k-subsets of a small vertex set given its internal adjacency
// as bitsets (words per row). Candidates are explored in ascending order.
Count independent_subsets(const std::vector<std::uint64_t>& adj, std::size_t d,
                          std::size_t words, std::vector<std::uint64_t>& cand, int need) {
  auto popcount_all = [&](const std::uint64_t* w) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < words; ++i) c += static_cast<std::uint64_t>(__builtin_popcountll(w[i]));
    return c;
  };
  std::uint64_t* level = cand.data() + static_cast<std::size_t>(need) * words;
  if (need == 1) return popcount_all(level);

  Count total = 0;
  std::uint64_t* next = level - words;
  for (std::size_t wi = 0; wi < words; ++wi) {
    std::uint64_t bits = level[wi];
    while (bits) {
      std::size_t j = wi * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
      bits &= bits - 1;
      // candidates above j that are non-adjacent to j
      const std::uint64_t* row = adj.data() + j * words;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t above = 0;
        if (i > wi) above = ~0ULL;
        else if (i == wi) above = (j % 64 == 63) ? 0 : (~0ULL << (j % 64 + 1));
        next[i] = level[i] & above & ~row[i];
        carry += static_cast<std::uint64_t>(__builtin_popcountll(next[i]));
      }
      if (carry >= static_cast<std::uint64_t>(need - 1))
        total += independent_subsets(adj, d, words, cand, need - 1);
    }
  }
  return total;
}

Count count_star_induced(const Graph& g, int k) {
  if (k == 1) return g.edge_count();  // nothing to exclude between two vertices
  const std::size_t n = g.vertex_count();
  Count total = 0;
  std::vector<std::uint64_t> adj;
  std::vector<std::uint64_t> cand;
  for (VertexId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    const std::size_t d = nb.size();
    if (d < static_cast<std::size_t>(k)) continue;
    const std::size_t words = (d + 63) / 64;
    adj.assign(d * words, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (g.has_edge(nb[i], nb[j])) {
          adj[i * words + j / 64] |= 1ULL << (j % 64);
          adj[j * words + i / 64] |= 1ULL << (i % 64);
        }
    cand.assign(static_cast<std::size_t>(k + 1) * words, 0);
    std::uint64_t* top = cand.data() + static_cast<std::size_t>(k) * words;
    for (std::size_t i = 0; i < d; ++i) top[i / 64] |= 1ULL << (i % 64);
    total += independent_subsets(adj, d, words, cand, k);
  }
  return total;
}

Count count_cycle4_induced(const Graph& g) {
  // per non-adjacent pair {u,w}: non-adjacent pairs among the common
  // neighbors; each induced four-cycle is counted at both diagonals
  const std::size_t n = g.vertex_count();
  Count total = 0;
  std::vector<std::uint32_t> paths(n, 0);
  std::vector<VertexId> touched;
  std::vector<VertexId> common;
  for (VertexId u = 0; u < n; ++u) {
    touched.clear();
    for (VertexId a : g.neighbors(u))
      for (VertexId w : g.neighbors(a)) {
        if (w <= u) continue;
        if (paths[w]++ == 0) touched.push_back(w);
      }
    for (VertexId w : touched) {
      std::uint32_t c = paths[w];
      paths[w] = 0;
      if (c < 2 || g.has_edge(u, w)) continue;
      common.clear();
      auto nu = g.neighbors(u);
      auto nw = g.neighbors(w);
      std::size_t i = 0, j = 0;
      while (i < nu.size() && j < nw.size()) {
        if (nu[i] < nw[j]) ++i;
        else if (nu[i] > nw[j]) ++j;
        else { common.push_back(nu[i]); ++i; ++j; }
      }
      std::uint64_t edges_within = 0;
      for (VertexId a : common)
        edges_within += intersection_above(g.neighbors(a), common, a);
      std::uint64_t pairs = static_cast<std::uint64_t>(common.size()) *
                            (common.size() - 1) / 2;
      total += Count(pairs - edges_within);
    }
  }
  if (total % 2 != 0) throw std::logic_error("induced four-cycle count not divisible by 2");
  return total / 2;
}

Count count_cycle5_induced(const Graph& g) {
  // root v, middle edge {x,y} disjoint from N[v]; a joins v to x, b joins v
  // to y, with no chords among {v,a,x,y,b}; one count per root
  const std::size_t n = g.vertex_count();
  if (n < 5) return 0;
  Count total = 0;
  std::vector<std::uint8_t> near(n, 0);
  std::vector<VertexId> side_a, side_b;
  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) < 2) continue;
    for (VertexId a : g.neighbors(v)) near[a] = 1;
    for (const auto& [x, y] : g.edges()) {
      if (x == v || y == v || near[x] || near[y]) continue;
      side_a.clear();
      for (VertexId a : g.neighbors(v))
        if (g.has_edge(a, x) && !g.has_edge(a, y)) side_a.push_back(a);
      if (side_a.empty()) continue;
      side_b.clear();
      for (VertexId b : g.neighbors(v))
        if (g.has_edge(b, y) && !g.has_edge(b, x)) side_b.push_back(b);
      if (side_b.empty()) continue;
      for (VertexId a : side_a)
        for (VertexId b : side_b)
          if (!g.has_edge(a, b)) ++total;  // a == b impossible: sides are disjoint
    }
    for (VertexId a : g.neighbors(v)) near[a] = 0;
  }
  if (total % 5 != 0) throw std::logic_error("induced five-cycle count not divisible by 5");
  return total / 5;
}

Count count_with_stats(GraphStats& stats, const SubgraphConfig& config, CountMode mode) {
  const Graph& g = stats.g;
  switch (config.kind) {
    case ConfigKind::Isolate:
      return count_isolates(g);
    case ConfigKind::Star:
      return mode == CountMode::Copies ? count_star_copies(g, config.star_k)
                                       : count_star_induced(g, config.star_k);
    case ConfigKind::Triangle:
      stats.ensure_triangles();
      return stats.triangle_total;  // a triangle admits no extra edges
    case ConfigKind::Cycle4:
      return mode == CountMode::Copies ? count_cycle4_copies(g) : count_cycle4_induced(g);
    case ConfigKind::Cycle5:
      return mode == CountMode::Copies ? count_cycle5_copies(stats) : count_cycle5_induced(g);
  }
  throw std::logic_error("unknown configuration kind");
}

}  // namespace

SubgraphConfig SubgraphConfig::isolate() {
  return {ConfigKind::Isolate, 0, 1, 0, 1, "isolate"};
}

SubgraphConfig SubgraphConfig::star(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("star leaf count must be in 1..5");
  std::int64_t aut = 1;
  if (k == 1) aut = 2;  // the two endpoints of a single edge are symmetric
  else
    for (int i = 2; i <= k; ++i) aut *= i;
  return {ConfigKind::Star, k, k + 1, k, aut, "star" + std::to_string(k)};
}

SubgraphConfig SubgraphConfig::triangle() {
  return {ConfigKind::Triangle, 0, 3, 3, 6, "triangle"};
}

SubgraphConfig SubgraphConfig::cycle4() {
  return {ConfigKind::Cycle4, 0, 4, 4, 8, "cycle4"};
}

SubgraphConfig SubgraphConfig::cycle5() {
  return {ConfigKind::Cycle5, 0, 5, 5, 10, "cycle5"};
}

std::vector<SubgraphConfig> default_configuration_set() {
  std::vector<SubgraphConfig> set;
  set.push_back(SubgraphConfig::isolate());
  for (int k = 1; k <= 5; ++k) set.push_back(SubgraphConfig::star(k));
  set.push_back(SubgraphConfig::triangle());
  set.push_back(SubgraphConfig::cycle4());
  set.push_back(SubgraphConfig::cycle5());
  return set;
}

SubgraphConfig config_from_name(std::string_view name) {
  for (const auto& c : default_configuration_set())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown configuration '" + std::string(name) +
                              "'; valid names: isolate, star1..star5, triangle, cycle4, cycle5");
}

std::vector<std::pair<int, int>> pattern_edges(const SubgraphConfig& config) {
  std::vector<std::pair<int, int>> edges;
  switch (config.kind) {
    case ConfigKind::Isolate:
      break;
    case ConfigKind::Star:
      for (int i = 1; i <= config.star_k; ++i) edges.emplace_back(0, i);
      break;
    case ConfigKind::Triangle:
    case ConfigKind::Cycle4:
    case ConfigKind::Cycle5:
      for (int i = 0; i < config.node_count; ++i)
        edges.emplace_back(i, (i + 1) % config.node_count);
      break;
  }
  return edges;
}

Count count(const Graph& g, const SubgraphConfig& config, CountMode mode) {
  GraphStats stats(g);
  return count_with_stats(stats, config, mode);
}

Count max_count(std::size_t n, const SubgraphConfig& config) {
  if (config.kind == ConfigKind::Isolate) return n;
  if (n < static_cast<std::size_t>(config.node_count)) return 0;
  Count falling = 1;
  for (int i = 0; i < config.node_count; ++i) falling *= Count(n - static_cast<std::size_t>(i));
  if (falling % Count(config.aut_size) != 0)
    throw std::logic_error("normalizer not divisible by automorphism count");
  return falling / Count(config.aut_size);
}

double density(const Graph& g, const SubgraphConfig& config, CountMode mode) {
  Count cap = max_count(g.vertex_count(), config);
  if (cap == 0)
    throw std::invalid_argument("graph with " + std::to_string(g.vertex_count()) +
                                " vertices is too small for configuration '" + config.name + "'");
  return count_to_double(count(g, config, mode)) / count_to_double(cap);
}

std::vector<double> density_vector(const Graph& g, std::span<const SubgraphConfig> configs,
                                   CountMode mode) {
  GraphStats stats(g);
  std::vector<double> result;
  result.reserve(configs.size());
  for (const auto& config : configs) {
    Count cap = max_count(g.vertex_count(), config);
    if (cap == 0)
      throw std::invalid_argument("graph with " + std::to_string(g.vertex_count()) +
                                  " vertices is too small for configuration '" + config.name +
                                  "'");
    result.push_back(count_to_double(count_with_stats(stats, config, mode)) /
                     count_to_double(cap));
  }
  return result;
}

std::string count_to_string(Count c) {
  if (c == 0) return "0";
  std::string digits;
  while (c > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

double count_to_double(Count c) {
  constexpr double two64 = 18446744073709551616.0;
  return static_cast<double>(static_cast<std::uint64_t>(c >> 64)) * two64 +
         static_cast<double>(static_cast<std::uint64_t>(c));
}

}  // namespace netpca
