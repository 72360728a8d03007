#include "netpca/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "netpca/rng.hpp"

namespace netpca {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::string label,
             std::vector<std::string> vertex_names)
    : n_(n), label_(std::move(label)), vertex_names_(std::move(vertex_names)) {
  if (!vertex_names_.empty() && vertex_names_.size() != n_)
    throw std::invalid_argument("vertex name list does not match vertex count");

  for (auto& [u, v] : edges) {
    if (u >= n_ || v >= n_)
      throw std::invalid_argument("edge endpoint " + std::to_string(std::max(u, v)) +
                                  " out of range for " + std::to_string(n_) + " vertices");
    if (u == v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  edge_keys_.reserve(edges_.size() * 2);
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& [u, v] : edges_) {
    edge_keys_.insert(edge_key(u, v));
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  // edges_ is sorted, so each neighbor list comes out sorted as well
}

std::string Graph::vertex_name(VertexId v) const {
  if (v >= n_) throw std::out_of_range("vertex index out of range");
  if (!vertex_names_.empty()) return vertex_names_[v];
  return std::to_string(v);
}

std::size_t NetworkSample::min_vertex_count() const {
  if (graphs.empty()) throw std::invalid_argument("empty sample");
  std::size_t m = graphs.front().vertex_count();
  for (const auto& g : graphs) m = std::min(m, g.vertex_count());
  return m;
}

void NetworkSample::validate() const {
  if (graphs.empty()) throw std::invalid_argument("sample contains no graphs");
  if (ids.size() != graphs.size())
    throw std::invalid_argument("sample ids do not match graph count");
  if (!labels.empty() && labels.size() != graphs.size())
    throw std::invalid_argument("sample labels do not match graph count");
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].empty()) throw std::invalid_argument("empty sample id");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate sample id '" + sorted[i] + "'");
  }
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  const std::size_t m = vertices.size();
  std::vector<VertexId> index(g.vertex_count(), static_cast<VertexId>(-1));
  for (std::size_t i = 0; i < m; ++i) {
    VertexId v = vertices[i];
    if (v >= g.vertex_count()) throw std::invalid_argument("vertex index out of range");
    if (index[v] != static_cast<VertexId>(-1))
      throw std::invalid_argument("duplicate vertex in induced-subgraph selection");
    index[v] = static_cast<VertexId>(i);
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    for (VertexId w : g.neighbors(vertices[i])) {
      VertexId j = index[w];
      if (j != static_cast<VertexId>(-1) && j > i)
        edges.emplace_back(static_cast<VertexId>(i), j);
    }
  }

  std::vector<std::string> names;
  if (!g.vertex_names().empty()) {
    names.reserve(m);
    for (VertexId v : vertices) names.push_back(g.vertex_names()[v]);
  }
  return Graph(m, std::move(edges), g.label(), std::move(names));
}

std::pair<PartitionPlan, std::vector<Graph>> partition(const Graph& g, std::size_t k,
                                                       std::size_t tau, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (k < 1) throw std::invalid_argument("class count must be at least 1");
  if (tau < 1) throw std::invalid_argument("minimum class size must be at least 1");
  if (k * tau > n)
    throw std::invalid_argument("infeasible partition: K*tau = " + std::to_string(k * tau) +
                                " exceeds the " + std::to_string(n) +
                                " available vertices; need K*tau <= n");

  Rng rng(seed);
  std::vector<std::uint32_t> assignment(n);
  std::vector<std::size_t> class_size(k);

  bool ok = false;
  for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
    std::fill(class_size.begin(), class_size.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      auto c = static_cast<std::uint32_t>(rng.next_below(k));
      assignment[v] = c + 1;
      ++class_size[c];
    }
    ok = std::all_of(class_size.begin(), class_size.end(),
                     [tau](std::size_t s) { return s >= tau; });
  }

  if (!ok) {
    // Guaranteed fallback: shuffle, deal the first k*tau vertices round-robin
    // (every class gets exactly tau of them), place the rest uniformly.
    std::vector<VertexId> order(n);
    for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<VertexId>(v);
    for (std::size_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[rng.next_below(i)]);
    std::fill(class_size.begin(), class_size.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t c = i < k * tau ? i % k : rng.next_below(k);
      assignment[order[i]] = static_cast<std::uint32_t>(c + 1);
      ++class_size[c];
    }
  }

  std::vector<std::vector<VertexId>> members(k);
  for (std::size_t c = 0; c < k; ++c) members[c].reserve(class_size[c]);
  for (std::size_t v = 0; v < n; ++v)
    members[assignment[v] - 1].push_back(static_cast<VertexId>(v));

  std::vector<Graph> classes;
  classes.reserve(k);
  for (std::size_t c = 0; c < k; ++c) classes.push_back(induced_subgraph(g, members[c]));

  PartitionPlan plan;
  plan.assignment = std::move(assignment);
  plan.k = k;
  plan.tau = tau;
  plan.seed = seed;
  return {std::move(plan), std::move(classes)};
}

}  // namespace netpca
