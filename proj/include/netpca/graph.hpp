#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace netpca {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Immutable simple undirected graph. Edges are stored once with u < v;
// neighbor lists are sorted. Vertices may carry string names (tokens from an
// edge-list file); unnamed vertices print as their decimal index.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges, std::string label = {},
        std::vector<std::string> vertex_names = {});

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  bool has_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return edge_keys_.contains((static_cast<std::uint64_t>(u) << 32) | v);
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  std::string vertex_name(VertexId v) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::string label_;
  std::vector<std::string> vertex_names_;
};

// A sample of graphs analyzed together. `labels` is empty or parallel to
// `graphs`; ids are unique, non-empty identifiers.
struct NetworkSample {
  std::vector<Graph> graphs;
  std::vector<std::string> ids;
  std::vector<std::string> labels;

  std::size_t size() const { return graphs.size(); }
  std::size_t min_vertex_count() const;
  void validate() const;
};

// Assignment of one graph's vertices to classes 1..k (0 never appears).
struct PartitionPlan {
  std::vector<std::uint32_t> assignment;
  std::size_t k = 0;
  std::size_t tau = 0;
  std::uint64_t seed = 0;
};

// Subgraph induced on `vertices` (distinct, in range). Vertex i of the result
// corresponds to vertices[i]; names are carried over, the label is kept.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

// Random partition into k classes, each of size >= tau. Labels are drawn
// i.i.d. uniform and rejected until every class reaches tau (up to 1000
// attempts); afterwards a constructive fallback shuffles the vertices, deals
// the first k*tau round-robin and assigns the rest i.i.d. Deterministic in
// (g, k, tau, seed). Throws if k*tau > n or k < 1 or tau < 1.
std::pair<PartitionPlan, std::vector<Graph>> partition(const Graph& g, std::size_t k,
                                                       std::size_t tau, std::uint64_t seed);

}  // namespace netpca
