#pragma once

#include <cstddef>
#include <filesystem>

#include "netpca/graph.hpp"

namespace netpca {

// Counts of lines dropped while reading an edge list.
struct LoadReport {
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
};

// Reads a whitespace-separated edge list. Each non-empty line holds two
// tokens (an edge) or one token (an isolated-vertex declaration); '#' starts
// a comment. Tokens become vertices in order of first appearance. Self-loops
// and repeated edges are dropped and tallied in `report`. Throws on lines
// with three or more tokens and on files declaring no vertices at all.
Graph load_edge_list(const std::filesystem::path& path, LoadReport* report = nullptr);

// Inverse of load_edge_list: one line per edge (token pair), one line per
// isolated vertex. Loading the result again reproduces the same graph.
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// Reads a sample manifest: CSV with header columns id,path[,label]; paths are
// resolved relative to the manifest's directory. Throws on duplicate ids,
// missing columns or unreadable graph files, naming the offending row.
NetworkSample load_manifest(const std::filesystem::path& path);

}  // namespace netpca
