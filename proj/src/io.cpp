#include "netpca/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace netpca {

namespace {

// Strips a trailing '\r' (files written on Windows) and '#' comments.
std::string clean_line(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.pop_back();
  return line;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.erase(0, 1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.pop_back();
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Graph load_edge_list(const std::filesystem::path& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path.string() + "'");

  std::unordered_map<std::string, VertexId> index;
  std::vector<std::string> names;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<VertexId>(names.size()));
    if (inserted) names.push_back(token);
    return it->second;
  };

  LoadReport counts;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(clean_line(line));
    std::string a, b, extra;
    if (!(tokens >> a)) continue;
    if (!(tokens >> b)) {
      intern(a);
      continue;
    }
    if (tokens >> extra)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected one or two tokens per line");
    VertexId u = intern(a);
    VertexId v = intern(b);
    if (u == v) {
      ++counts.self_loops;
      continue;
    }
    auto [lo, hi] = std::minmax(u, v);
    std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
    if (!seen.insert(key).second) {
      ++counts.duplicate_edges;
      continue;
    }
    edges.emplace_back(lo, hi);
  }

  if (names.empty())
    throw std::runtime_error("edge list '" + path.string() + "' declares no vertices");
  if (report) *report = counts;
  const std::size_t n = names.size();
  return Graph(n, std::move(edges), path.stem().string(), std::move(names));
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list '" + path.string() + "'");
  for (const auto& [u, v] : g.edges()) out << g.vertex_name(u) << ' ' << g.vertex_name(v) << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) out << g.vertex_name(v) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

NetworkSample load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path.string() + "'");

  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("manifest '" + path.string() + "' is empty");
  auto columns = split_csv(clean_line(header));
  std::size_t id_col = SIZE_MAX, path_col = SIZE_MAX, label_col = SIZE_MAX;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == "id") id_col = c;
    else if (columns[c] == "path") path_col = c;
    else if (columns[c] == "label") label_col = c;
  }
  if (id_col == SIZE_MAX || path_col == SIZE_MAX)
    throw std::runtime_error("manifest '" + path.string() +
                             "' must have header columns id,path[,label]");

  NetworkSample sample;
  bool have_labels = label_col != SIZE_MAX;
  auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = clean_line(line);
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() <= std::max(id_col, path_col))
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": row has too few columns");
    const std::string& id = fields[id_col];
    std::filesystem::path graph_path(fields[path_col]);
    if (graph_path.is_relative()) graph_path = base / graph_path;
    Graph g;
    try {
      g = load_edge_list(graph_path);
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + " (id '" + id +
                               "'): " + e.what());
    }
    sample.graphs.push_back(std::move(g));
    sample.ids.push_back(id);
    if (have_labels)
      sample.labels.push_back(fields.size() > label_col ? fields[label_col] : "");
  }

  try {
    sample.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error("manifest '" + path.string() + "': " + e.what());
  }
  return sample;
}

}  // namespace netpca
