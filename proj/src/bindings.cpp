#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netpca/census.hpp"
#include "netpca/graph.hpp"
#include "netpca/io.hpp"
#include "netpca/kernel.hpp"
#include "netpca/pca.hpp"
#include "netpca/pipeline.hpp"

namespace py = pybind11;
using namespace netpca;

namespace {

py::int_ count_to_int(Count c) {
  const std::string digits = count_to_string(c);
  PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

CountMode mode_from(const std::string& mode) {
  if (mode == "copies") return CountMode::Copies;
  if (mode == "induced") return CountMode::Induced;
  throw std::invalid_argument("mode must be 'copies' or 'induced'");
}

std::vector<SubgraphConfig> configs_from(const std::vector<std::string>& names) {
  if (names.empty()) return default_configuration_set();
  std::vector<SubgraphConfig> configs;
  configs.reserve(names.size());
  for (const auto& n : names) configs.push_back(config_from_name(n));
  return configs;
}

py::array_t<double> matrix_to_array(const Matrix& m) {
  py::array_t<double> a({m.rows, m.cols});
  auto buf = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) buf(i, j) = m(i, j);
  return a;
}

NetworkSample sample_from(const std::vector<Graph>& graphs,
                          const std::vector<std::string>& ids) {
  NetworkSample s;
  s.graphs = graphs;
  if (ids.empty())
    for (std::size_t i = 0; i < graphs.size(); ++i) s.ids.push_back("g" + std::to_string(i));
  else
    s.ids = ids;
  return s;
}

py::dict result_to_dict(const PipelineResult& res, bool subsampled) {
  const PcaResult& pca = res.pca;
  py::dict d;
  d["eigenvalues"] = py::array_t<double>(py::cast(pca.eigenvalues));
  d["loadings"] = matrix_to_array(pca.loadings);
  d["scores"] = matrix_to_array(pca.scores);
  d["variance_explained"] = py::array_t<double>(py::cast(pca.variance_explained));
  d["row_names"] = pca.input.row_names;
  d["graph_ids"] = pca.input.col_ids;
  d["row_means"] = py::array_t<double>(py::cast(pca.input.row_means));
  d["row_sds"] = py::array_t<double>(py::cast(pca.input.row_sds));
  d["dropped_rows"] = pca.input.dropped_rows;
  d["values"] = matrix_to_array(pca.input.values);
  d["r"] = pca.r;
  d["runtime_seconds"] = res.runtime_seconds;
  if (subsampled) {
    d["k"] = res.k;
    d["tau"] = res.tau;
  }
  return d;
}

PipelineSettings settings_from(const std::vector<std::string>& configs, const std::string& mode,
                               bool unit_sd, std::optional<std::size_t> r,
                               std::optional<std::size_t> k, std::optional<std::size_t> tau,
                               std::uint64_t seed, int threads) {
  PipelineSettings s;
  s.configs = configs_from(configs);
  s.mode = mode_from(mode);
  s.unit_sd = unit_sd;
  s.r = r;
  s.k = k;
  s.tau = tau;
  s.seed = seed;
  s.threads = threads;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subgraph-density census and PCA embeddings for samples of graphs";

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
             return Graph(n, edges);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("neighbors",
           [](const Graph& g, VertexId v) {
             auto nb = g.neighbors(v);
             return std::vector<VertexId>(nb.begin(), nb.end());
           },
           py::arg("v"))
      .def_property_readonly("edges", [](const Graph& g) { return g.edges(); })
      .def_property_readonly("label", &Graph::label)
      .def("__repr__", [](const Graph& g) {
        return "Graph(" + std::to_string(g.vertex_count()) + " vertices, " +
               std::to_string(g.edge_count()) + " edges)";
      });

  m.def("load_edge_list",
        [](const std::string& path) { return load_edge_list(path, nullptr); },
        py::arg("path"));
  m.def("write_edge_list", &write_edge_list, py::arg("graph"), py::arg("path"));
  m.def("load_manifest",
        [](const std::string& path) {
          auto s = load_manifest(path);
          return py::make_tuple(s.graphs, s.ids, s.labels);
        },
        py::arg("path"), "Returns (graphs, ids, labels).");

  m.def("configuration_names", [] {
    std::vector<std::string> names;
    for (const auto& c : default_configuration_set()) names.push_back(c.name);
    return names;
  });

  m.def("count",
        [](const Graph& g, const std::string& config, const std::string& mode) {
          return count_to_int(count(g, config_from_name(config), mode_from(mode)));
        },
        py::arg("graph"), py::arg("config"), py::arg("mode") = "copies");
  m.def("brute_force_count",
        [](const Graph& g, const std::string& config, const std::string& mode) {
          return count_to_int(brute_force_count(g, config_from_name(config), mode_from(mode)));
        },
        py::arg("graph"), py::arg("config"), py::arg("mode") = "copies");
  m.def("max_count",
        [](std::size_t n, const std::string& config) {
          return count_to_int(max_count(n, config_from_name(config)));
        },
        py::arg("n"), py::arg("config"));
  m.def("density",
        [](const Graph& g, const std::string& config, const std::string& mode) {
          return density(g, config_from_name(config), mode_from(mode));
        },
        py::arg("graph"), py::arg("config"), py::arg("mode") = "copies");
  m.def("density_vector",
        [](const Graph& g, const std::vector<std::string>& configs, const std::string& mode) {
          auto v = density_vector(g, configs_from(configs), mode_from(mode));
          return py::array_t<double>(py::cast(v));
        },
        py::arg("graph"), py::arg("configs") = std::vector<std::string>{},
        py::arg("mode") = "copies");

  m.def("partition",
        [](const Graph& g, std::size_t k, std::size_t tau, std::uint64_t seed) {
          auto [plan, classes] = partition(g, k, tau, seed);
          return py::make_tuple(py::array_t<std::uint32_t>(py::cast(plan.assignment)), classes);
        },
        py::arg("graph"), py::arg("k"), py::arg("tau"), py::arg("seed") = 0,
        "Returns (assignment, class_subgraphs); assignment labels run 1..k.");

  m.def("default_tau_k",
        [](std::size_t n_min, const std::vector<std::string>& configs) {
          auto [tau, k] = default_tau_k(n_min, configs_from(configs));
          return py::make_tuple(tau, k);
        },
        py::arg("n_min"), py::arg("configs") = std::vector<std::string>{});

  m.def("sample_graph",
        [](std::size_t n, const std::string& kernel, std::uint64_t seed) {
          auto [g, latents] = sample_graph(n, parse_kernel(kernel), seed);
          return py::make_tuple(std::move(g), py::array_t<double>(py::cast(latents)));
        },
        py::arg("n"), py::arg("kernel"), py::arg("seed") = 0,
        "Kernel spec: constant:Q | block:ROW;ROW@BREAKS | prodlin:A,B | logdist:C,S");

  m.def("kernel_moment",
        [](const std::string& kernel, const std::string& config, const std::string& method,
           std::size_t budget, std::uint64_t seed) {
          MomentMethod mm = MomentMethod::Auto;
          if (method == "closed_form") mm = MomentMethod::ClosedForm;
          else if (method == "quadrature") mm = MomentMethod::Quadrature;
          else if (method == "monte_carlo") mm = MomentMethod::MonteCarlo;
          else if (method != "auto")
            throw std::invalid_argument("method must be auto|closed_form|quadrature|monte_carlo");
          auto est = kernel_moment(parse_kernel(kernel), config_from_name(config), mm, budget,
                                   seed);
          py::dict d;
          d["value"] = est.value;
          d["std_error"] = est.std_error;
          const char* names[] = {"auto", "closed_form", "quadrature", "monte_carlo"};
          d["method"] = names[static_cast<int>(est.method)];
          return d;
        },
        py::arg("kernel"), py::arg("config"), py::arg("method") = "auto",
        py::arg("budget") = 200000, py::arg("seed") = 0);

  m.def("pcan",
        [](const std::vector<Graph>& graphs, const std::vector<std::string>& ids,
           const std::vector<std::string>& configs, const std::string& mode, bool unit_sd,
           std::optional<std::size_t> r, int threads) {
          auto sample = sample_from(graphs, ids);
          auto settings = settings_from(configs, mode, unit_sd, r, std::nullopt, std::nullopt,
                                        0, threads);
          return result_to_dict(pcan(sample, settings), false);
        },
        py::arg("graphs"), py::arg("ids") = std::vector<std::string>{},
        py::arg("configs") = std::vector<std::string>{}, py::arg("mode") = "copies",
        py::arg("unit_sd") = true, py::arg("r") = std::nullopt, py::arg("threads") = 0);

  m.def("spcan",
        [](const std::vector<Graph>& graphs, const std::vector<std::string>& ids,
           const std::vector<std::string>& configs, const std::string& mode, bool unit_sd,
           std::optional<std::size_t> r, std::optional<std::size_t> k,
           std::optional<std::size_t> tau, std::uint64_t seed, int threads) {
          auto sample = sample_from(graphs, ids);
          auto settings = settings_from(configs, mode, unit_sd, r, k, tau, seed, threads);
          return result_to_dict(spcan(sample, settings), true);
        },
        py::arg("graphs"), py::arg("ids") = std::vector<std::string>{},
        py::arg("configs") = std::vector<std::string>{}, py::arg("mode") = "copies",
        py::arg("unit_sd") = true, py::arg("r") = std::nullopt, py::arg("k") = std::nullopt,
        py::arg("tau") = std::nullopt, py::arg("seed") = 0, py::arg("threads") = 0);
}
