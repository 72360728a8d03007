#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netpca/census.hpp"
#include "netpca/io.hpp"
#include "netpca/json_writer.hpp"
#include "netpca/kernel.hpp"
#include "netpca/parallel.hpp"
#include "netpca/pipeline.hpp"
#include "netpca/rng.hpp"
#include "netpca/verify.hpp"

namespace {

using namespace netpca;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<SubgraphConfig> parse_configs(const std::string& csv) {
  std::vector<SubgraphConfig> configs;
  if (csv.empty()) return default_configuration_set();
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    configs.push_back(config_from_name(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return configs;
}

CountMode parse_mode(const std::string& mode) {
  if (mode == "copies") return CountMode::Copies;
  if (mode == "induced") return CountMode::Induced;
  throw CLI::ValidationError("--mode must be 'copies' or 'induced'");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// --- census ---------------------------------------------------------------

int cmd_census(const std::string& manifest, const std::string& out_dir,
               const std::string& configs_csv, const std::string& mode_name, int threads) {
  auto sample = load_manifest(manifest);
  auto configs = parse_configs(configs_csv);
  auto mode = parse_mode(mode_name);

  std::vector<std::string> rows(sample.size());
  parallel_for(sample.size(), threads, [&](std::size_t i) {
    const Graph& g = sample.graphs[i];
    std::string block;
    for (const auto& c : configs) {
      Count cnt = count(g, c, mode);
      Count cap = max_count(g.vertex_count(), c);
      double dens = cap > 0 ? count_to_double(cnt) / count_to_double(cap) : 0.0;
      block += sample.ids[i];
      block += ',';
      block += c.name;
      block += ',';
      block += count_to_string(cnt);
      block += ',';
      block += count_to_string(cap);
      block += ',';
      block += cap > 0 ? fmt(dens) : "";
      block += '\n';
    }
    rows[i] = std::move(block);
  });

  std::filesystem::create_directories(out_dir);
  std::string csv = "graph_id,config,count,max_count,density\n";
  for (const auto& r : rows) csv += r;
  write_file(std::filesystem::path(out_dir) / "census.csv", csv);
  std::cout << "census.csv: " << sample.size() * configs.size() << " rows for "
            << sample.size() << " graphs\n";
  return 0;
}

// --- embed ----------------------------------------------------------------

std::string result_json(const std::string& algorithm, const PipelineResult& res,
                        const PipelineSettings& settings,
                        const std::vector<SubgraphConfig>& configs) {
  const PcaResult& pca = res.pca;
  const std::size_t p = pca.eigenvalues.size();
  JsonWriter w;
  w.begin_object();
  w.key("schema_version");
  w.value(std::uint64_t{1});
  w.key("algorithm");
  w.value(algorithm);
  w.key("mode");
  w.value(settings.mode == CountMode::Copies ? "copies" : "induced");
  w.key("unit_sd");
  w.value(settings.unit_sd);
  w.key("seed");
  w.value(settings.seed);
  w.key("r");
  w.value(pca.r);
  if (algorithm == "spcan") {
    w.key("tau");
    w.value(res.tau);
    w.key("k");
    w.value(res.k);
  }
  w.key("configs");
  w.begin_array();
  for (const auto& c : configs) w.value(c.name);
  w.end_array();
  w.key("graph_ids");
  w.begin_array();
  for (const auto& id : pca.input.col_ids) w.value(id);
  w.end_array();
  w.key("eigenvalues");
  w.begin_array();
  for (double v : pca.eigenvalues) w.value(v);
  w.end_array();
  w.key("variance_explained");
  w.begin_array();
  for (double v : pca.variance_explained) w.value(v);
  w.end_array();
  w.key("cumulative_variance_explained");
  w.begin_array();
  double cum = 0.0;
  for (double v : pca.variance_explained) {
    cum += v;
    w.value(cum);
  }
  w.end_array();
  w.key("loadings");
  w.begin_array();
  for (std::size_t j = 0; j < p; ++j) {
    w.begin_object();
    w.key("config");
    w.value(pca.input.row_names[j]);
    w.key("values");
    w.begin_array();
    for (std::size_t l = 0; l < p; ++l) w.value(pca.loadings(j, l));
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("row_means");
  w.begin_array();
  for (double v : pca.input.row_means) w.value(v);
  w.end_array();
  w.key("row_sds");
  w.begin_array();
  for (double v : pca.input.row_sds) w.value(v);
  w.end_array();
  w.key("dropped_rows");
  w.begin_array();
  for (const auto& [name, reason] : pca.input.dropped_rows) {
    w.begin_object();
    w.key("config");
    w.value(name);
    w.key("reason");
    w.value(reason);
    w.end_object();
  }
  w.end_array();
  w.key("near_degenerate_gaps");
  w.begin_array();
  for (bool b : pca.near_degenerate) w.value(b);
  w.end_array();
  w.key("runtime_seconds");
  w.value(res.runtime_seconds);
  w.end_object();
  return w.str();
}

int cmd_embed(const std::string& manifest, const std::string& out_dir, const std::string& algo,
              const std::string& configs_csv, const std::string& mode_name,
              const std::string& r_text, std::optional<std::size_t> tau,
              std::optional<std::size_t> k, std::uint64_t seed, bool no_unit_sd, int threads,
              bool gnuplot) {
  auto sample = load_manifest(manifest);

  PipelineSettings settings;
  settings.configs = parse_configs(configs_csv);
  settings.mode = parse_mode(mode_name);
  settings.unit_sd = !no_unit_sd;
  settings.seed = seed;
  settings.threads = threads;
  settings.tau = tau;
  settings.k = k;
  if (r_text != "all") {
    try {
      settings.r = std::stoul(r_text);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--r must be a positive integer or 'all'");
    }
  }

  PipelineResult res = algo == "pcan" ? pcan(sample, settings) : spcan(sample, settings);
  const PcaResult& pca = res.pca;

  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "result.json",
             result_json(algo, res, settings, settings.configs) + "\n");

  std::string scores_csv = "graph_id,label";
  for (std::size_t l = 1; l <= pca.r; ++l) scores_csv += ",score_" + std::to_string(l);
  scores_csv += '\n';
  for (std::size_t i = 0; i < pca.input.col_ids.size(); ++i) {
    scores_csv += pca.input.col_ids[i];
    scores_csv += ',';
    if (!sample.labels.empty()) scores_csv += sample.labels[i];
    for (std::size_t l = 0; l < pca.r; ++l) scores_csv += "," + fmt(pca.scores(i, l));
    scores_csv += '\n';
  }
  write_file(std::filesystem::path(out_dir) / "scores.csv", scores_csv);

  std::string contrib_csv = "config,pc,percent\n";
  for (std::size_t l = 0; l < pca.r; ++l) {
    std::vector<double> loading(pca.eigenvalues.size());
    for (std::size_t j = 0; j < loading.size(); ++j) loading[j] = pca.loadings(j, l);
    auto contrib = contributions(loading);
    for (std::size_t j = 0; j < loading.size(); ++j) {
      contrib_csv += pca.input.row_names[j];
      contrib_csv += ',';
      contrib_csv += std::to_string(l + 1);
      contrib_csv += ',';
      contrib_csv += fmt(contrib[j]);
      contrib_csv += '\n';
    }
  }
  write_file(std::filesystem::path(out_dir) / "contributions.csv", contrib_csv);

  if (gnuplot) {
    std::string scree =
        "set datafile separator ','\n"
        "set terminal pngcairo size 800,600\n"
        "set output 'scree.png'\n"
        "set xlabel 'component'\n"
        "set ylabel 'variance explained'\n"
        "set yrange [0:*]\n"
        "plot 'scree.dat' using 1:2 with linespoints title 'per component', \\\n"
        "     'scree.dat' using 1:3 with linespoints title 'cumulative'\n";
    std::string scree_dat;
    double cum = 0.0;
    for (std::size_t l = 0; l < pca.variance_explained.size(); ++l) {
      cum += pca.variance_explained[l];
      scree_dat += std::to_string(l + 1) + "," + fmt(pca.variance_explained[l]) + "," +
                   fmt(cum) + "\n";
    }
    write_file(std::filesystem::path(out_dir) / "scree.dat", scree_dat);
    write_file(std::filesystem::path(out_dir) / "scree.gp", scree);
    if (pca.r >= 2) {
      std::string scatter =
          "set datafile separator ','\n"
          "set terminal pngcairo size 800,600\n"
          "set output 'scores.png'\n"
          "set xlabel 'score 1'\n"
          "set ylabel 'score 2'\n"
          "plot 'scores.csv' every ::1 using 3:4 with points pt 7 title 'graphs'\n";
      write_file(std::filesystem::path(out_dir) / "scores.gp", scatter);
    }
  }

  std::cout << algo << ": " << pca.eigenvalues.size() << " components, leading share "
            << fmt(pca.variance_explained.empty() ? 0.0 : pca.variance_explained[0]) << "\n";
  return 0;
}

// --- generate ---------------------------------------------------------------

int cmd_generate(const std::string& kernel_spec, std::size_t n, std::size_t count,
                 std::uint64_t seed, const std::string& out_dir) {
  Kernel kernel = parse_kernel(kernel_spec);
  if (n < 1) throw std::runtime_error("--n must be at least 1");
  if (count < 1) throw std::runtime_error("--count must be at least 1");

  std::filesystem::create_directories(out_dir);
  std::size_t width = 1;
  for (std::size_t c = count - 1; c >= 10; c /= 10) ++width;

  std::string manifest = "id,path\n";
  for (std::size_t i = 0; i < count; ++i) {
    std::string suffix = std::to_string(i);
    if (suffix.size() < width) suffix.insert(0, width - suffix.size(), '0');
    const std::string id = "graph_" + suffix;
    const std::uint64_t sub_seed = derive_seed(seed, i);
    auto [g, latents] = sample_graph(n, kernel, sub_seed);
    write_edge_list(g, std::filesystem::path(out_dir) / (id + ".txt"));

    JsonWriter w;
    w.begin_object();
    w.key("kernel");
    w.value(kernel_spec);
    w.key("master_seed");
    w.value(seed);
    w.key("seed");
    w.value(sub_seed);
    w.key("n");
    w.value(n);
    w.key("latents");
    w.begin_array();
    for (double x : latents) w.value(x);
    w.end_array();
    w.end_object();
    write_file(std::filesystem::path(out_dir) / (id + ".json"), w.str() + "\n");
    manifest += id + "," + id + ".txt\n";
  }
  write_file(std::filesystem::path(out_dir) / "manifest.csv", manifest);
  std::cout << "generated " << count << " graphs on " << n << " vertices in " << out_dir
            << "\n";
  return 0;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(std::vector<std::string> names, bool all, bool fast, std::uint64_t seed,
               const std::string& out_dir, int threads) {
  const std::vector<std::string> known = {"mean_density", "subsample_mean",
                                          "clt_partition_mean", "clt_eigen", "pcan_vs_spcan"};
  if (all) names = known;
  if (names.empty())
    throw CLI::ValidationError("choose at least one --check or pass --all");
  for (const auto& n : names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      std::cerr << "unknown check '" << n << "'; valid: ";
      for (std::size_t i = 0; i < known.size(); ++i)
        std::cerr << known[i] << (i + 1 < known.size() ? ", " : "\n");
      return 2;
    }
  }

  const Kernel block = parse_kernel("block:0.75,0.1;0.1,0.45@0.4");
  auto run = [&](const std::string& name) -> CheckReport {
    if (name == "mean_density")
      return check_mean_density(ConstantKernel{0.5}, SubgraphConfig::triangle(), 40,
                                fast ? 100 : 500, seed, threads);
    if (name == "subsample_mean")
      return check_subsample_mean(ConstantKernel{0.2}, SubgraphConfig::star(1), 120, 10, 12,
                                  fast ? 60 : 300, seed, threads);
    if (name == "clt_partition_mean")
      return check_clt_partition_mean(ConstantKernel{0.3}, SubgraphConfig::star(1), 20,
                                      {25, 100}, fast ? 400 : 2000, seed, threads);
    if (name == "clt_eigen")
      return check_clt_eigen(
          block, {SubgraphConfig::star(1), SubgraphConfig::star(2), SubgraphConfig::triangle()},
          240, 20, 12, fast ? std::vector<std::size_t>{50, 200} : std::vector<std::size_t>{100, 400},
          fast ? 60 : 300, seed, threads);
    // pcan_vs_spcan on a generated sample with a two-dimensional spectrum
    // (assortative community plus a disassortative pair). Star/triangle rows
    // only: small partition cells have isolated vertices while 300-vertex
    // graphs do not, and the comparison needs both pipelines to retain the
    // same rows.
    const Kernel mixed =
        parse_kernel("block:0.9,0.05,0.05;0.05,0.125,0.8;0.05,0.8,0.125@0.33,0.66");
    const std::size_t N = fast ? 20 : 60;
    const std::size_t n = fast ? 144 : 300;
    NetworkSample sample;
    for (std::size_t i = 0; i < N; ++i) {
      auto [g, latents] = sample_graph(n, mixed, derive_seed(seed, 7000 + i));
      sample.graphs.push_back(std::move(g));
      sample.ids.push_back("krg_" + std::to_string(i));
    }
    std::vector<SubgraphConfig> stars_triangle;
    for (auto& c : default_configuration_set())
      if (c.edge_count > 0 && c.name != "cycle4" && c.name != "cycle5")
        stars_triangle.push_back(std::move(c));
    return compare_pcan_spcan(sample, fast ? 12 : 25, 12, fast ? 20 : 100, seed, threads,
                              std::move(stars_triangle));
  };

  bool any_fail = false;
  for (const auto& name : names) {
    CheckReport report = run(name);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_file(std::filesystem::path(out_dir) / ("check_" + name + ".json"),
                 report.to_json() + "\n");
    }
    std::cout << report.summary_line() << "\n";
    for (const auto& c : report.criteria)
      std::cout << "    " << (c.pass ? "ok  " : "FAIL") << " " << c.label << ": "
                << fmt(c.statistic) << " in [" << fmt(c.lower) << ", " << fmt(c.upper)
                << "]\n";
    any_fail = any_fail || report.status == CheckStatus::Fail;
  }
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgraph-density census, PCA embeddings, random-graph generation and "
               "statistical self-checks for network samples"};
  app.require_subcommand(1);

  std::string manifest, out_dir = ".", configs_csv, mode_name = "copies";
  std::string algo, r_text = "all", kernel_spec;
  std::uint64_t seed = 1;
  std::optional<std::size_t> tau, k;
  std::size_t gen_n = 50, gen_count = 10;
  int threads = 0;
  bool no_unit_sd = false, gnuplot = false, all_checks = false, fast = false;
  std::vector<std::string> checks;

  auto* census_cmd = app.add_subcommand("census", "count configurations in a graph sample");
  census_cmd->add_option("--manifest", manifest, "sample manifest CSV")->required();
  census_cmd->add_option("--out", out_dir, "output directory");
  census_cmd->add_option("--configs", configs_csv, "comma list of configuration names");
  census_cmd->add_option("--mode", mode_name, "copies|induced");
  census_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

  auto* embed_cmd = app.add_subcommand("embed", "project a graph sample onto density PCs");
  embed_cmd->add_option("--manifest", manifest, "sample manifest CSV")->required();
  embed_cmd->add_option("--out", out_dir, "output directory");
  embed_cmd->add_option("--algo", algo, "pcan|spcan")
      ->required()
      ->check(CLI::IsMember({"pcan", "spcan"}));
  embed_cmd->add_option("--configs", configs_csv, "comma list of configuration names");
  embed_cmd->add_option("--mode", mode_name, "copies|induced");
  embed_cmd->add_option("--r", r_text, "retained components or 'all'");
  embed_cmd->add_option("--tau", tau, "minimum class size (spcan)");
  embed_cmd->add_option("--K", k, "classes per graph (spcan)");
  embed_cmd->add_option("--seed", seed, "partition seed (spcan)");
  embed_cmd->add_flag("--no-unit-sd", no_unit_sd, "center rows without scaling to unit sd");
  embed_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  embed_cmd->add_flag("--gnuplot", gnuplot, "also write gnuplot scripts");

  auto* gen_cmd = app.add_subcommand("generate", "sample graphs from an edge-probability kernel");
  gen_cmd->add_option("--kernel", kernel_spec,
                      "constant:Q | block:ROW;ROW@BREAKS | prodlin:A,B | logdist:C,S")
      ->required();
  gen_cmd->add_option("--n", gen_n, "vertices per graph")->required();
  gen_cmd->add_option("--count", gen_count, "number of graphs")->required();
  gen_cmd->add_option("--seed", seed, "master seed");
  gen_cmd->add_option("--out", out_dir, "output directory");

  auto* verify_cmd = app.add_subcommand("verify", "run Monte Carlo self-checks");
  verify_cmd->add_option("--check", checks, "check name (repeatable)");
  verify_cmd->add_flag("--all", all_checks, "run every check");
  verify_cmd->add_flag("--fast", fast, "reduced Monte Carlo budgets");
  verify_cmd->add_option("--seed", seed, "master seed");
  verify_cmd->add_option("--out", out_dir, "directory for JSON reports");
  verify_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (census_cmd->parsed())
      return cmd_census(manifest, out_dir, configs_csv, mode_name, threads);
    if (embed_cmd->parsed())
      return cmd_embed(manifest, out_dir, algo, configs_csv, mode_name, r_text, tau, k, seed,
                       no_unit_sd, threads, gnuplot);
    if (gen_cmd->parsed()) return cmd_generate(kernel_spec, gen_n, gen_count, seed, out_dir);
    if (verify_cmd->parsed())
      return cmd_verify(checks, all_checks, fast, seed, out_dir, threads);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
