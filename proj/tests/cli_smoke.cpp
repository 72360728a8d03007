// Drives the installed command-line binary end to end. The binary path
// arrives as argv[1] from the test harness.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "[ok] " << what << "\n";
  } else {
    std::cout << "[FAIL] " << what << "\n";
    ++failures;
  }
}

int run(const std::string& cmd) {
  int raw = std::system(cmd.c_str());
  if (raw == -1) return -1;
  if (WIFEXITED(raw)) return WEXITSTATUS(raw);
  return -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// drop lines mentioning runtime so byte comparisons ignore the wall clock
std::string without_runtime(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("runtime") == std::string::npos) out += line + "\n";
  return out;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text)
    if (ch == '\n') ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_smoke <path-to-binary>\n";
    return 1;
  }
  const std::string bin = std::string("\"") + argv[1] + "\"";
  const fs::path root =
      fs::temp_directory_path() / ("netpca_cli_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string quiet = " > " + (root / "stdout.txt").string() + " 2> " +
                            (root / "stderr.txt").string();

  const fs::path gen = root / "sample";
  expect(run(bin + " generate --kernel constant:0.3 --n 30 --count 5 --seed 1 --out " +
             gen.string() + quiet) == 0,
         "generate exits 0");
  expect(fs::exists(gen / "manifest.csv"), "generate writes a manifest");
  for (int i = 0; i < 5; ++i) {
    expect(fs::exists(gen / ("graph_" + std::to_string(i) + ".txt")), "edge list exists");
    expect(fs::exists(gen / ("graph_" + std::to_string(i) + ".json")), "sidecar exists");
  }
  expect(slurp(gen / "graph_0.json").find("\"kernel\":\"constant:0.3\"") != std::string::npos,
         "sidecar records the kernel spec");

  const fs::path empty = root / "empty";
  expect(run(bin + " generate --kernel constant:0 --n 50 --count 1 --seed 2 --out " +
             empty.string() + quiet) == 0,
         "zero kernel generates");
  {
    std::string body = slurp(empty / "graph_0.txt");
    expect(count_lines(body) == 50, "edgeless graph file lists 50 lone vertices");
    std::istringstream in(body);
    std::string line;
    bool all_single = true;
    while (std::getline(in, line))
      all_single = all_single && !line.empty() && line.find(' ') == std::string::npos;
    expect(all_single, "each line is a single token");
  }

  const fs::path cen = root / "census_out";
  expect(run(bin + " census --manifest " + (gen / "manifest.csv").string() + " --out " +
             cen.string() + quiet) == 0,
         "census exits 0");
  {
    std::string csv = slurp(cen / "census.csv");
    expect(count_lines(csv) == 1 + 5 * 9, "census has header plus 5x9 rows");
    expect(csv.rfind("graph_id,config,count,max_count,density", 0) == 0,
           "census header names the columns");
  }
  expect(run(bin + " census --manifest " + (gen / "manifest.csv").string() +
             " --mode induced --out " + (root / "census_ind").string() + quiet) == 0,
         "induced census exits 0");
  expect(run(bin + " census --manifest " + (root / "nope.csv").string() + quiet) == 1,
         "census on a missing manifest exits 1");

  const fs::path emb = root / "embed_out";
  expect(run(bin + " embed --manifest " + (gen / "manifest.csv").string() +
             " --algo pcan --out " + emb.string() + quiet) == 0,
         "embed pcan exits 0");
  expect(fs::exists(emb / "result.json"), "embed writes result.json");
  expect(fs::exists(emb / "scores.csv"), "embed writes scores.csv");
  expect(fs::exists(emb / "contributions.csv"), "embed writes contributions.csv");
  expect(count_lines(slurp(emb / "scores.csv")) == 1 + 5, "scores has one row per graph");
  expect(slurp(emb / "result.json").find("\"schema_version\"") != std::string::npos,
         "result.json is versioned");

  const fs::path sp1 = root / "spcan1", sp2 = root / "spcan2";
  const std::string spcan_args = " embed --manifest " + (gen / "manifest.csv").string() +
                                 " --algo spcan --tau 12 --K 2 --seed 7 --out ";
  expect(run(bin + spcan_args + sp1.string() + quiet) == 0, "embed spcan exits 0");
  expect(run(bin + spcan_args + sp2.string() + quiet) == 0, "embed spcan again exits 0");
  expect(without_runtime(slurp(sp1 / "result.json")) ==
             without_runtime(slurp(sp2 / "result.json")),
         "spcan result.json is byte-identical modulo runtime");
  expect(slurp(sp1 / "scores.csv") == slurp(sp2 / "scores.csv"),
         "spcan scores are byte-identical");

  expect(run(bin + " embed --manifest " + (gen / "manifest.csv").string() +
             " --algo spcan --tau 12 --K 5 --out " + (root / "nofit").string() + quiet) == 1,
         "infeasible spcan parameters exit 1");
  expect(slurp(root / "stderr.txt").find("tau") != std::string::npos,
         "infeasibility message mentions the bound");

  const fs::path gp = root / "gnuplot_out";
  expect(run(bin + " embed --manifest " + (gen / "manifest.csv").string() +
             " --algo pcan --gnuplot --out " + gp.string() + quiet) == 0,
         "embed with gnuplot scripts exits 0");
  expect(fs::exists(gp / "scree.gp"), "scree script emitted");

  expect(run(bin + " generate --kernel 'block:1.2,0.1;0.1,0.5@0.5' --n 10 --count 1 --out " +
             (root / "badkernel").string() + quiet) == 1,
         "invalid kernel probability exits 1");
  expect(run(bin + " verify --check bogus" + quiet) == 2, "unknown check exits 2");
  expect(run(bin + " embed --manifest " + (gen / "manifest.csv").string() +
             " --algo nonsense" + quiet) == 2,
         "unknown algorithm exits 2");
  expect(run(bin + " nonsense" + quiet) == 2, "unknown subcommand exits 2");
  expect(run(bin + " --help" + quiet) == 0, "--help exits 0");

  const fs::path ver = root / "verify_out";
  expect(run(bin + " verify --check mean_density --fast --seed 3 --out " + ver.string() +
             quiet) == 0,
         "fast mean_density check exits 0");
  expect(fs::exists(ver / "check_mean_density.json"), "verify writes a JSON report");
  expect(slurp(ver / "check_mean_density.json").find("\"status\":\"pass\"") !=
             std::string::npos,
         "report records a pass");

  if (failures == 0) fs::remove_all(root);
  std::cout << (failures == 0 ? "cli smoke: all good\n"
                              : "cli smoke: " + std::to_string(failures) + " failures\n");
  return failures == 0 ? 0 : 1;
}
