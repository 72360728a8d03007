#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "doctest.h"
#include "netpca/io.hpp"

using namespace netpca;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("netpca_io_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
};

}  // namespace

TEST_CASE("edge list parsing with comments, blanks and isolates") {
  TempDir tmp;
  auto p = tmp.file("g.txt",
                    "# header comment\n"
                    "a b\n"
                    "\n"
                    "b c  # trailing comment\n"
                    "d\n");
  LoadReport report;
  Graph g = load_edge_list(p, &report);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.vertex_name(0) == "a");
  CHECK(g.vertex_name(1) == "b");
  CHECK(g.vertex_name(2) == "c");
  CHECK(g.vertex_name(3) == "d");
  CHECK(g.degree(3) == 0);
  CHECK(g.label() == "g");
  CHECK(report.self_loops == 0);
  CHECK(report.duplicate_edges == 0);
}

TEST_CASE("self-loops and duplicates are dropped and tallied") {
  TempDir tmp;
  auto p = tmp.file("dups.txt", "x y\ny x\nx y\nz z\nx z\n");
  LoadReport report;
  Graph g = load_edge_list(p, &report);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(report.duplicate_edges == 2);
  CHECK(report.self_loops == 1);
}

TEST_CASE("edge list errors") {
  TempDir tmp;
  auto bad = tmp.file("bad.txt", "a b\na b c\n");
  CHECK_THROWS_WITH_AS(load_edge_list(bad), doctest::Contains(":2:"),
                       std::runtime_error);
  auto empty = tmp.file("empty.txt", "# nothing\n\n");
  CHECK_THROWS_AS(load_edge_list(empty), std::runtime_error);
  CHECK_THROWS_AS(load_edge_list(tmp.path / "missing.txt"), std::runtime_error);
}

TEST_CASE("numeric tokens keep first-appearance order, not numeric order") {
  TempDir tmp;
  auto p = tmp.file("num.txt", "3 1\n1 2\n");
  Graph g = load_edge_list(p);
  CHECK(g.vertex_name(0) == "3");
  CHECK(g.vertex_name(1) == "1");
  CHECK(g.vertex_name(2) == "2");
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("write then load round-trips the graph including isolates") {
  TempDir tmp;
  Graph g(5, {{0, 1}, {1, 2}, {3, 0}}, "roundtrip",
          {"n0", "n1", "n2", "n3", "solo"});
  auto p = tmp.path / "out.txt";
  write_edge_list(g, p);
  Graph back = load_edge_list(p);
  REQUIRE(back.vertex_count() == 5);
  CHECK(back.edge_count() == 3);

  std::set<std::pair<std::string, std::string>> want, got;
  for (const auto& [u, v] : g.edges())
    want.insert(std::minmax(g.vertex_name(u), g.vertex_name(v)));
  for (const auto& [u, v] : back.edges())
    got.insert(std::minmax(back.vertex_name(u), back.vertex_name(v)));
  CHECK(want == got);

  bool solo_found = false;
  for (VertexId v = 0; v < 5; ++v)
    if (back.vertex_name(v) == "solo") {
      solo_found = true;
      CHECK(back.degree(v) == 0);
    }
  CHECK(solo_found);
}

TEST_CASE("manifest loading resolves relative paths and labels") {
  TempDir tmp;
  tmp.file("g1.txt", "a b\nb c\n");
  fs::create_directories(tmp.path / "sub");
  tmp.file("sub/g2.txt", "p q\n");
  auto manifest = tmp.file("manifest.csv",
                           "id,path,label\n"
                           "first,g1.txt,healthy\n"
                           "second,sub/g2.txt,patient\n");
  NetworkSample s = load_manifest(manifest);
  REQUIRE(s.size() == 2);
  CHECK(s.ids[0] == "first");
  CHECK(s.ids[1] == "second");
  CHECK(s.labels[0] == "healthy");
  CHECK(s.labels[1] == "patient");
  CHECK(s.graphs[0].vertex_count() == 3);
  CHECK(s.graphs[1].vertex_count() == 2);
  CHECK(s.min_vertex_count() == 2);
}

TEST_CASE("manifest without label column") {
  TempDir tmp;
  tmp.file("g1.txt", "a b\n");
  auto manifest = tmp.file("m.csv", "id,path\nonly,g1.txt\n");
  NetworkSample s = load_manifest(manifest);
  REQUIRE(s.size() == 1);
  CHECK(s.labels.empty());
}

TEST_CASE("manifest errors name the offending row") {
  TempDir tmp;
  tmp.file("g1.txt", "a b\n");

  auto missing = tmp.file("m1.csv", "id,path\nok,g1.txt\ngone,nope.txt\n");
  CHECK_THROWS_WITH_AS(load_manifest(missing), doctest::Contains("gone"),
                       std::runtime_error);

  auto dup = tmp.file("m2.csv", "id,path\nsame,g1.txt\nsame,g1.txt\n");
  CHECK_THROWS_AS(load_manifest(dup), std::exception);

  auto badheader = tmp.file("m3.csv", "name,file\nx,g1.txt\n");
  CHECK_THROWS_AS(load_manifest(badheader), std::runtime_error);

  auto noRows = tmp.file("m4.csv", "id,path\n");
  CHECK_THROWS_AS(load_manifest(noRows), std::exception);
}
