#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "netpca/pca.hpp"
#include "netpca/rng.hpp"

using namespace netpca;

namespace {

std::vector<std::string> names(std::size_t p, const char* prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Matrix m(rows, cols);
  Rng rng(seed);
  for (double& x : m.data) x = rng.next_double();
  return m;
}

DensityMatrix standardized_random(std::size_t p, std::size_t N, std::uint64_t seed) {
  return standardize_rows(random_matrix(p, N, seed), names(p, "row"), names(N, "col"), true);
}

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("row standardization centers and scales with the 1/N convention") {
  Matrix raw(1, 3);
  raw(0, 0) = 1.0;
  raw(0, 1) = 2.0;
  raw(0, 2) = 3.0;
  DensityMatrix d = standardize_rows(raw, {"r"}, names(3, "c"), true);
  REQUIRE(d.values.rows == 1);
  CHECK(d.row_means[0] == doctest::Approx(2.0));
  CHECK(d.row_sds[0] == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(d.values(0, 0) == doctest::Approx(-1.2247448713915889));
  CHECK(d.values(0, 1) == doctest::Approx(0.0));
  CHECK(d.values(0, 2) == doctest::Approx(1.2247448713915889));
}

TEST_CASE("centering without scaling keeps raw spread") {
  Matrix raw(1, 3);
  raw(0, 0) = 1.0;
  raw(0, 1) = 2.0;
  raw(0, 2) = 3.0;
  DensityMatrix d = standardize_rows(raw, {"r"}, names(3, "c"), false);
  CHECK(d.values(0, 0) == doctest::Approx(-1.0));
  CHECK(d.values(0, 2) == doctest::Approx(1.0));
  CHECK_FALSE(d.unit_sd);
}

TEST_CASE("standardized rows have zero mean and unit sd") {
  DensityMatrix d = standardized_random(6, 30, 11);
  for (std::size_t j = 0; j < d.values.rows; ++j) {
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < d.values.cols; ++i) mean += d.values(j, i);
    mean /= static_cast<double>(d.values.cols);
    for (std::size_t i = 0; i < d.values.cols; ++i) {
      double c = d.values(j, i) - mean;
      var += c * c;
    }
    var /= static_cast<double>(d.values.cols);
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("constant rows are dropped with a reason") {
  Matrix raw(2, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    raw(0, i) = 0.7;
    raw(1, i) = static_cast<double>(i);
  }
  DensityMatrix d = standardize_rows(raw, {"flat", "live"}, names(4, "c"), true);
  REQUIRE(d.values.rows == 1);
  CHECK(d.row_names == std::vector<std::string>{"live"});
  REQUIRE(d.dropped_rows.size() == 1);
  CHECK(d.dropped_rows[0].first == "flat");
  CHECK_FALSE(d.dropped_rows[0].second.empty());
}

TEST_CASE("standardization input validation") {
  Matrix one_col(2, 1, 1.0);
  CHECK_THROWS_AS(standardize_rows(one_col, names(2, "r"), names(1, "c"), true),
                  std::invalid_argument);
  Matrix all_flat(2, 3, 0.5);
  CHECK_THROWS_AS(standardize_rows(all_flat, names(2, "r"), names(3, "c"), true),
                  std::invalid_argument);
  Matrix ok(2, 3);
  CHECK_THROWS_AS(standardize_rows(ok, names(3, "r"), names(3, "c"), true),
                  std::invalid_argument);
}

TEST_CASE("covariance of standardized rows has unit diagonal") {
  DensityMatrix d = standardized_random(5, 40, 3);
  Matrix cov = covariance(d);
  REQUIRE(cov.rows == 5);
  REQUIRE(cov.cols == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(cov(i, i) == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t j = 0; j < 5; ++j) CHECK(cov(i, j) == doctest::Approx(cov(j, i)));
  }
}

TEST_CASE("covariance hand example") {
  // rows (1,-1) and (2,-2) centered: cov = (1/N) V V^T
  Matrix v(2, 2);
  v(0, 0) = 1.0;
  v(0, 1) = -1.0;
  v(1, 0) = 2.0;
  v(1, 1) = -2.0;
  DensityMatrix d;
  d.values = v;
  d.row_names = names(2, "r");
  d.col_ids = names(2, "c");
  Matrix cov = covariance(d);
  CHECK(cov(0, 0) == doctest::Approx(1.0));
  CHECK(cov(0, 1) == doctest::Approx(2.0));
  CHECK(cov(1, 1) == doctest::Approx(4.0));
}

TEST_CASE("eigendecomposition of a diagonal matrix") {
  Matrix a(3, 3);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  EigenDecomposition eig = symmetric_eigen(a);
  REQUIRE(eig.values.size() == 3);
  CHECK(eig.values[0] == doctest::Approx(3.0));
  CHECK(eig.values[1] == doctest::Approx(2.0));
  CHECK(eig.values[2] == doctest::Approx(1.0));
  // columns: e0, e2, e1 with positive pivots
  CHECK(eig.vectors(0, 0) == doctest::Approx(1.0));
  CHECK(eig.vectors(2, 1) == doctest::Approx(1.0));
  CHECK(eig.vectors(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("eigendecomposition of the 2x2 exchange-symmetric matrix") {
  Matrix a(2, 2);
  a(0, 0) = 2.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  EigenDecomposition eig = symmetric_eigen(a);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(eig.values[0] == doctest::Approx(3.0));
  CHECK(eig.values[1] == doctest::Approx(1.0));
  CHECK(eig.vectors(0, 0) == doctest::Approx(s));
  CHECK(eig.vectors(1, 0) == doctest::Approx(s));
  // tie in magnitudes: the lowest index is made positive
  CHECK(eig.vectors(0, 1) == doctest::Approx(s));
  CHECK(eig.vectors(1, 1) == doctest::Approx(-s));
}

TEST_CASE("eigendecomposition input validation") {
  Matrix asym(2, 2);
  asym(0, 1) = 1.0;
  asym(1, 0) = 2.0;
  asym(0, 0) = asym(1, 1) = 1.0;
  CHECK_THROWS_AS(symmetric_eigen(asym), std::invalid_argument);
  Matrix rect(2, 3);
  CHECK_THROWS_AS(symmetric_eigen(rect), std::invalid_argument);
  Matrix huge(65, 65, 0.0);
  CHECK_THROWS_AS(symmetric_eigen(huge), std::invalid_argument);
}

TEST_CASE("eigendecomposition reconstructs random covariance matrices") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DensityMatrix d = standardized_random(7, 35, 100 + seed);
    Matrix a = covariance(d);
    EigenDecomposition eig = symmetric_eigen(a);
    const std::size_t p = a.rows;

    for (std::size_t l = 0; l + 1 < p; ++l) CHECK(eig.values[l] >= eig.values[l + 1]);

    // orthonormality
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < p; ++k) dot += eig.vectors(k, i) * eig.vectors(k, j);
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
      }

    // A = V diag(values) V^T
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < p; ++k)
          acc += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
        CHECK(std::abs(acc - a(i, j)) < 1e-10);
      }

    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      trace += a(i, i);
      sum += eig.values[i];
    }
    CHECK(std::abs(trace - sum) < 1e-10 * std::max(1.0, std::abs(trace)));
  }
}

TEST_CASE("score columns carry variance equal to the eigenvalue") {
  PcaResult r = run_pca(standardized_random(6, 50, 21));
  const std::size_t N = r.input.values.cols;
  for (std::size_t l = 0; l < r.r; ++l) {
    double var = 0.0;
    for (std::size_t i = 0; i < N; ++i) var += r.scores(i, l) * r.scores(i, l);
    var /= static_cast<double>(N);
    CHECK(var == doctest::Approx(r.eigenvalues[l]).epsilon(1e-8));
  }
}

TEST_CASE("full-rank reconstruction is exact and error follows the spectrum tail") {
  PcaResult r = run_pca(standardized_random(6, 40, 31));
  const std::size_t p = r.input.values.rows;
  const std::size_t N = r.input.values.cols;

  Matrix full = reconstruct(r, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < full.data.size(); ++i)
    worst = std::max(worst, std::abs(full.data[i] - r.input.values.data[i]));
  CHECK(worst < 1e-10);

  double prev_err = -1.0;
  for (std::size_t rank = 0; rank <= p; ++rank) {
    Matrix approx = reconstruct(r, rank);
    Matrix diff(p, N);
    for (std::size_t i = 0; i < diff.data.size(); ++i)
      diff.data[i] = approx.data[i] - r.input.values.data[i];
    double err = frobenius(diff);
    if (prev_err >= 0.0) CHECK(err <= prev_err + 1e-12);
    prev_err = err;

    double tail = 0.0;
    for (std::size_t l = rank; l < p; ++l) tail += std::max(0.0, r.eigenvalues[l]);
    CHECK(err * err == doctest::Approx(static_cast<double>(N) * tail).epsilon(1e-8));
  }

  CHECK_THROWS_AS(reconstruct(r, p + 1), std::invalid_argument);
}

TEST_CASE("variance explained accounting") {
  std::vector<double> vals{4.0, 3.0, 2.0, 1.0};
  CHECK(variance_explained(vals, 0) == doctest::Approx(0.0));
  CHECK(variance_explained(vals, 1) == doctest::Approx(0.4));
  CHECK(variance_explained(vals, 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(variance_explained(vals, 5), std::invalid_argument);

  std::vector<double> with_noise{2.0, -1e-14};
  CHECK(variance_explained(with_noise, 1) == doctest::Approx(1.0));

  PcaResult r = run_pca(standardized_random(5, 30, 41));
  double total = 0.0;
  for (double v : r.variance_explained) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contributions are absolute-value percentages") {
  auto c = contributions({0.6, -0.3, 0.1});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(60.0));
  CHECK(c[1] == doctest::Approx(30.0));
  CHECK(c[2] == doctest::Approx(10.0));
  CHECK_THROWS_AS(contributions({0.0, 0.0}), std::invalid_argument);

  PcaResult r = run_pca(standardized_random(6, 25, 51));
  std::vector<double> lead(6);
  for (std::size_t j = 0; j < 6; ++j) lead[j] = r.loadings(j, 0);
  auto perc = contributions(lead);
  double sum = 0.0;
  for (double x : perc) sum += x;
  CHECK(sum == doctest::Approx(100.0));
}

TEST_CASE("truncated runs keep the full spectrum but fewer scores") {
  PcaResult r = run_pca(standardized_random(6, 30, 61), 2);
  CHECK(r.r == 2);
  CHECK(r.scores.cols == 2);
  CHECK(r.eigenvalues.size() == 6);
  CHECK(r.loadings.cols == 6);
}

TEST_CASE("repeated rows flag near-degenerate trailing eigenvalues") {
  Matrix raw(3, 10);
  Rng rng(71);
  for (std::size_t i = 0; i < 10; ++i) {
    double x = rng.next_double();
    raw(0, i) = x;
    raw(1, i) = x;
    raw(2, i) = x;
  }
  DensityMatrix d = standardize_rows(raw, names(3, "r"), names(10, "c"), true);
  PcaResult r = run_pca(std::move(d));
  CHECK(r.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(std::abs(r.eigenvalues[1]) < 1e-10);
  CHECK(std::abs(r.eigenvalues[2]) < 1e-10);
  CHECK(r.near_degenerate[1]);
  CHECK(r.near_degenerate[2]);
}

TEST_CASE("scores project columns onto loadings") {
  DensityMatrix d = standardized_random(4, 12, 81);
  PcaResult r = run_pca(d);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t l = 0; l < r.r; ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < 4; ++j) acc += d.values(j, i) * r.loadings(j, l);
      CHECK(r.scores(i, l) == doctest::Approx(acc).epsilon(1e-12));
    }
}
