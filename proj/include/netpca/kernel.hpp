#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netpca/census.hpp"
#include "netpca/graph.hpp"
#include "netpca/matrix.hpp"

namespace netpca {

// Edge-probability kernels on [0,1]^2. All are symmetric with values in
// [0,1]; validate() enforces the parameter ranges.

struct ConstantKernel {
  double q = 0.5;
};

// Step kernel: breakpoints 0 < b_1 < ... < b_{m-1} < 1 split [0,1] into m
// intervals; probs is the symmetric m x m matrix of interval-pair values.
struct BlockKernel {
  Matrix probs;
  std::vector<double> breakpoints;
};

// f(x,y) = g(x) * g(y) with g(t) = a + b*t; g must stay within [0,1].
struct ProductLinearKernel {
  double a = 0.5;
  double b = 0.0;
};

// f(x,y) = 1 / (1 + exp((|x - y| - c) / s)); latent positions closer than c
// connect with probability above 1/2, s controls the sharpness.
struct LogisticDistanceKernel {
  double c = 0.25;
  double s = 0.05;
};

using Kernel = std::variant<ConstantKernel, BlockKernel, ProductLinearKernel,
                            LogisticDistanceKernel>;

void validate(const Kernel& kernel);
double evaluate(const Kernel& kernel, double x, double y);
std::string describe(const Kernel& kernel);

// CLI syntax: constant:Q | block:R,C;R,C@B1[,B2...] | prodlin:A,B | logdist:C,S
Kernel parse_kernel(const std::string& text);

// Latent positions x_i ~ U(0,1) in vertex order, then one Bernoulli(f(x_i,
// x_j)) draw per pair in lexicographic order. Deterministic in (n, kernel,
// seed). Runtime is Theta(n^2).
std::pair<Graph, std::vector<double>> sample_graph(std::size_t n, const Kernel& kernel,
                                                   std::uint64_t seed);

enum class MomentMethod { Auto, ClosedForm, Quadrature, MonteCarlo };

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for closed form; order-halving gap for quadrature
  MomentMethod method = MomentMethod::ClosedForm;
};

// Expected product of the kernel over the pattern's edges, with all pattern
// vertices drawn independently; this is the population counterpart of the
// pattern's copy density. Edge-free patterns are rejected. Methods:
//   ClosedForm  Constant and Block only
//   Quadrature  tensor Gauss-Legendre; per-axis order from budget^(1/|V|)
//   MonteCarlo  `budget` independent latent tuples; std_error = sd/sqrt(budget)
//   Auto        closed form when available; else order-32 quadrature up to 4
//               pattern vertices, Monte Carlo with >= 1e6 draws beyond that
MomentEstimate kernel_moment(const Kernel& kernel, const SubgraphConfig& config,
                             MomentMethod method = MomentMethod::Auto,
                             std::size_t budget = 200000, std::uint64_t seed = 0);

}  // namespace netpca
