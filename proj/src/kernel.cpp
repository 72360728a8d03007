#include "netpca/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "netpca/rng.hpp"

namespace netpca {

namespace {

std::vector<double> block_measures(const BlockKernel& k) {
  std::vector<double> m;
  m.reserve(k.breakpoints.size() + 1);
  double prev = 0.0;
  for (double b : k.breakpoints) {
    m.push_back(b - prev);
    prev = b;
  }
  m.push_back(1.0 - prev);
  return m;
}

std::size_t block_index(const BlockKernel& k, double x) {
  return static_cast<std::size_t>(
      std::upper_bound(k.breakpoints.begin(), k.breakpoints.end(), x) -
      k.breakpoints.begin());
}

double parse_double(const std::string& s, std::size_t& pos) {
  std::size_t used = 0;
  double v = std::stod(s.substr(pos), &used);
  pos += used;
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Gauss-Legendre nodes and weights on [0,1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int order) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[static_cast<std::size_t>(i)] = (1.0 - z) / 2.0;
    rule.nodes[static_cast<std::size_t>(order - 1 - i)] = (1.0 + z) / 2.0;
    rule.weights[static_cast<std::size_t>(i)] = w / 2.0;
    rule.weights[static_cast<std::size_t>(order - 1 - i)] = w / 2.0;
  }
  return rule;
}

// Tensor-product integral of the edge-product over [0,1]^vertices.
double quadrature_moment(const Kernel& kernel, const SubgraphConfig& config, int order) {
  const auto edges = pattern_edges(config);
  const int dims = config.node_count;
  const auto rule = gauss_legendre(order);
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> x(static_cast<std::size_t>(dims), 0.0);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < dims; ++d) {
      x[static_cast<std::size_t>(d)] = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
    }
    double prod = 1.0;
    for (const auto& [a, b] : edges)
      prod *= evaluate(kernel, x[static_cast<std::size_t>(a)], x[static_cast<std::size_t>(b)]);
    total += w * prod;

    int d = 0;
    while (d < dims && ++idx[static_cast<std::size_t>(d)] == order) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == dims) break;
  }
  return total;
}

}  // namespace

void validate(const Kernel& kernel) {
  if (const auto* c = std::get_if<ConstantKernel>(&kernel)) {
    if (!(c->q >= 0.0 && c->q <= 1.0))
      throw std::invalid_argument("constant kernel needs q in [0,1], got " + num(c->q));
    return;
  }
  if (const auto* b = std::get_if<BlockKernel>(&kernel)) {
    const std::size_t m = b->probs.rows;
    if (m == 0 || b->probs.cols != m)
      throw std::invalid_argument("block kernel needs a square probability matrix");
    if (b->breakpoints.size() != m - 1)
      throw std::invalid_argument("block kernel needs exactly " + std::to_string(m - 1) +
                                  " breakpoints for " + std::to_string(m) + " blocks");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double v = b->probs(i, j);
        if (!(v >= 0.0 && v <= 1.0))
          throw std::invalid_argument("block probability " + num(v) + " outside [0,1]");
        if (b->probs(i, j) != b->probs(j, i))
          throw std::invalid_argument("block probability matrix must be symmetric");
      }
    double prev = 0.0;
    for (double bp : b->breakpoints) {
      if (!(bp > prev && bp < 1.0))
        throw std::invalid_argument("block breakpoints must be ascending inside (0,1)");
      prev = bp;
    }
    return;
  }
  if (const auto* p = std::get_if<ProductLinearKernel>(&kernel)) {
    double g0 = p->a;
    double g1 = p->a + p->b;
    if (!(g0 >= 0.0 && g0 <= 1.0 && g1 >= 0.0 && g1 <= 1.0))
      throw std::invalid_argument("product-linear kernel needs a and a+b in [0,1]");
    return;
  }
  const auto& l = std::get<LogisticDistanceKernel>(kernel);
  if (!(l.s > 0.0)) throw std::invalid_argument("logistic-distance kernel needs s > 0");
  if (!(l.c >= 0.0 && l.c <= 1.0))
    throw std::invalid_argument("logistic-distance kernel needs c in [0,1]");
}

double evaluate(const Kernel& kernel, double x, double y) {
  if (const auto* c = std::get_if<ConstantKernel>(&kernel)) return c->q;
  if (const auto* b = std::get_if<BlockKernel>(&kernel))
    return b->probs(block_index(*b, x), block_index(*b, y));
  if (const auto* p = std::get_if<ProductLinearKernel>(&kernel))
    return (p->a + p->b * x) * (p->a + p->b * y);
  const auto& l = std::get<LogisticDistanceKernel>(kernel);
  return 1.0 / (1.0 + std::exp((std::abs(x - y) - l.c) / l.s));
}

std::string describe(const Kernel& kernel) {
  if (const auto* c = std::get_if<ConstantKernel>(&kernel)) return "constant:" + num(c->q);
  if (const auto* b = std::get_if<BlockKernel>(&kernel)) {
    std::string s = "block:";
    for (std::size_t i = 0; i < b->probs.rows; ++i) {
      if (i) s += ';';
      for (std::size_t j = 0; j < b->probs.cols; ++j) {
        if (j) s += ',';
        s += num(b->probs(i, j));
      }
    }
    s += '@';
    for (std::size_t i = 0; i < b->breakpoints.size(); ++i) {
      if (i) s += ',';
      s += num(b->breakpoints[i]);
    }
    return s;
  }
  if (const auto* p = std::get_if<ProductLinearKernel>(&kernel))
    return "prodlin:" + num(p->a) + "," + num(p->b);
  const auto& l = std::get<LogisticDistanceKernel>(kernel);
  return "logdist:" + num(l.c) + "," + num(l.s);
}

Kernel parse_kernel(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("kernel spec needs the form name:params, got '" + text + "'");
  std::string name = text.substr(0, colon);
  std::string params = text.substr(colon + 1);

  try {
    if (name == "constant") {
      std::size_t pos = 0;
      ConstantKernel k{parse_double(params, pos)};
      if (pos != params.size()) throw std::invalid_argument("trailing characters");
      Kernel kernel = k;
      validate(kernel);
      return kernel;
    }
    if (name == "prodlin" || name == "logdist") {
      std::size_t pos = 0;
      double first = parse_double(params, pos);
      if (pos >= params.size() || params[pos] != ',')
        throw std::invalid_argument("expected two comma-separated parameters");
      ++pos;
      double second = parse_double(params, pos);
      if (pos != params.size()) throw std::invalid_argument("trailing characters");
      Kernel kernel;
      if (name == "prodlin") kernel = ProductLinearKernel{first, second};
      else kernel = LogisticDistanceKernel{first, second};
      validate(kernel);
      return kernel;
    }
    if (name == "block") {
      auto at = params.find('@');
      if (at == std::string::npos)
        throw std::invalid_argument("block kernel needs '@' before the breakpoints");
      std::string rows_text = params.substr(0, at);
      std::string bp_text = params.substr(at + 1);
      if (bp_text.empty())
        throw std::invalid_argument("block kernel needs at least one breakpoint after '@'");

      std::vector<std::vector<double>> rows;
      std::size_t pos = 0;
      rows.emplace_back();
      while (pos < rows_text.size()) {
        rows.back().push_back(parse_double(rows_text, pos));
        if (pos < rows_text.size()) {
          if (rows_text[pos] == ',') ++pos;
          else if (rows_text[pos] == ';') { ++pos; rows.emplace_back(); }
          else throw std::invalid_argument("unexpected character in block matrix");
        }
      }
      BlockKernel k;
      k.probs = Matrix(rows.size(), rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
          throw std::invalid_argument("block matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) k.probs(i, j) = rows[i][j];
      }
      pos = 0;
      while (pos < bp_text.size()) {
        k.breakpoints.push_back(parse_double(bp_text, pos));
        if (pos < bp_text.size()) {
          if (bp_text[pos] == ',') ++pos;
          else throw std::invalid_argument("unexpected character in breakpoints");
        }
      }
      Kernel kernel = k;
      validate(kernel);
      return kernel;
    }
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("invalid kernel spec '" + text + "': number out of range");
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("invalid kernel spec '" + text + "': " + e.what());
  }
  throw std::invalid_argument("unknown kernel '" + name +
                              "'; expected constant, block, prodlin or logdist");
}

std::pair<Graph, std::vector<double>> sample_graph(std::size_t n, const Kernel& kernel,
                                                   std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  validate(kernel);
  Rng rng(seed);
  std::vector<double> latents(n);
  for (std::size_t i = 0; i < n; ++i) latents[i] = rng.next_double();

  // One Bernoulli draw per vertex pair, in row order. The edge probability is
  // hoisted out of the hot loop per kernel family; sampling large samples
  // spends nearly all its time here.
  std::vector<Edge> edges;
  auto pair_loop = [&](auto&& prob) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.next_bernoulli(prob(i, j)))
          edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
  };
  if (const auto* c = std::get_if<ConstantKernel>(&kernel)) {
    const double q = c->q;
    pair_loop([q](std::size_t, std::size_t) { return q; });
  } else if (const auto* b = std::get_if<BlockKernel>(&kernel)) {
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i) block[i] = block_index(*b, latents[i]);
    const Matrix& probs = b->probs;
    pair_loop([&](std::size_t i, std::size_t j) { return probs(block[i], block[j]); });
  } else if (const auto* p = std::get_if<ProductLinearKernel>(&kernel)) {
    std::vector<double> fac(n);
    for (std::size_t i = 0; i < n; ++i) fac[i] = p->a + p->b * latents[i];
    pair_loop([&](std::size_t i, std::size_t j) { return fac[i] * fac[j]; });
  } else {
    pair_loop([&](std::size_t i, std::size_t j) {
      return evaluate(kernel, latents[i], latents[j]);
    });
  }

  return {Graph(n, std::move(edges)), std::move(latents)};
}

MomentEstimate kernel_moment(const Kernel& kernel, const SubgraphConfig& config,
                             MomentMethod method, std::size_t budget, std::uint64_t seed) {
  validate(kernel);
  if (config.edge_count == 0)
    throw std::invalid_argument("configuration '" + config.name +
                                "' has no edges; its kernel moment is undefined");

  const bool closed_available =
      std::holds_alternative<ConstantKernel>(kernel) || std::holds_alternative<BlockKernel>(kernel);
  int quad_order = 32;
  if (method == MomentMethod::Auto) {
    if (closed_available) {
      method = MomentMethod::ClosedForm;
    } else if (config.node_count <= 4) {
      method = MomentMethod::Quadrature;
    } else {
      // a 5-vertex tensor grid at order 32 is 33M nodes; sampling is cheaper
      method = MomentMethod::MonteCarlo;
      budget = std::max<std::size_t>(budget, 1000000);
    }
  } else if (method == MomentMethod::Quadrature) {
    double per_axis = std::pow(static_cast<double>(std::max<std::size_t>(budget, 16)),
                               1.0 / static_cast<double>(config.node_count));
    quad_order = std::clamp(static_cast<int>(per_axis), 4, 48);
  }

  if (method == MomentMethod::ClosedForm) {
    if (!closed_available)
      throw std::invalid_argument("no closed-form moment for this kernel family");
    if (const auto* c = std::get_if<ConstantKernel>(&kernel)) {
      double v = 1.0;
      for (int e = 0; e < config.edge_count; ++e) v *= c->q;
      return {v, 0.0, MomentMethod::ClosedForm};
    }
    // Block: sum over assignments of pattern vertices to blocks.
    const auto& b = std::get<BlockKernel>(kernel);
    const auto edges = pattern_edges(config);
    const auto measures = block_measures(b);
    const std::size_t m = measures.size();
    std::vector<std::size_t> assign(static_cast<std::size_t>(config.node_count), 0);
    double total = 0.0;
    for (;;) {
      double term = 1.0;
      for (std::size_t v = 0; v < assign.size(); ++v) term *= measures[assign[v]];
      for (const auto& [u, v] : edges)
        term *= b.probs(assign[static_cast<std::size_t>(u)], assign[static_cast<std::size_t>(v)]);
      total += term;
      std::size_t d = 0;
      while (d < assign.size() && ++assign[d] == m) {
        assign[d] = 0;
        ++d;
      }
      if (d == assign.size()) break;
    }
    return {total, 0.0, MomentMethod::ClosedForm};
  }

  if (method == MomentMethod::Quadrature) {
    double fine = quadrature_moment(kernel, config, quad_order);
    double coarse = quadrature_moment(kernel, config, std::max(2, quad_order / 2));
    return {fine, std::abs(fine - coarse), MomentMethod::Quadrature};
  }

  // Monte Carlo
  if (budget < 2) throw std::invalid_argument("monte carlo budget must be at least 2");
  const auto edges = pattern_edges(config);
  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(config.node_count));
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t t = 0; t < budget; ++t) {
    for (auto& xi : x) xi = rng.next_double();
    double prod = 1.0;
    for (const auto& [u, v] : edges)
      prod *= evaluate(kernel, x[static_cast<std::size_t>(u)], x[static_cast<std::size_t>(v)]);
    sum += prod;
    sumsq += prod * prod;
  }
  double mean = sum / static_cast<double>(budget);
  double var = std::max(0.0, (sumsq - sum * mean) / static_cast<double>(budget - 1));
  return {mean, std::sqrt(var / static_cast<double>(budget)), MomentMethod::MonteCarlo};
}

}  // namespace netpca
