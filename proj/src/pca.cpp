#include "netpca/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace netpca {

namespace {

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data) s += x * x;
  return std::sqrt(s);
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

DensityMatrix standardize_rows(const Matrix& raw, const std::vector<std::string>& row_names,
                               const std::vector<std::string>& col_ids, bool unit_sd) {
  const std::size_t p = raw.rows;
  const std::size_t N = raw.cols;
  if (row_names.size() != p) throw std::invalid_argument("row name count mismatch");
  if (col_ids.size() != N) throw std::invalid_argument("column id count mismatch");
  if (N < 2) throw std::invalid_argument("standardization needs at least two columns");

  DensityMatrix out;
  out.col_ids = col_ids;
  out.unit_sd = unit_sd;

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < N; ++j) mean += raw(i, j);
    mean /= static_cast<double>(N);
    double var = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      double c = raw(i, j) - mean;
      var += c * c;
    }
    double sd = std::sqrt(var / static_cast<double>(N));
    if (sd < 1e-14) {
      out.dropped_rows.emplace_back(row_names[i], "zero variance across the sample");
      continue;
    }
    keep.push_back(i);
    out.row_names.push_back(row_names[i]);
    out.row_means.push_back(mean);
    out.row_sds.push_back(sd);
  }
  if (keep.empty())
    throw std::invalid_argument("every row has zero variance; nothing to analyze");

  out.values = Matrix(keep.size(), N);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    double mean = out.row_means[r];
    double scale = unit_sd ? 1.0 / out.row_sds[r] : 1.0;
    for (std::size_t j = 0; j < N; ++j)
      out.values(r, j) = (raw(keep[r], j) - mean) * scale;
  }
  return out;
}

Matrix covariance(const DensityMatrix& d) {
  const std::size_t p = d.values.rows;
  const std::size_t N = d.values.cols;
  Matrix cov(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < N; ++t) s += d.values(i, t) * d.values(j, t);
      s /= static_cast<double>(N);
      cov(i, j) = s;
      cov(j, i) = s;
    }
  return cov;
}

EigenDecomposition symmetric_eigen(const Matrix& a) {
  const std::size_t p = a.rows;
  if (p == 0 || a.cols != p) throw std::invalid_argument("matrix must be square");
  if (p > 64) throw std::invalid_argument("eigendecomposition supports at most 64x64 input");

  const double scale = frobenius(a);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("matrix is not symmetric");

  Matrix d = a;       // working copy, driven to diagonal form
  Matrix v(p, p);     // accumulated rotations
  for (std::size_t i = 0; i < p; ++i) v(i, i) = 1.0;

  const double target = 1e-14 * scale;
  bool converged = off_diagonal_norm(d) <= target;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t q = 1; q < p; ++q)
      for (std::size_t pp = 0; pp < q; ++pp) {
        double apq = d(pp, q);
        if (apq == 0.0) continue;
        double app = d(pp, pp);
        double aqq = d(q, q);
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          double dk_p = d(k, pp);
          double dk_q = d(k, q);
          d(k, pp) = c * dk_p - s * dk_q;
          d(k, q) = s * dk_p + c * dk_q;
        }
        for (std::size_t k = 0; k < p; ++k) {
          double dp_k = d(pp, k);
          double dq_k = d(q, k);
          d(pp, k) = c * dp_k - s * dq_k;
          d(q, k) = s * dp_k + c * dq_k;
        }
        for (std::size_t k = 0; k < p; ++k) {
          double vk_p = v(k, pp);
          double vk_q = v(k, q);
          v(k, pp) = c * vk_p - s * vk_q;
          v(k, q) = s * vk_p + c * vk_q;
        }
      }
    converged = off_diagonal_norm(d) <= target;
  }
  if (!converged)
    throw std::runtime_error("eigendecomposition did not converge in 100 sweeps");

  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d(x, x) > d(y, y); });

  EigenDecomposition out;
  out.values.resize(p);
  out.vectors = Matrix(p, p);
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t src = order[c];
    out.values[c] = d(src, src);
    // sign rule: largest-magnitude entry (lowest index on ties) positive
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < p; ++r) {
      double mag = std::abs(v(r, src));
      if (mag > best) { best = mag; pivot = r; }
    }
    double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < p; ++r) out.vectors(r, c) = sign * v(r, src);
  }

  // residual diagnostic per pair
  const double tol = 1e-10 * std::max(1.0, scale);
  for (std::size_t c = 0; c < p; ++c) {
    double res = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      double av = 0.0;
      for (std::size_t k = 0; k < p; ++k) av += a(r, k) * out.vectors(k, c);
      double diff = av - out.values[c] * out.vectors(r, c);
      res += diff * diff;
    }
    if (std::sqrt(res) > tol)
      throw std::runtime_error("eigenpair " + std::to_string(c) +
                               " residual exceeds tolerance");
  }
  return out;
}

Matrix scores(const DensityMatrix& d, const Matrix& loadings, std::size_t r) {
  const std::size_t p = d.values.rows;
  const std::size_t N = d.values.cols;
  if (loadings.rows != p || r > loadings.cols)
    throw std::invalid_argument("loading matrix does not match requested components");
  Matrix s(N, r);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t l = 0; l < r; ++l) {
      double acc = 0.0;
      for (std::size_t j = 0; j < p; ++j) acc += d.values(j, i) * loadings(j, l);
      s(i, l) = acc;
    }
  return s;
}

double variance_explained(const std::vector<double>& eigenvalues, std::size_t r) {
  if (r > eigenvalues.size())
    throw std::invalid_argument("more components requested than eigenvalues");
  double total = 0.0;
  double top = 0.0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    double v = std::max(eigenvalues[i], 0.0);  // clamp round-off negatives
    total += v;
    if (i < r) top += v;
  }
  if (total <= 0.0) throw std::invalid_argument("total variance is zero");
  return top / total;
}

std::vector<double> contributions(const std::vector<double>& loading) {
  double denom = 0.0;
  for (double x : loading) denom += std::abs(x);
  if (denom == 0.0) throw std::invalid_argument("loading vector is zero");
  std::vector<double> out;
  out.reserve(loading.size());
  for (double x : loading) out.push_back(100.0 * std::abs(x) / denom);
  return out;
}

Matrix reconstruct(const PcaResult& result, std::size_t r) {
  const std::size_t p = result.input.values.rows;
  const std::size_t N = result.input.values.cols;
  if (r > result.scores.cols)
    throw std::invalid_argument("rank exceeds retained components");
  Matrix approx(p, N);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (std::size_t l = 0; l < r; ++l)
        acc += result.loadings(j, l) * result.scores(i, l);
      approx(j, i) = acc;
    }
  return approx;
}

PcaResult run_pca(DensityMatrix d, std::optional<std::size_t> r) {
  PcaResult out;
  Matrix cov = covariance(d);
  EigenDecomposition eig = symmetric_eigen(cov);
  const std::size_t p = eig.values.size();

  out.eigenvalues = std::move(eig.values);
  out.loadings = std::move(eig.vectors);
  out.r = std::min(r.value_or(p), p);
  out.scores = scores(d, out.loadings, out.r);
  out.input = std::move(d);

  out.variance_explained.reserve(p);
  double total = 0.0;
  for (double v : out.eigenvalues) total += std::max(v, 0.0);
  for (double v : out.eigenvalues)
    out.variance_explained.push_back(total > 0.0 ? std::max(v, 0.0) / total : 0.0);

  out.near_degenerate.assign(p, false);
  if (p > 1 && out.eigenvalues[0] > 0.0) {
    for (std::size_t l = 0; l + 1 < p; ++l)
      if (out.eigenvalues[l] - out.eigenvalues[l + 1] < 1e-8 * out.eigenvalues[0]) {
        out.near_degenerate[l] = true;
        out.near_degenerate[l + 1] = true;
      }
  }
  return out;
}

}  // namespace netpca
