#pragma once

// Test-side reference computations. Nothing here calls into the library's
// numerical code; matrices are only used as containers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ssnmf/matrix.hpp"
#include "ssnmf/solver.hpp"

namespace oracle {

using ssnmf::DenseMatrix;

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen,
                                 double lo = 0.1, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

inline DenseMatrix binary_mask(std::size_t rows, std::size_t cols, std::mt19937_64& gen,
                               double keep = 0.8) {
  std::bernoulli_distribution coin(keep);
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = coin(gen) ? 1.0 : 0.0;
  return m;
}

inline DenseMatrix naive_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0.0L;
      for (std::size_t p = 0; p < a.cols(); ++p) s += static_cast<long double>(a(i, p)) * b(p, j);
      out(i, j) = static_cast<double>(s);
    }
  return out;
}

inline double scalar_fro(const DenseMatrix& x, const DenseMatrix& z, const DenseMatrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double d = m(i, j) * (x(i, j) - z(i, j));
      t += d * d;
    }
  return t;
}

inline double scalar_div(const DenseMatrix& x, const DenseMatrix& z, const DenseMatrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double a = m(i, j) * x(i, j);
      const double b = m(i, j) * z(i, j);
      if (a == 0.0) t += b;
      else if (b == 0.0) return INFINITY;
      else t += a * std::log(a / b) - a + b;
    }
  return t;
}

struct Problem {
  DenseMatrix x, y, w, l;
  double lambda = 1.0;
  bool rec_div = false;
  bool sup_div = false;
};

inline double objective(const Problem& p, const DenseMatrix& a, const DenseMatrix& b,
                        const DenseMatrix& s) {
  const DenseMatrix as = naive_matmul(a, s);
  const DenseMatrix bs = naive_matmul(b, s);
  const double r = p.rec_div ? scalar_div(p.x, as, p.w) : scalar_fro(p.x, as, p.w);
  const double q = p.sup_div ? scalar_div(p.y, bs, p.l) : scalar_fro(p.y, bs, p.l);
  return r + p.lambda * q;
}

enum class Which { a, b, s };

/// Central differences of the objective with respect to one factor.
inline DenseMatrix fd_gradient(const Problem& p, const ssnmf::FactorState& st, Which which,
                               double h = 1e-6) {
  ssnmf::FactorState work = st;
  DenseMatrix& f = which == Which::a ? work.a : which == Which::b ? work.b : work.s;
  DenseMatrix g(f.rows(), f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const double saved = f(i, j);
      f(i, j) = saved + h;
      const double up = objective(p, work.a, work.b, work.s);
      f(i, j) = saved - h;
      const double down = objective(p, work.a, work.b, work.s);
      f(i, j) = saved;
      g(i, j) = (up - down) / (2.0 * h);
    }
  return g;
}

inline double max_rel_error(const DenseMatrix& got, const DenseMatrix& want) {
  double scale = 0.0;
  for (std::size_t i = 0; i < want.rows(); ++i)
    for (std::size_t j = 0; j < want.cols(); ++j) scale = std::max(scale, std::abs(want(i, j)));
  double worst = 0.0;
  for (std::size_t i = 0; i < want.rows(); ++i)
    for (std::size_t j = 0; j < want.cols(); ++j)
      worst = std::max(worst, std::abs(got(i, j) - want(i, j)) / std::max(scale, 1e-12));
  return worst;
}

/// min ½‖W⊙(x − A s)‖² over s ≥ 0 for each column, by projected gradient
/// with step 1/L until the projected gradient vanishes.
inline DenseMatrix nnls(const DenseMatrix& a, const DenseMatrix& x, const DenseMatrix& w,
                        std::size_t max_iters = 200000, double tol = 1e-13) {
  const std::size_t r = a.cols();
  DenseMatrix s(r, x.cols(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    // Gram matrix of the column's masked problem.
    std::vector<double> g(r * r, 0.0), c(r, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double ww = w(i, j) * w(i, j);
      for (std::size_t p = 0; p < r; ++p) {
        c[p] += ww * a(i, p) * x(i, j);
        for (std::size_t q = 0; q < r; ++q) g[p * r + q] += ww * a(i, p) * a(i, q);
      }
    }
    double lip = 0.0;
    for (std::size_t p = 0; p < r; ++p) {
      double row = 0.0;
      for (std::size_t q = 0; q < r; ++q) row += std::abs(g[p * r + q]);
      lip = std::max(lip, row);
    }
    if (lip == 0.0) continue;
    std::vector<double> v(r, 0.0), grad(r);
    for (std::size_t it = 0; it < max_iters; ++it) {
      double pg = 0.0;
      for (std::size_t p = 0; p < r; ++p) {
        double t = -c[p];
        for (std::size_t q = 0; q < r; ++q) t += g[p * r + q] * v[q];
        grad[p] = t;
        const double proj = v[p] > 0.0 ? t : std::min(t, 0.0);
        pg = std::max(pg, std::abs(proj));
      }
      if (pg < tol) break;
      for (std::size_t p = 0; p < r; ++p) v[p] = std::max(0.0, v[p] - grad[p] / lip);
    }
    for (std::size_t p = 0; p < r; ++p) s(p, j) = v[p];
  }
  return s;
}

} // namespace oracle
