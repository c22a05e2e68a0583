#include "ssnmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssnmf {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be at least 1x1, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
#pragma omp simd reduction(+ : s)
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void require_out_shape(const DenseMatrix& out, std::size_t rows,
                       std::size_t cols, const char* context) {
  if (out.rows() != rows || out.cols() != cols) {
    throw DimensionError(std::string(context) + ": output is " +
                         shape_string(out) + ", expected " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(rows * cols, fill);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

DenseMatrix::DenseMatrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  check_dims(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::nonnegative(std::size_t rows, std::size_t cols,
                                     std::vector<double> data) {
  DenseMatrix m(rows, cols, std::move(data));
  for (std::size_t idx = 0; idx < m.data_.size(); ++idx) {
    const double v = m.data_[idx];
    if (!(v >= 0.0)) {
      std::ostringstream msg;
      msg << "negative or NaN entry " << v << " at (" << idx / cols << ", "
          << idx % cols << ") in a matrix declared nonnegative";
      throw ConfigError(msg.str());
    }
  }
  return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void DenseMatrix::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::string shape_string(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                        const char* context) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(context) + ": shape mismatch " +
                         shape_string(a) + " vs " + shape_string(b));
  }
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "hadamard");
  DenseMatrix out(a.rows(), a.cols());
  auto o = out.values();
  auto x = a.values();
  auto y = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * y[i];
  return out;
}

DenseMatrix safe_divide(const DenseMatrix& a, const DenseMatrix& b, double eps) {
  require_same_shape(a, b, "safe_divide");
  if (!(eps > 0.0)) throw ConfigError("safe_divide: eps must be positive");
  DenseMatrix out(a.rows(), a.cols());
  auto o = out.values();
  auto x = a.values();
  auto y = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] / (y[i] + eps);
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ, " + shape_string(a) +
                         " * " + shape_string(b));
  }
  DenseMatrix out(a.rows(), b.cols());
  kernels::matmul(a, b, out);
  return out;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("matmul_tn: row counts differ, " + shape_string(a) +
                         "^T * " + shape_string(b));
  }
  DenseMatrix out(a.cols(), b.cols());
  kernels::matmul_tn(a, b, out);
  return out;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("matmul_nt: column counts differ, " + shape_string(a) +
                         " * " + shape_string(b) + "^T");
  }
  DenseMatrix out(a.rows(), b.rows());
  kernels::matmul_nt(a, b, out);
  return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

DenseMatrix clamp_nonnegative(DenseMatrix a) {
  for (double& v : a.values()) v = std::max(v, 0.0);
  return a;
}

bool is_nonnegative(const DenseMatrix& a) noexcept {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return v >= 0.0; });
}

double sum(const DenseMatrix& a) noexcept {
  double s = 0.0;
  for (double v : a.values()) s += v;
  return s;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

namespace kernels {

void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
  if (a.cols() != b.rows()) throw DimensionError("kernels::matmul: inner dims");
  require_out_shape(out, a.rows(), b.cols(), "kernels::matmul");
  const std::size_t inner = a.cols();
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* o = out.row(i).data();
    std::fill(o, o + n, 0.0);
    const double* ai = a.row(i).data();
    for (std::size_t p = 0; p < inner; ++p) {
      const double aip = ai[p];
      if (aip == 0.0) continue;
      const double* bp = b.row(p).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += aip * bp[j];
    }
  }
}

void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
  if (a.rows() != b.rows()) throw DimensionError("kernels::matmul_tn: inner dims");
  require_out_shape(out, a.cols(), b.cols(), "kernels::matmul_tn");
  out.fill(0.0);
  const std::size_t m = a.cols();
  const std::size_t n = b.cols();
  for (std::size_t p = 0; p < a.rows(); ++p) {
    const double* ap = a.row(p).data();
    const double* bp = b.row(p).data();
    for (std::size_t i = 0; i < m; ++i) {
      const double api = ap[i];
      if (api == 0.0) continue;
      double* o = out.row(i).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += api * bp[j];
    }
  }
}

void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
  if (a.cols() != b.cols()) throw DimensionError("kernels::matmul_nt: inner dims");
  require_out_shape(out, a.rows(), b.rows(), "kernels::matmul_nt");
  const std::size_t inner = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i).data();
    double* o = out.row(i).data();
    for (std::size_t j = 0; j < b.rows(); ++j) o[j] = dot(ai, b.row(j).data(), inner);
  }
}

} // namespace kernels

} // namespace ssnmf
