#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ssnmf/errors.hpp"

namespace ssnmf {

/// Row-major dense matrix of doubles.
///
/// Shapes are always at least 1x1. Matrices holding data, labels, masks or
/// factors are expected to be nonnegative; `DenseMatrix::nonnegative` is the
/// checked entry point for raw data of that kind.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Literal construction, mostly for tests: `{{1, 2}, {3, 4}}`.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Builds a matrix and rejects any negative (or NaN) entry.
  static DenseMatrix nonnegative(std::size_t rows, std::size_t cols,
                                 std::vector<double> data);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  void fill(double value);

  bool same_shape(const DenseMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::string shape_string(const DenseMatrix& m);

/// Throws DimensionError naming `context` when shapes differ.
void require_same_shape(const DenseMatrix& a, const DenseMatrix& b,
                        const char* context);

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);

/// a / (b + eps), entrywise.
DenseMatrix safe_divide(const DenseMatrix& a, const DenseMatrix& b, double eps);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// aᵀ·b without materializing the transpose.
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
/// a·bᵀ without materializing the transpose.
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& a);

/// max(a, 0) entrywise. Only the synthetic data generators use this.
DenseMatrix clamp_nonnegative(DenseMatrix a);

bool is_nonnegative(const DenseMatrix& a) noexcept;
double sum(const DenseMatrix& a) noexcept;
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// In-place kernels used by the solver inner loops. `out` must already have
// the result shape; no allocation happens.
namespace kernels {
void matmul(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
void matmul_tn(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
void matmul_nt(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
} // namespace kernels

} // namespace ssnmf
