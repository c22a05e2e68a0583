#pragma once

#include <cstddef>
#include <vector>

#include "ssnmf/matrix.hpp"

namespace ssnmf {

/// k x n matrix whose columns are standard basis vectors.
class LabelMatrix {
public:
  LabelMatrix() = default;

  /// Validates that every column is one-hot; throws ConfigError otherwise.
  explicit LabelMatrix(DenseMatrix m);

  static LabelMatrix from_indices(const std::vector<std::size_t>& labels, std::size_t k);

  const DenseMatrix& matrix() const noexcept { return m_; }
  std::size_t classes() const noexcept { return m_.rows(); }
  std::size_t samples() const noexcept { return m_.cols(); }

  /// Row index of the 1 in each column.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const LabelMatrix&, const LabelMatrix&) = default;

private:
  DenseMatrix m_;
};

/// Per column: the largest entry becomes 1, all others 0. Ties go to the
/// lowest row index.
LabelMatrix label(const DenseMatrix& z);

LabelMatrix one_hot(const std::vector<std::size_t>& labels, std::size_t k);

} // namespace ssnmf
