#include "ssnmf/labels.hpp"

#include <string>

namespace ssnmf {

LabelMatrix::LabelMatrix(DenseMatrix m) : m_(std::move(m)) {
  for (std::size_t j = 0; j < m_.cols(); ++j) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < m_.rows(); ++i) {
      const double v = m_(i, j);
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        throw ConfigError("label matrix column " + std::to_string(j) +
                          " has a non-binary entry");
      }
    }
    if (ones != 1) {
      throw ConfigError("label matrix column " + std::to_string(j) + " has " +
                        std::to_string(ones) + " ones, expected exactly 1");
    }
  }
}

LabelMatrix LabelMatrix::from_indices(const std::vector<std::size_t>& labels, std::size_t k) {
  return one_hot(labels, k);
}

std::vector<std::size_t> LabelMatrix::indices() const {
  std::vector<std::size_t> out(m_.cols(), 0);
  for (std::size_t j = 0; j < m_.cols(); ++j)
    for (std::size_t i = 0; i < m_.rows(); ++i)
      if (m_(i, j) == 1.0) out[j] = i;
  return out;
}

LabelMatrix label(const DenseMatrix& z) {
  DenseMatrix out(z.rows(), z.cols());
  for (std::size_t j = 0; j < z.cols(); ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < z.rows(); ++i)
      if (z(i, j) > z(best, j)) best = i;
    out(best, j) = 1.0;
  }
  return LabelMatrix(std::move(out));
}

LabelMatrix one_hot(const std::vector<std::size_t>& labels, std::size_t k) {
  if (k == 0) throw ConfigError("one_hot: k must be at least 1");
  if (labels.empty()) throw DimensionError("one_hot: no labels");
  DenseMatrix m(k, labels.size());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] >= k) {
      throw ConfigError("one_hot: label " + std::to_string(labels[j]) + " at position " +
                        std::to_string(j) + " is out of range for k = " + std::to_string(k));
    }
    m(labels[j], j) = 1.0;
  }
  return LabelMatrix(std::move(m));
}

} // namespace ssnmf
