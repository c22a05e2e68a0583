#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ssnmf/divergence.hpp"
#include "ssnmf/matrix.hpp"
#include "ssnmf/variant.hpp"

namespace ssnmf {

/// n1 features, n2 samples, k classes, rank r. r < min(n1, n2) is typical but
/// not required.
struct Shape {
  std::size_t n1 = 1;
  std::size_t n2 = 1;
  std::size_t k = 1;
  std::size_t r = 1;

  void validate() const;
  friend bool operator==(const Shape&, const Shape&) = default;
};

struct SsnmfConfig {
  std::size_t rank = 5;
  double lambda = 1.0;
  std::size_t max_iters = 100;
  /// Stop once trace.back() / trace.front() < tol. 0 disables.
  double tol = 0.0;
  /// Added to every divisor of the multiplicative updates.
  double eps = 1e-10;
  std::uint64_t seed = 0;
  /// When false and tol == 0 the objective is only evaluated at the first
  /// and last iterate, and the trace has two entries. Benchmarks use this.
  bool record_trace = true;

  void validate() const;
};

/// A (n1 x r), B (k x r), S (r x n2); all entries nonnegative.
struct FactorState {
  DenseMatrix a;
  DenseMatrix b;
  DenseMatrix s;

  friend bool operator==(const FactorState&, const FactorState&) = default;
};

/// Borrowed view of the four training inputs. X, W are n1 x n2; Y, L are k x n2.
struct SsnmfData {
  const DenseMatrix& x;
  const DenseMatrix& y;
  const DenseMatrix& w;
  const DenseMatrix& l;

  /// Throws DimensionError on inconsistent shapes, ConfigError on negative entries.
  void validate() const;
  Shape shape(std::size_t rank) const;
};

struct FitResult {
  FactorState state;
  std::vector<double> objective_trace;
  double relative_error = 0.0;
  std::size_t iterations_run = 0;
};

struct Gradients {
  DenseMatrix a;
  DenseMatrix b;
  DenseMatrix s;
};

/// Independent uniform draws from [0.01, 1.01) for A, B, S (in that order).
FactorState initialize(const Shape& shape, std::uint64_t seed);

/// One multiplicative sweep: A, then B, then S, each using the already
/// updated factors.
FactorState mu_step(ModelVariant variant, FactorState state, const SsnmfData& data,
                    double lambda, double eps);

/// Runs mu_step until max_iters or until the relative error drops below tol.
/// Without `init` the factors come from initialize(shape, config.seed).
FitResult fit(ModelVariant variant, const SsnmfData& data, const SsnmfConfig& config,
              std::optional<FactorState> init = std::nullopt);

/// Ratio of last to first trace entry; 0 when the first entry is 0.
double relative_error(const std::vector<double>& trace);

/// Analytic gradient of the variant's objective. Frobenius terms differentiate
/// Σ (W⊙(X − AS))², so the mask enters squared; for binary masks this is the
/// familiar −2[W⊙(X − AS)]Sᵀ. Divergence ratios are ε-guarded.
Gradients gradient(ModelVariant variant, const FactorState& state, const SsnmfData& data,
                   double lambda, double eps);

/// Entrywise step sizes Γ under which factor − Γ⊙∇ reproduces the
/// multiplicative update of that factor (for binary masks and λ > 0).
/// Unguarded; entries are infinite where a denominator vanishes.
Gradients step_sizes(ModelVariant variant, const FactorState& state,
                     const SsnmfData& data, double lambda);

namespace detail {

/// Multiplicative ratio num / (den + eps). An entry with no signal at all
/// (num = den = 0, e.g. a fully masked column) keeps its factor value.
inline double mu_ratio(double num, double den, double eps) noexcept {
  return (den == 0.0 && num == 0.0) ? 1.0 : num / (den + eps);
}

} // namespace detail

} // namespace ssnmf
