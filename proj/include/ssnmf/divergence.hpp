#pragma once

#include "ssnmf/matrix.hpp"
#include "ssnmf/variant.hpp"

namespace ssnmf {

struct ObjectiveSpec {
  ModelVariant variant;
  double lambda = 1.0;
  /// Added to the divergence log denominator; 0 gives the exact divergence.
  double log_eps = 0.0;
};

/// Σ (mask·(x − z))². The mask weights inside the square.
double frobenius_sq(const DenseMatrix& x, const DenseMatrix& z, const DenseMatrix& mask);

/// I-divergence D(mask⊙x ‖ mask⊙z) with the 0·log 0 = 0 convention.
///
/// Returns +infinity when some masked x entry is positive but the matching
/// masked z entry is zero. A positive `eps` evaluates a·log(a / (b + eps))
/// instead, which stays finite.
double i_divergence(const DenseMatrix& x, const DenseMatrix& z, const DenseMatrix& mask,
                    double eps = 0.0);

double error_term(ErrorKind kind, const DenseMatrix& x, const DenseMatrix& z,
                  const DenseMatrix& mask, double eps = 0.0);

struct ObjectiveTerms {
  double reconstruction = 0.0;
  double supervision = 0.0;
  double lambda = 0.0;

  /// λ = 0 drops the supervision term even when it is infinite.
  double total() const noexcept {
    return lambda == 0.0 ? reconstruction : reconstruction + lambda * supervision;
  }
};

/// Both terms of R(W⊙X, W⊙AS) + λ S(L⊙Y, L⊙BS), evaluated separately.
ObjectiveTerms objective_terms(const ObjectiveSpec& spec, const DenseMatrix& a,
                               const DenseMatrix& b, const DenseMatrix& s,
                               const DenseMatrix& x, const DenseMatrix& y,
                               const DenseMatrix& w, const DenseMatrix& l);

double objective(const ObjectiveSpec& spec, const DenseMatrix& a, const DenseMatrix& b,
                 const DenseMatrix& s, const DenseMatrix& x, const DenseMatrix& y,
                 const DenseMatrix& w, const DenseMatrix& l);

} // namespace ssnmf
