#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ssnmf/labels.hpp"
#include "ssnmf/report.hpp"
#include "ssnmf/solver.hpp"

namespace ssnmf {

struct NoiseModel {
  enum class Kind { gaussian, poisson };
  Kind kind = Kind::gaussian;
  double variance = 1.0; // gaussian only

  static NoiseModel gaussian(double variance);
  static NoiseModel poisson() { return {Kind::poisson, 0.0}; }
  std::string describe() const;
};

struct SynthDims {
  std::size_t n1 = 500;
  std::size_t n2 = 500;
  std::size_t k = 500;
  std::size_t r = 5;
};

/// One column of the matched-vs-mismatched noise experiment grid.
///   1: Gaussian(1) / Gaussian(1)      -> matched variant (Fro, Fro)
///   2: Gaussian(1/2r) / Poisson       -> (Fro, Div)
///   3: Poisson / Gaussian(1/2r)       -> (Div, Fro)
///   4: Poisson / Poisson              -> (Div, Div)
struct ExperimentSpec {
  int id = 1;
  NoiseModel x_noise;
  NoiseModel y_noise;
  SynthDims dims;
  double density = 0.5;
  double lambda = 1.0;
  std::size_t iters = 100000;
  std::size_t trials = 5;
  double eps = 1e-10;
  std::uint64_t seed = 0;

  /// Noise pair for `id` at the given dimensions; other fields default.
  static ExperimentSpec make(int id, const SynthDims& dims);
  /// 500 x 500, k = 500, r = 5, N = 100000.
  static ExperimentSpec full_scale(int id);
  /// 100 x 100, k = 100, r = 5, N = 20000.
  static ExperimentSpec desk_scale(int id);

  ModelVariant matched_variant() const;
  void validate() const;
};

/// A dense uniform [0,1); S and B with exactly round(density * size) nonzeros
/// on a uniformly drawn support, nonzero values uniform [0,1).
FactorState gen_factors(const SynthDims& dims, double density, std::uint64_t seed);

/// Entrywise N(mean, variance) draws clamped at 0.
DenseMatrix sample_gaussian(const DenseMatrix& mean, double variance, std::uint64_t seed);
/// Entrywise Poisson(mean) draws.
DenseMatrix sample_poisson(const DenseMatrix& mean, std::uint64_t seed);
DenseMatrix sample_noise(const NoiseModel& noise, const DenseMatrix& mean, std::uint64_t seed);

struct ExperimentResult {
  int id = 0;
  /// Indexed like kAllVariants.
  std::array<double, 4> mean_error{};
  std::array<std::vector<double>, 4> trial_errors;

  std::size_t argmin() const;
  /// True when the matched variant is strictly below every other variant.
  bool matched_is_strict_min() const;
};

/// Generates factors once, then per trial samples X and Y, fits all four
/// variants from one shared initialization and scores each with the
/// experiment's own objective against the noiseless products AS, BS.
ExperimentResult run_mle_experiment(const ExperimentSpec& spec, unsigned threads = 1);

struct ErrorGrid {
  std::vector<ExperimentResult> experiments;

  /// Rows are variants, columns are experiments.
  std::string to_csv() const;
  Json to_json() const;
  /// Plain-text table; column minima carry a '*'.
  std::string to_table() const;
};

/// Worker count from SSNMF_THREADS, else 1.
unsigned threads_from_env();

/// Block-structured data for classification tests: class c owns its own
/// block of `features_per_class` rows in A and a dominant row in S.
struct SeparableData {
  DenseMatrix x;
  std::vector<std::size_t> labels;
  LabelMatrix y;
};

SeparableData make_separable(std::size_t classes, std::size_t features_per_class,
                             std::size_t samples_per_class, double noise_variance,
                             std::uint64_t seed);

} // namespace ssnmf
