#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ssnmf/errors.hpp"
#include "ssnmf/rng.hpp"
#include "ssnmf/synth.hpp"

using namespace ssnmf;

namespace {

std::size_t nonzeros(const DenseMatrix& m) {
  return static_cast<std::size_t>(
      std::count_if(m.values().begin(), m.values().end(), [](double v) { return v != 0.0; }));
}

void moments(const DenseMatrix& m, double& mean, double& var) {
  double s = 0.0, s2 = 0.0;
  for (double v : m.values()) {
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(m.size());
  mean = s / n;
  var = s2 / n - mean * mean;
}

} // namespace

TEST_CASE("sub-streams") {
  CHECK(derive_seed(1, "init") == derive_seed(1, "init"));
  CHECK(derive_seed(1, "init") != derive_seed(1, "split"));
  CHECK(derive_seed(1, "init", 0) != derive_seed(1, "init", 1));
  CHECK(derive_seed(1, "init") != derive_seed(2, "init"));
  Engine e = make_engine(5, "x");
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(e);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian sampling") {
  const DenseMatrix mean(100, 1000, 2.0);
  double m = 0.0, v = 0.0;
  moments(sample_gaussian(mean, 1.0, 3), m, v);
  CHECK(std::abs(m - 2.0) < 0.02);
  CHECK(std::abs(v - 1.0) < 0.05);
  const DenseMatrix tiny = sample_gaussian(DenseMatrix{{0.5, 1.5}}, 1e-30, 1);
  CHECK(tiny(0, 0) == doctest::Approx(0.5));
  CHECK(tiny(0, 1) == doctest::Approx(1.5));
  CHECK(is_nonnegative(sample_gaussian(DenseMatrix(50, 50, 0.0), 1.0, 2)));
  CHECK(sample_gaussian(mean, 1.0, 3) == sample_gaussian(mean, 1.0, 3));
  CHECK_THROWS_AS(sample_gaussian(mean, 0.0, 3), ConfigError);
}

TEST_CASE("poisson sampling") {
  double m = 0.0, v = 0.0;
  moments(sample_poisson(DenseMatrix(100, 1000, 3.0), 4), m, v);
  CHECK(std::abs(m - 3.0) < 0.03);
  CHECK(std::abs(v - m) / m < 0.05);
  moments(sample_poisson(DenseMatrix(100, 1000, 80.0), 5), m, v);
  CHECK(std::abs(m - 80.0) < 0.2);
  CHECK(std::abs(v - m) / m < 0.05);
  const DenseMatrix zero = sample_poisson(DenseMatrix(10, 10, 0.0), 6);
  CHECK(nonzeros(zero) == 0);
  const DenseMatrix counts = sample_poisson(DenseMatrix(10, 10, 2.5), 7);
  for (double x : counts.values()) CHECK(x == std::floor(x));
}

TEST_CASE("gen_factors") {
  const FactorState f = gen_factors(SynthDims{500, 500, 500, 5}, 0.5, 1);
  CHECK(nonzeros(f.s) == 1250);
  CHECK(nonzeros(f.b) == 1250);
  CHECK(f.a.rows() == 500);
  for (double v : f.a.values()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  const FactorState dense = gen_factors(SynthDims{10, 12, 4, 3}, 1.0, 1);
  CHECK(nonzeros(dense.s) == dense.s.size());
  CHECK(nonzeros(dense.b) == dense.b.size());
  CHECK(gen_factors(SynthDims{10, 12, 4, 3}, 0.5, 9) == gen_factors(SynthDims{10, 12, 4, 3}, 0.5, 9));
}

TEST_CASE("experiment specs") {
  const ExperimentSpec e2 = ExperimentSpec::full_scale(2);
  CHECK(e2.dims.n1 == 500);
  CHECK(e2.iters == 100000);
  CHECK(e2.x_noise.kind == NoiseModel::Kind::gaussian);
  CHECK(e2.x_noise.variance == doctest::Approx(0.1));
  CHECK(e2.y_noise.kind == NoiseModel::Kind::poisson);
  CHECK(e2.matched_variant() == kFroDiv);
  const ExperimentSpec e3 = ExperimentSpec::desk_scale(3);
  CHECK(e3.dims.n1 == 100);
  CHECK(e3.iters == 20000);
  CHECK(e3.matched_variant() == kDivFro);
  CHECK(ExperimentSpec::desk_scale(1).y_noise.variance == 1.0);
  CHECK(ExperimentSpec::desk_scale(4).matched_variant() == kDivDiv);
  CHECK_THROWS_AS(ExperimentSpec::make(5, SynthDims{}), ConfigError);
}

TEST_CASE("mle experiment harness") {
  ExperimentSpec spec = ExperimentSpec::make(4, SynthDims{12, 10, 8, 2});
  spec.iters = 60;
  spec.trials = 3;
  const ExperimentResult one = run_mle_experiment(spec, 1);
  const ExperimentResult many = run_mle_experiment(spec, 3);
  for (std::size_t v = 0; v < 4; ++v) {
    CHECK(one.trial_errors[v].size() == 3);
    CHECK(one.trial_errors[v] == many.trial_errors[v]);
    CHECK(one.mean_error[v] >= 0.0);
    CHECK(std::isfinite(one.mean_error[v]));
  }
  ErrorGrid grid{{one}};
  CHECK(grid.to_csv().find("variant,experiment_4\nFF,") == 0);
  CHECK(grid.to_json()[0]["experiment"] == 4);
  CHECK(grid.to_table().find('*') != std::string::npos);
}

TEST_CASE("separable data") {
  const SeparableData d = make_separable(3, 4, 5, 0.01, 1);
  CHECK(d.x.rows() == 12);
  CHECK(d.x.cols() == 15);
  CHECK(d.y.classes() == 3);
  CHECK(d.labels[4] == 1);
  CHECK(is_nonnegative(d.x));
}
