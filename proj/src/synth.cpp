#include "ssnmf/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "ssnmf/csv.hpp"
#include "ssnmf/rng.hpp"

namespace ssnmf {

namespace {

// Overwrites exactly `count` uniformly chosen entries with uniform [0,1) values.
void fill_sparse(DenseMatrix& m, double density, Engine& engine) {
  const std::size_t total = m.size();
  const auto count = static_cast<std::size_t>(std::llround(density * static_cast<double>(total)));
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `count` slots form the support.
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform01(engine) * static_cast<double>(total - i));
    std::swap(idx[i], idx[std::min(j, total - 1)]);
  }
  m.fill(0.0);
  for (std::size_t i = 0; i < count; ++i) m.values()[idx[i]] = uniform01(engine);
}

struct TrialData {
  DenseMatrix x;
  DenseMatrix y;
  FactorState init;
};

} // namespace

NoiseModel NoiseModel::gaussian(double variance) {
  if (!(variance > 0.0)) throw ConfigError("gaussian noise variance must be positive");
  return {Kind::gaussian, variance};
}

std::string NoiseModel::describe() const {
  if (kind == Kind::poisson) return "Poisson";
  std::ostringstream s;
  s << "Gaussian(" << variance << ")";
  return s.str();
}

ExperimentSpec ExperimentSpec::make(int id, const SynthDims& dims) {
  ExperimentSpec spec;
  spec.id = id;
  spec.dims = dims;
  const double small = 1.0 / (2.0 * static_cast<double>(dims.r));
  switch (id) {
  case 1:
    spec.x_noise = NoiseModel::gaussian(1.0);
    spec.y_noise = NoiseModel::gaussian(1.0);
    break;
  case 2:
    spec.x_noise = NoiseModel::gaussian(small);
    spec.y_noise = NoiseModel::poisson();
    break;
  case 3:
    spec.x_noise = NoiseModel::poisson();
    spec.y_noise = NoiseModel::gaussian(small);
    break;
  case 4:
    spec.x_noise = NoiseModel::poisson();
    spec.y_noise = NoiseModel::poisson();
    break;
  default:
    throw ConfigError("experiment id must be 1..4, got " + std::to_string(id));
  }
  return spec;
}

ExperimentSpec ExperimentSpec::full_scale(int id) {
  ExperimentSpec spec = make(id, SynthDims{500, 500, 500, 5});
  spec.iters = 100000;
  return spec;
}

ExperimentSpec ExperimentSpec::desk_scale(int id) {
  ExperimentSpec spec = make(id, SynthDims{100, 100, 100, 5});
  spec.iters = 20000;
  return spec;
}

ModelVariant ExperimentSpec::matched_variant() const {
  return kAllVariants.at(static_cast<std::size_t>(id - 1));
}

void ExperimentSpec::validate() const {
  if (id < 1 || id > 4) throw ConfigError("experiment id must be 1..4");
  Shape{dims.n1, dims.n2, dims.k, dims.r}.validate();
  if (!(density > 0.0 && density <= 1.0)) throw ConfigError("density must be in (0, 1]");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (iters == 0) throw ConfigError("iters must be at least 1");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  for (const auto* n : {&x_noise, &y_noise})
    if (n->kind == NoiseModel::Kind::gaussian && !(n->variance > 0.0))
      throw ConfigError("gaussian noise variance must be positive");
}

FactorState gen_factors(const SynthDims& dims, double density, std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw ConfigError("density must be in (0, 1]");
  Engine engine = make_engine(seed, "factors");
  FactorState st{DenseMatrix(dims.n1, dims.r), DenseMatrix(dims.k, dims.r),
                 DenseMatrix(dims.r, dims.n2)};
  for (double& v : st.a.values()) v = uniform01(engine);
  fill_sparse(st.s, density, engine);
  fill_sparse(st.b, density, engine);
  return st;
}

DenseMatrix sample_gaussian(const DenseMatrix& mean, double variance, std::uint64_t seed) {
  if (!(variance > 0.0)) throw ConfigError("sample_gaussian: variance must be positive");
  Engine engine = make_engine(seed, "gaussian");
  const double sd = std::sqrt(variance);
  DenseMatrix out(mean.rows(), mean.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.values()[i] = std::max(0.0, mean.values()[i] + sd * standard_normal(engine));
  return out;
}

DenseMatrix sample_poisson(const DenseMatrix& mean, std::uint64_t seed) {
  if (!is_nonnegative(mean)) throw ConfigError("sample_poisson: intensities must be nonnegative");
  Engine engine = make_engine(seed, "poisson");
  DenseMatrix out(mean.rows(), mean.cols());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.values()[i] = static_cast<double>(poisson(engine, mean.values()[i]));
  return out;
}

DenseMatrix sample_noise(const NoiseModel& noise, const DenseMatrix& mean, std::uint64_t seed) {
  return noise.kind == NoiseModel::Kind::poisson ? sample_poisson(mean, seed)
                                                 : sample_gaussian(mean, noise.variance, seed);
}

std::size_t ExperimentResult::argmin() const {
  return static_cast<std::size_t>(std::min_element(mean_error.begin(), mean_error.end()) -
                                  mean_error.begin());
}

bool ExperimentResult::matched_is_strict_min() const {
  const auto m = static_cast<std::size_t>(id - 1);
  for (std::size_t v = 0; v < mean_error.size(); ++v) {
    if (v == m) continue;
    if (!(mean_error[m] < mean_error[v])) return false;
  }
  return true;
}

ExperimentResult run_mle_experiment(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  const FactorState truth = gen_factors(spec.dims, spec.density, spec.seed);
  const DenseMatrix x_mean = matmul(truth.a, truth.s);
  const DenseMatrix y_mean = matmul(truth.b, truth.s);
  const DenseMatrix w(spec.dims.n1, spec.dims.n2, 1.0);
  const DenseMatrix l(spec.dims.k, spec.dims.n2, 1.0);
  const Shape shape{spec.dims.n1, spec.dims.n2, spec.dims.k, spec.dims.r};

  std::vector<TrialData> trials;
  trials.reserve(spec.trials);
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const std::uint64_t stream = static_cast<std::uint64_t>(spec.id) * 1000003ULL + t;
    trials.push_back(TrialData{
        sample_noise(spec.x_noise, x_mean, derive_seed(spec.seed, "sample-x", stream)),
        sample_noise(spec.y_noise, y_mean, derive_seed(spec.seed, "sample-y", stream)),
        initialize(shape, derive_seed(spec.seed, "trial-init", t))});
  }

  // Fitted products can reach exact zeros where the truth is positive.
  const ObjectiveSpec scoring{spec.matched_variant(), spec.lambda, spec.eps};
  SsnmfConfig config;
  config.rank = spec.dims.r;
  config.lambda = spec.lambda;
  config.max_iters = spec.iters;
  config.tol = 0.0;
  config.eps = spec.eps;
  config.record_trace = false;

  ExperimentResult result;
  result.id = spec.id;
  for (auto& v : result.trial_errors) v.assign(spec.trials, 0.0);

  const std::size_t jobs = spec.trials * kAllVariants.size();
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t t = job / kAllVariants.size();
      const std::size_t v = job % kAllVariants.size();
      try {
        const TrialData& td = trials[t];
        const SsnmfData data{td.x, td.y, w, l};
        FitResult fr = fit(kAllVariants[v], data, config, td.init);
        const double before = objective(scoring, td.init.a, td.init.b, td.init.s, x_mean,
                                        y_mean, w, l);
        const double after = objective(scoring, fr.state.a, fr.state.b, fr.state.s, x_mean,
                                       y_mean, w, l);
        result.trial_errors[v][t] = before > 0.0 ? after / before : 0.0;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error) {
          first_error = std::make_exception_ptr(
              FitError("experiment " + std::to_string(spec.id) + ", trial " +
                       std::to_string(t) + ", variant " + kAllVariants[v].code() + ": " +
                       e.what()));
        }
      }
    }
  };

  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (std::size_t v = 0; v < kAllVariants.size(); ++v) {
    const auto& errs = result.trial_errors[v];
    result.mean_error[v] =
        std::accumulate(errs.begin(), errs.end(), 0.0) / static_cast<double>(errs.size());
  }
  return result;
}

std::string ErrorGrid::to_csv() const {
  std::string out = "variant";
  for (const auto& e : experiments) out += ",experiment_" + std::to_string(e.id);
  out += '\n';
  for (std::size_t v = 0; v < kAllVariants.size(); ++v) {
    out += kAllVariants[v].code();
    for (const auto& e : experiments) out += "," + format_double(e.mean_error[v]);
    out += '\n';
  }
  return out;
}

Json ErrorGrid::to_json() const {
  Json j = Json::array();
  for (const auto& e : experiments) {
    Json ej;
    ej["experiment"] = e.id;
    ej["matched_variant"] = kAllVariants[static_cast<std::size_t>(e.id - 1)].code();
    ej["argmin_variant"] = kAllVariants[e.argmin()].code();
    ej["matched_is_strict_min"] = e.matched_is_strict_min();
    Json rows = Json::object();
    for (std::size_t v = 0; v < kAllVariants.size(); ++v) {
      Json row;
      row["mean_relative_error"] = e.mean_error[v];
      row["trials"] = e.trial_errors[v];
      rows[kAllVariants[v].code()] = std::move(row);
    }
    ej["variants"] = std::move(rows);
    j.push_back(std::move(ej));
  }
  return j;
}

std::string ErrorGrid::to_table() const {
  std::ostringstream out;
  out << std::left << std::setw(12) << "SSNMF";
  for (const auto& e : experiments) out << std::setw(14) << ("exp " + std::to_string(e.id) + " F" + std::to_string(e.id));
  out << '\n';
  for (std::size_t v = 0; v < kAllVariants.size(); ++v) {
    out << std::setw(12) << kAllVariants[v].name();
    for (const auto& e : experiments) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(4) << e.mean_error[v];
      if (e.argmin() == v) cell << '*';
      out << std::setw(14) << cell.str();
    }
    out << '\n';
  }
  return out.str();
}

unsigned threads_from_env() {
  if (const char* env = std::getenv("SSNMF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

SeparableData make_separable(std::size_t classes, std::size_t features_per_class,
                             std::size_t samples_per_class, double noise_variance,
                             std::uint64_t seed) {
  if (classes == 0 || features_per_class == 0 || samples_per_class == 0)
    throw ConfigError("make_separable: sizes must be positive");
  Engine engine = make_engine(seed, "separable");
  const std::size_t n1 = classes * features_per_class;
  const std::size_t n2 = classes * samples_per_class;
  DenseMatrix a(n1, classes);
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t f = 0; f < features_per_class; ++f)
      a(c * features_per_class + f, c) = uniform(engine, 0.5, 1.5);

  DenseMatrix s(classes, n2);
  std::vector<std::size_t> labels(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    // Interleave classes so contiguous splits stay balanced.
    const std::size_t c = j % classes;
    labels[j] = c;
    for (std::size_t i = 0; i < classes; ++i)
      s(i, j) = i == c ? uniform(engine, 0.5, 1.5) : uniform(engine, 0.0, 0.1);
  }
  DenseMatrix mean = matmul(a, s);
  DenseMatrix x = noise_variance > 0.0
                      ? sample_gaussian(mean, noise_variance, derive_seed(seed, "separable-noise"))
                      : mean;
  LabelMatrix y = one_hot(labels, classes);
  return {std::move(x), std::move(labels), std::move(y)};
}

} // namespace ssnmf
