#include "ssnmf/classify.hpp"

#include <filesystem>

#include "ssnmf/csv.hpp"
#include "ssnmf/fpenv.hpp"
#include "ssnmf/report.hpp"
#include "ssnmf/rng.hpp"

namespace ssnmf {

TrainResult train(const DenseMatrix& x_train, const DenseMatrix& w_train,
                  const LabelMatrix& y_train, ModelVariant variant,
                  const SsnmfConfig& config) {
  const DenseMatrix& y = y_train.matrix();
  const DenseMatrix l(y.rows(), y.cols(), 1.0);
  return train(x_train, w_train, y, l, variant, config);
}

TrainResult train(const DenseMatrix& x_train, const DenseMatrix& w_train,
                  const DenseMatrix& y_train, const DenseMatrix& l_train,
                  ModelVariant variant, const SsnmfConfig& config) {
  const SsnmfData data{x_train, y_train, w_train, l_train};
  FitResult result = fit(variant, data, config);
  ClassifierModel model{result.state.a, result.state.b, variant, config};
  return {std::move(model), std::move(result)};
}

DenseMatrix transform(const ClassifierModel& model, const DenseMatrix& x_test,
                      const DenseMatrix& w_test, std::size_t iters,
                      std::vector<double>* trace) {
  const DenseMatrix& a = model.a_train;
  if (x_test.rows() != a.rows()) {
    throw DimensionError("transform: test data has " + std::to_string(x_test.rows()) +
                         " features, dictionary has " + std::to_string(a.rows()));
  }
  require_same_shape(x_test, w_test, "transform (mask)");
  if (iters == 0) throw ConfigError("transform: iters must be at least 1");
  if (!is_nonnegative(x_test) || !is_nonnegative(w_test))
    throw ConfigError("transform: test data and mask must be nonnegative");

  const double eps = model.config.eps;
  const ErrorKind kind = model.variant.reconstruction;
  const std::size_t r = a.cols();

  DenseMatrix s(r, x_test.cols());
  Engine engine = make_engine(model.config.seed, "transform");
  for (double& v : s.values()) v = uniform(engine, 0.01, 1.01);

  const DenseMatrix wx = hadamard(w_test, x_test);
  // Fixed across iterations for the divergence rule.
  const DenseMatrix at_w = kind == ErrorKind::divergence ? matmul_tn(a, w_test) : DenseMatrix();
  DenseMatrix fixed_num = kind == ErrorKind::frobenius ? matmul_tn(a, wx) : DenseMatrix();
  DenseMatrix z(x_test.rows(), x_test.cols());
  DenseMatrix num(r, x_test.cols());
  DenseMatrix den(r, x_test.cols());

  auto record = [&] {
    if (trace) trace->push_back(error_term(kind, x_test, matmul(a, s), w_test));
  };
  if (trace) trace->clear();
  record();

  FlushSubnormalsScope ftz;
  auto zv = z.values();
  auto wv = w_test.values();
  auto wxv = wx.values();
  for (std::size_t it = 0; it < iters; ++it) {
    kernels::matmul(a, s, z);
    if (kind == ErrorKind::frobenius) {
      // S ⊙ Aᵀ(W⊙X) / Aᵀ(W⊙AS)
      for (std::size_t i = 0; i < zv.size(); ++i) zv[i] *= wv[i];
      kernels::matmul_tn(a, z, den);
      for (std::size_t i = 0; i < s.size(); ++i)
        s.values()[i] *= detail::mu_ratio(fixed_num.values()[i], den.values()[i], eps);
    } else {
      // S ⊙ Aᵀ[(W⊙X)/(W⊙AS) ⊙ W] / (AᵀW)
      for (std::size_t i = 0; i < zv.size(); ++i)
        zv[i] = wxv[i] / (wv[i] * zv[i] + eps) * wv[i];
      kernels::matmul_tn(a, z, num);
      for (std::size_t i = 0; i < s.size(); ++i)
        s.values()[i] *= detail::mu_ratio(num.values()[i], at_w.values()[i], eps);
    }
    record();
  }
  return s;
}

LabelMatrix predict(const ClassifierModel& model, const DenseMatrix& s_test) {
  if (s_test.rows() != model.b_train.cols()) {
    throw DimensionError("predict: S_test has " + std::to_string(s_test.rows()) +
                         " rows, model rank is " + std::to_string(model.b_train.cols()));
  }
  return label(matmul(model.b_train, s_test));
}

double accuracy(const LabelMatrix& y_true, const LabelMatrix& y_pred) {
  require_same_shape(y_true.matrix(), y_pred.matrix(), "accuracy");
  const auto t = y_true.indices();
  const auto p = y_pred.indices();
  std::size_t hits = 0;
  for (std::size_t j = 0; j < t.size(); ++j) hits += t[j] == p[j] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(t.size());
}

void save_model(const ClassifierModel& model, const std::filesystem::path& dir,
                const std::string& vocabulary_ref) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create model directory '" + dir.string() + "': " + ec.message());
  write_csv_matrix(dir / "A.csv", model.a_train);
  write_csv_matrix(dir / "B.csv", model.b_train);
  Json manifest;
  manifest["variant"] = model.variant.code();
  manifest["rank"] = model.config.rank;
  manifest["lambda"] = model.config.lambda;
  manifest["eps"] = model.config.eps;
  manifest["seed"] = model.config.seed;
  manifest["config"] = config_to_json(model.config);
  manifest["vocabulary"] = vocabulary_ref;
  write_text_file(dir / "model.json", manifest.dump(2) + "\n");
}

ClassifierModel load_model(const std::filesystem::path& dir) {
  Json manifest;
  try {
    manifest = Json::parse(read_text_file(dir / "model.json"));
  } catch (const Json::exception& e) {
    throw IoError("malformed model manifest in '" + dir.string() + "': " + e.what());
  }
  ClassifierModel model;
  const auto variant = ModelVariant::parse(manifest.value("variant", std::string()));
  if (!variant) throw IoError("model manifest in '" + dir.string() + "' has no valid variant");
  model.variant = *variant;
  model.config = config_from_json(manifest.value("config", Json::object()));
  model.a_train = read_csv_matrix(dir / "A.csv");
  model.b_train = read_csv_matrix(dir / "B.csv");
  if (model.a_train.cols() != model.b_train.cols())
    throw DimensionError("model A and B have different ranks");
  return model;
}

} // namespace ssnmf
