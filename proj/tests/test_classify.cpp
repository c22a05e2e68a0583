#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "ssnmf/classify.hpp"
#include "ssnmf/errors.hpp"
#include "ssnmf/synth.hpp"

using namespace ssnmf;

TEST_CASE("label") {
  const DenseMatrix z{{0.2, 0.5}, {0.7, 0.5}, {0.1, 0.0}};
  const LabelMatrix y = label(z);
  CHECK(y.matrix() == DenseMatrix{{0, 1}, {1, 0}, {0, 0}});
  CHECK(label(y.matrix()) == y);
}

TEST_CASE("one_hot") {
  CHECK(one_hot({0, 2}, 3).matrix() == DenseMatrix{{1, 0}, {0, 0}, {0, 1}});
  CHECK(one_hot({0, 0, 0}, 1).matrix() == DenseMatrix{{1, 1, 1}});
  CHECK_THROWS_AS(one_hot({0, 3}, 3), ConfigError);
  CHECK_THROWS_AS(LabelMatrix(DenseMatrix{{1, 1}, {1, 0}}), ConfigError);
  CHECK_THROWS_AS(LabelMatrix(DenseMatrix{{0.5}, {0.5}}), ConfigError);
  const LabelMatrix y = one_hot({1, 0, 2, 1}, 3);
  for (std::size_t j = 0; j < y.samples(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.classes(); ++i) s += y.matrix()(i, j);
    CHECK(s == 1.0);
  }
}

TEST_CASE("accuracy") {
  const LabelMatrix y = one_hot({0, 1, 1, 0}, 2);
  CHECK(accuracy(y, y) == 1.0);
  CHECK(accuracy(y, one_hot({1, 0, 0, 1}, 2)) == 0.0);
  CHECK(accuracy(y, one_hot({0, 1, 1, 1}, 2)) == 0.75);
  CHECK_THROWS_AS(accuracy(y, one_hot({0, 1}, 2)), DimensionError);
}

TEST_CASE("predict") {
  ClassifierModel model;
  model.b_train = DenseMatrix::identity(3);
  const DenseMatrix s{{0.0, 0.2, 0.9}, {1.0, 0.1, 0.0}, {0.0, 0.7, 0.1}};
  CHECK(predict(model, s).indices() == std::vector<std::size_t>{1, 2, 0});
  DenseMatrix scaled = s;
  for (std::size_t i = 0; i < 3; ++i) {
    scaled(i, 0) *= 3.0;
    scaled(i, 1) *= 0.01;
    scaled(i, 2) *= 40.0;
  }
  CHECK(predict(model, scaled) == predict(model, s));
  CHECK_THROWS_AS(predict(model, DenseMatrix(2, 3)), DimensionError);
}

TEST_CASE("transform") {
  std::mt19937_64 gen(2);
  ClassifierModel model;
  model.a_train = oracle::random_matrix(10, 1, gen, 0.2, 1.0);
  model.b_train = DenseMatrix(2, 1, 1.0);
  const DenseMatrix s_true = oracle::random_matrix(1, 6, gen, 0.5, 2.0);
  const DenseMatrix x = matmul(model.a_train, s_true);
  const DenseMatrix ones(10, 6, 1.0);
  for (ModelVariant v : {kFroFro, kDivFro}) {
    model.variant = v;
    const DenseMatrix s = transform(model, x, ones, 500);
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(std::abs(s(0, j) - s_true(0, j)) / s_true(0, j) < 1e-4);
  }

  model.a_train = oracle::random_matrix(10, 3, gen, 0.0, 1.0);
  const DenseMatrix xr = oracle::random_matrix(10, 6, gen, 0.0, 1.0);
  for (ModelVariant v : {kFroFro, kDivDiv}) {
    model.variant = v;
    std::vector<double> trace;
    const DenseMatrix s = transform(model, xr, ones, 100, &trace);
    CHECK(trace.size() == 101);
    CHECK(is_nonnegative(s));
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] * (1 + 1e-9));

    const DenseMatrix init = transform(model, xr, ones, 1);
    const DenseMatrix masked = transform(model, xr, DenseMatrix(10, 6, 0.0), 50);
    // Undo the single update to recover the initial draw: with no signal it must not move.
    const DenseMatrix masked1 = transform(model, xr, DenseMatrix(10, 6, 0.0), 1);
    CHECK(max_abs_diff(masked, masked1) < 1e-9);
    CHECK_FALSE(init == masked);
  }
  CHECK_THROWS_AS(transform(model, DenseMatrix(9, 6, 1.0), DenseMatrix(9, 6, 1.0), 5),
                  DimensionError);
  CHECK_THROWS_AS(transform(model, xr, ones, 0), ConfigError);
}

TEST_CASE("train and predict on separable data") {
  const SeparableData d = make_separable(4, 6, 15, 0.01, 3);
  for (ModelVariant v : kAllVariants) {
    SsnmfConfig cfg;
    cfg.rank = 4;
    cfg.max_iters = 300;
    cfg.seed = 1;
    const TrainResult t = train(d.x, DenseMatrix(d.x.rows(), d.x.cols(), 1.0), d.y, v, cfg);
    const DenseMatrix s = transform(t.model, d.x, DenseMatrix(d.x.rows(), d.x.cols(), 1.0), 300);
    CAPTURE(v.code());
    CHECK(accuracy(d.y, predict(t.model, s)) >= 0.95);
    CHECK(accuracy(d.y, predict(t.model, t.fit.state.s)) >= 0.95);
    const TrainResult again = train(d.x, DenseMatrix(d.x.rows(), d.x.cols(), 1.0), d.y, v, cfg);
    CHECK(again.model.a_train == t.model.a_train);
  }
}

TEST_CASE("single class") {
  const SeparableData d = make_separable(1, 5, 8, 0.01, 1);
  SsnmfConfig cfg;
  cfg.rank = 2;
  cfg.max_iters = 20;
  const TrainResult t = train(d.x, DenseMatrix(5, 8, 1.0), d.y, kFroFro, cfg);
  const DenseMatrix s = transform(t.model, d.x, DenseMatrix(5, 8, 1.0), 20);
  CHECK(accuracy(d.y, predict(t.model, s)) == 1.0);
}

TEST_CASE("partial supervision ignores unlabeled columns") {
  const SeparableData d = make_separable(2, 4, 6, 0.01, 5);
  DenseMatrix l(2, 12, 1.0);
  for (std::size_t j = 6; j < 12; ++j) l(0, j) = l(1, j) = 0.0;
  DenseMatrix y2 = d.y.matrix();
  for (std::size_t j = 6; j < 12; ++j) std::swap(y2(0, j), y2(1, j));
  SsnmfConfig cfg;
  cfg.rank = 2;
  cfg.max_iters = 30;
  const DenseMatrix w(8, 12, 1.0);
  const TrainResult a = train(d.x, w, d.y.matrix(), l, kFroFro, cfg);
  const TrainResult b = train(d.x, w, y2, l, kFroFro, cfg);
  CHECK(a.model.b_train == b.model.b_train);
}

TEST_CASE("model persistence") {
  const auto dir = std::filesystem::temp_directory_path() / "ssnmf_model_test";
  std::filesystem::remove_all(dir);
  ClassifierModel m;
  m.a_train = DenseMatrix{{0.5, 1.0}, {2.0, 0.25}};
  m.b_train = DenseMatrix{{1.0, 0.0}};
  m.variant = kDivFro;
  m.config.rank = 2;
  m.config.lambda = 100.0;
  m.config.seed = 9;
  save_model(m, dir, "vocab.txt");
  const ClassifierModel back = load_model(dir);
  CHECK(back.a_train == m.a_train);
  CHECK(back.b_train == m.b_train);
  CHECK(back.variant == kDivFro);
  CHECK(back.config.lambda == 100.0);
  CHECK(back.config.seed == 9);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(load_model(dir), IoError);
}
