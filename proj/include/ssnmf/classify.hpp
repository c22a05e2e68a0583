#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ssnmf/labels.hpp"
#include "ssnmf/solver.hpp"

namespace ssnmf {

/// Learned dictionaries of a trained SSNMF classifier.
struct ClassifierModel {
  DenseMatrix a_train; // n1 x r
  DenseMatrix b_train; // k x r
  ModelVariant variant;
  SsnmfConfig config;
};

struct TrainResult {
  ClassifierModel model;
  FitResult fit;
};

/// Fits the variant on fully labeled training data (L all ones).
TrainResult train(const DenseMatrix& x_train, const DenseMatrix& w_train,
                  const LabelMatrix& y_train, ModelVariant variant, const SsnmfConfig& config);

/// Partially supervised training: zero columns of `l_train` mark unlabeled
/// samples whose entries of `y_train` are ignored.
TrainResult train(const DenseMatrix& x_train, const DenseMatrix& w_train,
                  const DenseMatrix& y_train, const DenseMatrix& l_train,
                  ModelVariant variant, const SsnmfConfig& config);

/// Representation of new data in the span of A_train: one-sided multiplicative
/// updates of S under the variant's reconstruction error, A held fixed. When
/// `trace` is given it receives the reconstruction error before the first and
/// after every update.
DenseMatrix transform(const ClassifierModel& model, const DenseMatrix& x_test,
                      const DenseMatrix& w_test, std::size_t iters,
                      std::vector<double>* trace = nullptr);

/// label(B_train · S_test).
LabelMatrix predict(const ClassifierModel& model, const DenseMatrix& s_test);

/// Fraction of columns whose one-hot vectors agree.
double accuracy(const LabelMatrix& y_true, const LabelMatrix& y_pred);

/// Writes A.csv, B.csv and model.json into `dir` (created if missing).
void save_model(const ClassifierModel& model, const std::filesystem::path& dir,
                const std::string& vocabulary_ref = "");
ClassifierModel load_model(const std::filesystem::path& dir);

} // namespace ssnmf
