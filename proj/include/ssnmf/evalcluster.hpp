#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ssnmf/matrix.hpp"
#include "ssnmf/report.hpp"

namespace ssnmf {

enum class AssignMode { hard, soft };

/// Column-wise argmax mask of the representation matrix; lowest-index ties.
DenseMatrix hard_assign(const DenseMatrix& s);

struct SoftAssignment {
  DenseMatrix matrix;
  std::vector<std::size_t> zero_columns;
};

/// Each nonzero column divided by its 1-norm; zero columns stay zero.
SoftAssignment soft_assign(const DenseMatrix& s);

struct TopicScore {
  std::size_t subgroup = 0;
  double score = 0.0;
};

/// Best subgroup I = argmax_i ‖ŝ ⊙ M_i‖₁ / ‖M_i‖₁ and its ratio P.
/// Throws EvalError if some subgroup row of `m` is all zero.
TopicScore topic_score(std::span<const double> topic_row, const DenseMatrix& m);

/// Average of topic_score(...).score over all rows of the assigned S.
double mean_score(const DenseMatrix& s, const DenseMatrix& m, AssignMode mode);

/// Per topic column of `a`, the `count` highest-weight terms (ties
/// lexicographic). Truncated to |vocab| when count is larger.
std::vector<std::vector<std::string>> top_keywords(const DenseMatrix& a,
                                                   const std::vector<std::string>& terms,
                                                   std::size_t count);

struct TopicEntry {
  std::vector<std::string> keywords;
  bool scored = false;
  TopicScore hard;
  TopicScore soft;
};

struct TopicReport {
  std::vector<TopicEntry> topics;
  std::vector<std::string> subgroup_names;

  Json to_json() const;
  /// Keywords grid, one column per topic, with scores appended when present.
  std::string to_table() const;
};

/// Keywords for every topic; scores too when `s` and `m` are non-empty.
TopicReport build_topic_report(const DenseMatrix& a, const std::vector<std::string>& terms,
                               std::size_t count, const DenseMatrix& s = {},
                               const DenseMatrix& m = {},
                               std::vector<std::string> subgroup_names = {});

} // namespace ssnmf
