#include "ssnmf/evalcluster.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "ssnmf/labels.hpp"

namespace ssnmf {

DenseMatrix hard_assign(const DenseMatrix& s) { return label(s).matrix(); }

SoftAssignment soft_assign(const DenseMatrix& s) {
  SoftAssignment out{s, {}};
  for (std::size_t j = 0; j < s.cols(); ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i) total += s(i, j);
    if (total == 0.0) {
      out.zero_columns.push_back(j);
      continue;
    }
    for (std::size_t i = 0; i < s.rows(); ++i) out.matrix(i, j) = s(i, j) / total;
  }
  return out;
}

TopicScore topic_score(std::span<const double> topic_row, const DenseMatrix& m) {
  if (topic_row.size() != m.cols()) {
    throw DimensionError("topic_score: topic row has " + std::to_string(topic_row.size()) +
                         " documents, ground truth has " + std::to_string(m.cols()));
  }
  TopicScore best;
  bool first = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double overlap = 0.0;
    double size = 0.0;
    for (std::size_t d = 0; d < m.cols(); ++d) {
      overlap += std::abs(topic_row[d] * m(i, d));
      size += std::abs(m(i, d));
    }
    if (size == 0.0) {
      throw EvalError("topic_score: subgroup " + std::to_string(i) + " has no documents");
    }
    const double p = overlap / size;
    if (first || p > best.score) {
      best = {i, p};
      first = false;
    }
  }
  return best;
}

double mean_score(const DenseMatrix& s, const DenseMatrix& m, AssignMode mode) {
  if (s.cols() != m.cols()) {
    throw DimensionError("mean_score: S has " + std::to_string(s.cols()) +
                         " documents, ground truth has " + std::to_string(m.cols()));
  }
  const DenseMatrix assigned = mode == AssignMode::hard ? hard_assign(s) : soft_assign(s).matrix;
  double total = 0.0;
  for (std::size_t l = 0; l < assigned.rows(); ++l) total += topic_score(assigned.row(l), m).score;
  return total / static_cast<double>(assigned.rows());
}

std::vector<std::vector<std::string>> top_keywords(const DenseMatrix& a,
                                                   const std::vector<std::string>& terms,
                                                   std::size_t count) {
  if (a.rows() != terms.size()) {
    throw DimensionError("top_keywords: dictionary has " + std::to_string(a.rows()) +
                         " rows, vocabulary has " + std::to_string(terms.size()) + " terms");
  }
  const std::size_t take = std::min(count, terms.size());
  std::vector<std::vector<std::string>> out(a.cols());
  std::vector<std::size_t> order(terms.size());
  for (std::size_t topic = 0; topic < a.cols(); ++topic) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                      [&](std::size_t x, std::size_t y) {
                        if (a(x, topic) != a(y, topic)) return a(x, topic) > a(y, topic);
                        return terms[x] < terms[y];
                      });
    for (std::size_t i = 0; i < take; ++i) out[topic].push_back(terms[order[i]]);
  }
  return out;
}

TopicReport build_topic_report(const DenseMatrix& a, const std::vector<std::string>& terms,
                               std::size_t count, const DenseMatrix& s, const DenseMatrix& m,
                               std::vector<std::string> subgroup_names) {
  TopicReport report;
  report.subgroup_names = std::move(subgroup_names);
  for (auto& kw : top_keywords(a, terms, count)) report.topics.push_back({std::move(kw), false, {}, {}});
  if (s.empty() || m.empty()) return report;
  if (s.rows() != a.cols()) {
    throw DimensionError("topic report: S has " + std::to_string(s.rows()) +
                         " topics, A has " + std::to_string(a.cols()));
  }
  const DenseMatrix hard = hard_assign(s);
  const DenseMatrix soft = soft_assign(s).matrix;
  for (std::size_t l = 0; l < report.topics.size(); ++l) {
    report.topics[l].scored = true;
    report.topics[l].hard = topic_score(hard.row(l), m);
    report.topics[l].soft = topic_score(soft.row(l), m);
  }
  return report;
}

Json TopicReport::to_json() const {
  Json topics_json = Json::array();
  double hard_sum = 0.0;
  double soft_sum = 0.0;
  for (std::size_t l = 0; l < topics.size(); ++l) {
    const auto& t = topics[l];
    Json tj;
    tj["topic"] = l + 1;
    tj["keywords"] = t.keywords;
    if (t.scored) {
      auto score_json = [&](const TopicScore& sc) {
        Json sj;
        sj["subgroup"] = sc.subgroup;
        if (sc.subgroup < subgroup_names.size()) sj["subgroup_name"] = subgroup_names[sc.subgroup];
        sj["score"] = sc.score;
        return sj;
      };
      tj["hard"] = score_json(t.hard);
      tj["soft"] = score_json(t.soft);
      hard_sum += t.hard.score;
      soft_sum += t.soft.score;
    }
    topics_json.push_back(std::move(tj));
  }
  Json j;
  j["topics"] = std::move(topics_json);
  if (!topics.empty() && topics.front().scored) {
    j["mean_hard_score"] = hard_sum / static_cast<double>(topics.size());
    j["mean_soft_score"] = soft_sum / static_cast<double>(topics.size());
  }
  return j;
}

std::string TopicReport::to_table() const {
  std::size_t width = 8;
  std::size_t depth = 0;
  for (const auto& t : topics) {
    depth = std::max(depth, t.keywords.size());
    for (const auto& k : t.keywords) width = std::max(width, k.size() + 1);
  }
  std::ostringstream out;
  out << std::left;
  for (std::size_t l = 0; l < topics.size(); ++l)
    out << std::setw(static_cast<int>(width + 1)) << ("Topic " + std::to_string(l + 1));
  out << '\n';
  for (std::size_t row = 0; row < depth; ++row) {
    for (const auto& t : topics)
      out << std::setw(static_cast<int>(width + 1)) << (row < t.keywords.size() ? t.keywords[row] : "");
    out << '\n';
  }
  if (!topics.empty() && topics.front().scored) {
    for (const char* label : {"hard P", "soft P"}) {
      const bool hard = label[0] == 'h';
      for (const auto& t : topics) {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(4) << (hard ? t.hard.score : t.soft.score);
        out << std::setw(static_cast<int>(width + 1)) << cell.str();
      }
      out << "  " << label << '\n';
    }
  }
  return out.str();
}

} // namespace ssnmf
