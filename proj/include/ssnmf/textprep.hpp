#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ssnmf/labels.hpp"
#include "ssnmf/matrix.hpp"

namespace ssnmf {

struct Document {
  std::string text;
  std::size_t class_id = 0;
  std::size_t subgroup_id = 0;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<std::string> class_names;
  /// Global subgroup names ("group/subgroup" for directory corpora).
  std::vector<std::string> subgroup_names;

  std::size_t num_classes() const;
  std::size_t num_subgroups() const;
};

/// Lowercased maximal runs of ASCII letters.
std::vector<std::string> tokenize(std::string_view text);

/// Line-based approximation of newsgroup header, quote and signature removal:
/// a leading "Field: value" block up to the first blank line, lines starting
/// with '>' or '|', "... writes:"/"wrote:" attribution lines, and everything
/// from the last "--" separator line on.
std::string strip_newsgroup_boilerplate(std::string_view text);

/// Applies strip_newsgroup_boilerplate to every document in place.
void strip_boilerplate(Corpus& corpus);

using StopWords = std::unordered_set<std::string>;

/// One word per line; blank lines ignored.
StopWords load_stopwords(const std::filesystem::path& path);
/// The bundled English list (data/stopwords_english.txt).
StopWords default_stopwords();

struct VocabularyOptions {
  std::size_t min_df = 1;
  double max_df_ratio = 1.0;
  std::size_t max_size = std::numeric_limits<std::size_t>::max();
};

/// Lexicographically ordered terms with their document frequencies.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, std::size_t> term_index;
  std::vector<std::size_t> doc_freq;
  std::size_t n_documents = 0;

  std::size_t size() const noexcept { return terms.size(); }
  std::optional<std::size_t> index_of(std::string_view term) const;

  /// Terms only, one per line, in index order.
  std::string to_text() const;
  /// Inverse of to_text; document frequencies are unknown (zero).
  static Vocabulary from_terms(std::vector<std::string> terms);
};

/// Drops stopwords and terms outside [min_df, max_df_ratio * #docs]; when more
/// than max_size survive, keeps those with the highest corpus frequency
/// (ties lexicographic).
Vocabulary build_vocabulary(const Corpus& corpus, const StopWords& stopwords,
                            const VocabularyOptions& options);

struct TfidfMatrix {
  DenseMatrix matrix; // |vocab| x #docs
  /// Documents without any in-vocabulary term; their columns are zero.
  std::vector<std::size_t> empty_documents;
};

/// tf · (ln((1 + n) / (1 + df)) + 1) with raw counts tf, then unit Euclidean
/// norm per document. n and df come from the vocabulary.
TfidfMatrix tfidf(const Corpus& corpus, const Vocabulary& vocab);

LabelMatrix class_label_matrix(const Corpus& corpus);
/// One-hot subgroup membership (#subgroups x #docs).
DenseMatrix subgroup_matrix(const Corpus& corpus);

struct SplitRatios {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
};

struct CorpusSplit {
  Corpus train;
  Corpus val;
  Corpus test;
};

/// Per class: deterministic shuffle, keep `per_class_cap` documents (or the
/// smallest class size when no cap is given), then floor(train·n) to train,
/// floor(val·n) to validation and the rest to test.
CorpusSplit split(const Corpus& corpus, const SplitRatios& ratios,
                  std::optional<std::size_t> per_class_cap, std::uint64_t seed);

/// root/<group>/<subgroup>/<doc>; names and files sorted lexicographically.
Corpus load_corpus_dir(const std::filesystem::path& root);
/// One {"text", "group", "subgroup"} object per line.
Corpus load_corpus_jsonl(const std::filesystem::path& path);
/// Dispatches on directory vs file.
Corpus load_corpus(const std::filesystem::path& path);

} // namespace ssnmf
