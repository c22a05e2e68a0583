#include "ssnmf/textprep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ssnmf/csv.hpp"
#include "ssnmf/report.hpp"
#include "ssnmf/rng.hpp"

namespace ssnmf {

namespace {

bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

bool looks_like_header_field(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  return std::all_of(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(colon),
                     [](char c) { return is_ascii_letter(c) || c == '-'; });
}

bool is_attribution(std::string_view line) {
  line = trim(line);
  for (std::string_view tail : {"writes:", "wrote:", "says:", "said:"})
    if (line.size() >= tail.size() && line.substr(line.size() - tail.size()) == tail) return true;
  return line.find("writes in") != std::string_view::npos;
}

bool is_signature_separator(std::string_view line) {
  line = trim(line);
  return line.size() >= 2 && line.find_first_not_of('-') == std::string_view::npos;
}

// Builds the sorted name tables and id assignments shared by both loaders.
struct NameTable {
  std::set<std::string> groups;
  std::set<std::string> subgroups;

  std::vector<std::string> group_list() const { return {groups.begin(), groups.end()}; }
  std::vector<std::string> subgroup_list() const { return {subgroups.begin(), subgroups.end()}; }
};

std::size_t index_in(const std::vector<std::string>& sorted, const std::string& name) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), name) -
                                  sorted.begin());
}

} // namespace

std::size_t Corpus::num_classes() const {
  std::size_t k = class_names.size();
  for (const auto& d : documents) k = std::max(k, d.class_id + 1);
  return k;
}

std::size_t Corpus::num_subgroups() const {
  std::size_t g = subgroup_names.size();
  for (const auto& d : documents) g = std::max(g, d.subgroup_id + 1);
  return g;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_ascii_letter(c)) {
      current += static_cast<char>(c | 0x20); // ASCII lowercase
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string strip_newsgroup_boilerplate(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  std::size_t begin = 0;
  if (!lines.empty() && looks_like_header_field(lines.front())) {
    while (begin < lines.size() && !trim(lines[begin]).empty()) ++begin;
  }
  std::size_t end = lines.size();
  for (std::size_t i = lines.size(); i-- > begin;) {
    if (is_signature_separator(lines[i])) {
      end = i;
      break;
    }
  }
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string_view line = lines[i];
    const std::string_view t = trim(line);
    if (!t.empty() && (t.front() == '>' || t.front() == '|')) continue;
    if (is_attribution(line)) continue;
    out.append(line);
    out += '\n';
  }
  return out;
}

void strip_boilerplate(Corpus& corpus) {
  for (auto& d : corpus.documents) d.text = strip_newsgroup_boilerplate(d.text);
}

StopWords load_stopwords(const std::filesystem::path& path) {
  StopWords words;
  const std::string text = read_text_file(path);
  for (std::string_view line : split_lines(text)) {
    line = trim(line);
    if (!line.empty()) words.emplace(line);
  }
  return words;
}

StopWords default_stopwords() {
  return load_stopwords(std::filesystem::path(SSNMF_DATA_DIR) / "stopwords_english.txt");
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = term_index.find(std::string(term));
  if (it == term_index.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::to_text() const {
  std::string out;
  for (const auto& t : terms) {
    out += t;
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms) {
  Vocabulary v;
  v.terms = std::move(terms);
  v.doc_freq.assign(v.terms.size(), 0);
  for (std::size_t i = 0; i < v.terms.size(); ++i) {
    if (!v.term_index.emplace(v.terms[i], i).second)
      throw IngestError("duplicate vocabulary term '" + v.terms[i] + "'");
  }
  return v;
}

Vocabulary build_vocabulary(const Corpus& corpus, const StopWords& stopwords,
                            const VocabularyOptions& options) {
  if (options.min_df < 1) throw ConfigError("min_df must be at least 1");
  if (!(options.max_df_ratio > 0.0 && options.max_df_ratio <= 1.0))
    throw ConfigError("max_df_ratio must be in (0, 1]");
  if (options.max_size == 0) throw ConfigError("max vocabulary size must be at least 1");

  struct Stats {
    std::size_t df = 0;
    std::size_t total = 0;
  };
  std::map<std::string, Stats> stats; // ordered, so iteration is lexicographic
  for (const auto& doc : corpus.documents) {
    std::set<std::string> seen;
    for (auto& tok : tokenize(doc.text)) {
      if (stopwords.contains(tok)) continue;
      auto& st = stats[tok];
      ++st.total;
      if (seen.insert(tok).second) ++st.df;
    }
  }

  const auto n_docs = static_cast<double>(corpus.documents.size());
  std::vector<std::pair<std::string, Stats>> kept;
  for (auto& [term, st] : stats) {
    if (st.df < options.min_df) continue;
    if (static_cast<double>(st.df) > options.max_df_ratio * n_docs) continue;
    kept.emplace_back(term, st);
  }
  if (kept.size() > options.max_size) {
    std::stable_sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
      return x.second.total > y.second.total; // stable keeps lexicographic ties
    });
    kept.resize(options.max_size);
    std::sort(kept.begin(), kept.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  if (kept.empty()) {
    throw IngestError("vocabulary is empty after filtering (" +
                      std::to_string(corpus.documents.size()) + " documents, min_df " +
                      std::to_string(options.min_df) + ")");
  }

  Vocabulary vocab;
  vocab.n_documents = corpus.documents.size();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    vocab.terms.push_back(kept[i].first);
    vocab.doc_freq.push_back(kept[i].second.df);
    vocab.term_index.emplace(kept[i].first, i);
  }
  return vocab;
}

TfidfMatrix tfidf(const Corpus& corpus, const Vocabulary& vocab) {
  if (vocab.size() == 0) throw IngestError("tfidf: empty vocabulary");
  if (corpus.documents.empty()) throw IngestError("tfidf: empty corpus");
  std::vector<double> idf(vocab.size());
  const auto n = static_cast<double>(vocab.n_documents);
  for (std::size_t t = 0; t < vocab.size(); ++t)
    idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(vocab.doc_freq[t]))) + 1.0;

  TfidfMatrix out{DenseMatrix(vocab.size(), corpus.documents.size()), {}};
  std::vector<double> counts(vocab.size());
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (const auto& tok : tokenize(corpus.documents[d].text)) {
      auto it = vocab.term_index.find(tok);
      if (it != vocab.term_index.end()) counts[it->second] += 1.0;
    }
    double norm_sq = 0.0;
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      counts[t] *= idf[t];
      norm_sq += counts[t] * counts[t];
    }
    if (norm_sq == 0.0) {
      out.empty_documents.push_back(d);
      continue;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::size_t t = 0; t < vocab.size(); ++t)
      if (counts[t] != 0.0) out.matrix(t, d) = counts[t] * inv;
  }
  return out;
}

LabelMatrix class_label_matrix(const Corpus& corpus) {
  std::vector<std::size_t> ids;
  for (const auto& d : corpus.documents) ids.push_back(d.class_id);
  return one_hot(ids, corpus.num_classes());
}

DenseMatrix subgroup_matrix(const Corpus& corpus) {
  if (corpus.documents.empty()) throw IngestError("subgroup_matrix: empty corpus");
  DenseMatrix m(corpus.num_subgroups(), corpus.documents.size());
  for (std::size_t j = 0; j < corpus.documents.size(); ++j)
    m(corpus.documents[j].subgroup_id, j) = 1.0;
  return m;
}

CorpusSplit split(const Corpus& corpus, const SplitRatios& ratios,
                  std::optional<std::size_t> per_class_cap, std::uint64_t seed) {
  if (ratios.train < 0.0 || ratios.val < 0.0 || ratios.test < 0.0 ||
      std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must be nonnegative and sum to 1");
  }
  const std::size_t k = corpus.num_classes();
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < corpus.documents.size(); ++i)
    by_class[corpus.documents[i].class_id].push_back(i);

  std::size_t take = 0;
  if (per_class_cap) {
    take = *per_class_cap;
  } else {
    take = std::numeric_limits<std::size_t>::max();
    for (const auto& c : by_class) take = std::min(take, c.size());
  }
  if (take == 0) throw IngestError("split: no documents to take per class");

  std::string short_classes;
  for (std::size_t c = 0; c < k; ++c) {
    if (by_class[c].size() < take) {
      if (!short_classes.empty()) short_classes += ", ";
      const std::string name = c < corpus.class_names.size() ? corpus.class_names[c]
                                                             : std::to_string(c);
      short_classes += name + " (" + std::to_string(by_class[c].size()) + ")";
    }
  }
  if (!short_classes.empty()) {
    throw IngestError("split: classes with fewer than " + std::to_string(take) +
                      " documents: " + short_classes);
  }

  const auto n = static_cast<double>(take);
  const auto n_train = static_cast<std::size_t>(std::floor(ratios.train * n + 1e-9));
  const auto n_val = std::min(take - n_train,
                              static_cast<std::size_t>(std::floor(ratios.val * n + 1e-9)));

  CorpusSplit out;
  for (Corpus* part : {&out.train, &out.val, &out.test}) {
    part->class_names = corpus.class_names;
    part->subgroup_names = corpus.subgroup_names;
  }
  for (std::size_t c = 0; c < k; ++c) {
    auto idx = by_class[c];
    Engine engine = make_engine(seed, "split", c);
    for (std::size_t i = idx.size(); i > 1; --i) {
      const auto j = std::min(i - 1, static_cast<std::size_t>(uniform01(engine) * static_cast<double>(i)));
      std::swap(idx[i - 1], idx[j]);
    }
    for (std::size_t i = 0; i < take; ++i) {
      Corpus& part = i < n_train ? out.train : (i < n_train + n_val ? out.val : out.test);
      part.documents.push_back(corpus.documents[idx[i]]);
    }
  }
  return out;
}

Corpus load_corpus_dir(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw IoError("corpus directory '" + root.string() + "' not found");
  struct Entry {
    std::string group, subgroup;
    fs::path file;
  };
  std::vector<Entry> entries;
  NameTable names;
  for (const auto& g : fs::directory_iterator(root)) {
    if (!g.is_directory()) continue;
    for (const auto& s : fs::directory_iterator(g.path())) {
      if (!s.is_directory()) continue;
      for (const auto& f : fs::directory_iterator(s.path())) {
        if (!f.is_regular_file()) continue;
        const std::string group = g.path().filename().string();
        const std::string sub = group + "/" + s.path().filename().string();
        names.groups.insert(group);
        names.subgroups.insert(sub);
        entries.push_back({group, sub, f.path()});
      }
    }
  }
  if (entries.empty()) throw IngestError("no documents under '" + root.string() + "'");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.file < b.file; });

  Corpus corpus;
  corpus.class_names = names.group_list();
  corpus.subgroup_names = names.subgroup_list();
  for (const auto& e : entries) {
    corpus.documents.push_back({read_text_file(e.file), index_in(corpus.class_names, e.group),
                                index_in(corpus.subgroup_names, e.subgroup)});
  }
  return corpus;
}

Corpus load_corpus_jsonl(const std::filesystem::path& path) {
  struct Row {
    std::string text, group, subgroup;
  };
  std::vector<Row> rows;
  NameTable names;
  std::size_t line_no = 0;
  auto as_name = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  const std::string text = read_text_file(path);
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("text") || !j.contains("group") || !j["text"].is_string()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected an object with \"text\" and \"group\"");
    }
    Row r{j["text"].get<std::string>(), as_name(j["group"]), ""};
    r.subgroup = r.group + "/" + (j.contains("subgroup") ? as_name(j["subgroup"]) : r.group);
    names.groups.insert(r.group);
    names.subgroups.insert(r.subgroup);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw IngestError("no documents in '" + path.string() + "'");
  Corpus corpus;
  corpus.class_names = names.group_list();
  corpus.subgroup_names = names.subgroup_list();
  for (auto& r : rows) {
    corpus.documents.push_back({std::move(r.text), index_in(corpus.class_names, r.group),
                                index_in(corpus.subgroup_names, r.subgroup)});
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return load_corpus_dir(path);
  return load_corpus_jsonl(path);
}

} // namespace ssnmf
