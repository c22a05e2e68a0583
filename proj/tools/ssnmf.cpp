// ssnmf command-line driver: fit, classify, synth-bench, prep, topics,
// cluster-score.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssnmf/classify.hpp"
#include "ssnmf/csv.hpp"
#include "ssnmf/errors.hpp"
#include "ssnmf/evalcluster.hpp"
#include "ssnmf/report.hpp"
#include "ssnmf/synth.hpp"
#include "ssnmf/textprep.hpp"

namespace fs = std::filesystem;
using namespace ssnmf;

namespace {

struct Common {
  bool no_timestamp = false;
  std::string config_path;
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void stamp(Json& j, const Common& common) {
  if (!common.no_timestamp) j["timestamp"] = utc_timestamp();
}

void write_json(const fs::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

ModelVariant parse_variant(const std::string& text) {
  auto v = ModelVariant::parse(text);
  if (!v) throw ConfigError("unknown variant '" + text + "' (expected FF, FD, DF, DD or 1-4)");
  return *v;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string x, y, w, l, out = "fit_out";
  std::string variant = "FF";
  SsnmfConfig config;
};

int cmd_fit(const FitArgs& args, const Common& common) {
  const DenseMatrix x = read_csv_matrix(args.x);
  const DenseMatrix y = args.y.empty() ? DenseMatrix(1, x.cols(), 0.0) : read_csv_matrix(args.y);
  const DenseMatrix w = args.w.empty() ? DenseMatrix(x.rows(), x.cols(), 1.0) : read_csv_matrix(args.w);
  const DenseMatrix l = args.l.empty() ? DenseMatrix(y.rows(), y.cols(), 1.0) : read_csv_matrix(args.l);
  SsnmfConfig config = args.config;
  if (args.y.empty()) config.lambda = 0.0;
  const ModelVariant variant = parse_variant(args.variant);

  const SsnmfData data{x, y, w, l};
  const FitResult result = fit(variant, data, config);

  const fs::path out(args.out);
  make_dir(out);
  write_csv_matrix(out / "A.csv", result.state.a);
  write_csv_matrix(out / "B.csv", result.state.b);
  write_csv_matrix(out / "S.csv", result.state.s);
  Json report = fit_result_to_json(variant, config, result);
  stamp(report, common);
  write_json(out / "fit.json", report);

  std::cout << variant.name() << " iterations " << result.iterations_run << " relative error "
            << format_double(result.relative_error) << "\n";
  return 0;
}

// ----------------------------------------------------------- classify

struct ClassifyArgs {
  std::string corpus;
  std::size_t cap = 0;
  std::size_t max_features = 0;
  std::size_t min_df = 1;
  bool keep_boilerplate = false;
  std::string train_x, train_labels, val_x, val_labels, test_x, test_labels;
  std::string variant = "DF";
  std::string out = "classify_out";
  std::string model_out;
  bool grid = false;
  SsnmfConfig config;
};

struct Dataset {
  DenseMatrix x;
  LabelMatrix y;
};

struct Splits {
  Dataset train;
  std::optional<Dataset> val;
  Dataset test;
  std::vector<std::string> terms;
};

Dataset corpus_dataset(const Corpus& c, const Vocabulary& vocab) {
  return {tfidf(c, vocab).matrix, class_label_matrix(c)};
}

Splits load_splits(const ClassifyArgs& args) {
  Splits s;
  if (!args.corpus.empty()) {
    Corpus corpus = load_corpus(args.corpus);
    if (!args.keep_boilerplate) strip_boilerplate(corpus);
    const CorpusSplit parts = split(corpus, SplitRatios{},
                                    args.cap ? std::optional<std::size_t>(args.cap) : std::nullopt,
                                    args.config.seed);
    VocabularyOptions opts;
    opts.min_df = args.min_df;
    if (args.max_features) opts.max_size = args.max_features;
    const Vocabulary vocab = build_vocabulary(parts.train, default_stopwords(), opts);
    s.train = corpus_dataset(parts.train, vocab);
    if (!parts.val.documents.empty()) s.val = corpus_dataset(parts.val, vocab);
    s.test = corpus_dataset(parts.test, vocab);
    s.terms = vocab.terms;
    return s;
  }
  if (args.train_x.empty() || args.train_labels.empty() || args.test_x.empty() ||
      args.test_labels.empty())
    throw ConfigError("classify needs --corpus or all of --train-x, --train-labels, --test-x, "
                      "--test-labels");
  s.train = {read_csv_matrix(args.train_x), LabelMatrix(read_csv_matrix(args.train_labels))};
  s.test = {read_csv_matrix(args.test_x), LabelMatrix(read_csv_matrix(args.test_labels))};
  if (!args.val_x.empty() || !args.val_labels.empty()) {
    if (args.val_x.empty() || args.val_labels.empty())
      throw ConfigError("--val-x and --val-labels must be given together");
    s.val = Dataset{read_csv_matrix(args.val_x), LabelMatrix(read_csv_matrix(args.val_labels))};
  }
  return s;
}

struct Evaluation {
  TrainResult trained;
  LabelMatrix predicted;
  double accuracy = 0.0;
};

Evaluation train_and_score(const Dataset& train_set, const Dataset& eval_set,
                           ModelVariant variant, const SsnmfConfig& config) {
  const DenseMatrix w_train(train_set.x.rows(), train_set.x.cols(), 1.0);
  TrainResult trained = train(train_set.x, w_train, train_set.y, variant, config);
  const DenseMatrix w_eval(eval_set.x.rows(), eval_set.x.cols(), 1.0);
  const DenseMatrix s = transform(trained.model, eval_set.x, w_eval, config.max_iters);
  LabelMatrix predicted = predict(trained.model, s);
  const double acc = accuracy(eval_set.y, predicted);
  return {std::move(trained), std::move(predicted), acc};
}

int cmd_classify(const ClassifyArgs& args, const Common& common) {
  const ModelVariant variant = parse_variant(args.variant);
  const Splits data = load_splits(args);
  SsnmfConfig config = args.config;
  Json report;
  report["variant"] = variant.code();

  if (args.grid) {
    // Model selection on the validation split when there is one.
    const Dataset& select_on = data.val ? *data.val : data.train;
    Json grid = Json::array();
    double best = -1.0;
    SsnmfConfig best_config = config;
    for (double tol : {1e-4, 1e-3, 1e-2}) {
      for (double lambda : {10.0, 100.0, 1000.0}) {
        SsnmfConfig c = config;
        c.tol = tol;
        c.lambda = lambda;
        const double acc = train_and_score(data.train, select_on, variant, c).accuracy;
        grid.push_back({{"tol", tol}, {"lambda", lambda}, {"accuracy", acc}});
        if (acc > best) {
          best = acc;
          best_config = c;
        }
      }
    }
    report["grid"] = std::move(grid);
    report["selected_on"] = data.val ? "validation" : "train";
    config = best_config;
  }

  const Evaluation ev = train_and_score(data.train, data.test, variant, config);
  const fs::path out(args.out);
  make_dir(out);
  const auto idx = ev.predicted.indices();
  DenseMatrix pred_row(1, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) pred_row(0, j) = static_cast<double>(idx[j]);
  write_csv_matrix(out / "predictions.csv", pred_row);
  if (!args.model_out.empty()) {
    std::string vocab_ref;
    if (!data.terms.empty()) {
      make_dir(args.model_out);
      write_text_file(fs::path(args.model_out) / "vocab.txt", join_lines(data.terms));
      vocab_ref = "vocab.txt";
    }
    save_model(ev.trained.model, args.model_out, vocab_ref);
  }

  report["config"] = config_to_json(config);
  report["train_samples"] = data.train.x.cols();
  report["test_samples"] = data.test.x.cols();
  report["train_relative_error"] = ev.trained.fit.relative_error;
  report["train_iterations"] = ev.trained.fit.iterations_run;
  report["accuracy"] = ev.accuracy;
  stamp(report, common);
  write_json(out / "report.json", report);
  std::cout << "accuracy " << format_double(ev.accuracy) << "\n";
  return 0;
}

// -------------------------------------------------------- synth-bench

struct SynthArgs {
  std::string experiment = "all";
  std::string scale = "desk";
  std::size_t iters = 0;
  std::size_t trials = 0;
  std::size_t n = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out = "synth_out";
};

int cmd_synth_bench(const SynthArgs& args, const Common& common) {
  std::vector<int> ids;
  if (args.experiment == "all") {
    ids = {1, 2, 3, 4};
  } else {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(args.experiment, &used);
      if (used != args.experiment.size()) id = 0;
    } catch (const std::exception&) {
      id = 0;
    }
    if (id < 1 || id > 4)
      throw ConfigError("experiment must be 1, 2, 3, 4 or all, got '" + args.experiment + "'");
    ids = {id};
  }
  if (args.scale != "desk" && args.scale != "full")
    throw ConfigError("scale must be desk or full");

  const unsigned threads = args.threads ? args.threads : threads_from_env();
  ErrorGrid grid;
  for (int id : ids) {
    ExperimentSpec spec =
        args.scale == "full" ? ExperimentSpec::full_scale(id) : ExperimentSpec::desk_scale(id);
    if (args.n || args.rank) {
      SynthDims dims = spec.dims;
      if (args.n) dims.n1 = dims.n2 = dims.k = args.n;
      if (args.rank) dims.r = args.rank;
      const ExperimentSpec sized = ExperimentSpec::make(id, dims);
      spec.dims = sized.dims;
      spec.x_noise = sized.x_noise;
      spec.y_noise = sized.y_noise;
    }
    if (args.iters) spec.iters = args.iters;
    if (args.trials) spec.trials = args.trials;
    spec.seed = args.seed;
    spec.validate();
    grid.experiments.push_back(run_mle_experiment(spec, threads));
  }

  const fs::path out(args.out);
  make_dir(out);
  write_text_file(out / "grid.csv", grid.to_csv());
  Json report;
  report["scale"] = args.scale;
  report["seed"] = args.seed;
  report["experiments"] = grid.to_json();
  stamp(report, common);
  write_json(out / "grid.json", report);
  std::cout << grid.to_table();
  return 0;
}

// --------------------------------------------------------------- prep

struct PrepArgs {
  std::string corpus;
  std::string out = "prep_out";
  std::size_t min_df = 1;
  double max_df = 1.0;
  std::size_t max_features = 0;
  std::size_t cap = 0;
  double train = 0.6, val = 0.2, test = 0.2;
  bool no_split = false;
  bool keep_boilerplate = false;
  std::string stopwords;
  std::uint64_t seed = 0;
};

void write_part(const fs::path& out, const std::string& tag, const Corpus& c,
                const Vocabulary& vocab, Json& manifest) {
  // Small classes can leave a split without documents; no files are written for it.
  manifest["documents" + tag] = c.documents.size();
  if (c.documents.empty()) return;
  const TfidfMatrix t = tfidf(c, vocab);
  write_csv_matrix(out / ("X" + tag + ".csv"), t.matrix);
  write_csv_matrix(out / ("Y" + tag + ".csv"), class_label_matrix(c).matrix());
  write_csv_matrix(out / ("M" + tag + ".csv"), subgroup_matrix(c));
  manifest["empty_documents" + tag] = t.empty_documents;
}

int cmd_prep(const PrepArgs& args, const Common& common) {
  Corpus corpus = load_corpus(args.corpus);
  if (!args.keep_boilerplate) strip_boilerplate(corpus);
  const StopWords stop = args.stopwords.empty() ? default_stopwords() : load_stopwords(args.stopwords);
  VocabularyOptions opts;
  opts.min_df = args.min_df;
  opts.max_df_ratio = args.max_df;
  if (args.max_features) opts.max_size = args.max_features;

  const fs::path out(args.out);
  make_dir(out);
  Json manifest;
  manifest["corpus"] = fs::path(args.corpus).filename().string();
  manifest["classes"] = corpus.class_names;
  manifest["subgroups"] = corpus.subgroup_names;
  Vocabulary vocab;
  if (args.no_split) {
    vocab = build_vocabulary(corpus, stop, opts);
    write_part(out, "", corpus, vocab, manifest);
  } else {
    const CorpusSplit parts =
        split(corpus, SplitRatios{args.train, args.val, args.test},
              args.cap ? std::optional<std::size_t>(args.cap) : std::nullopt, args.seed);
    if (parts.train.documents.empty()) throw IngestError("prep: training split is empty");
    vocab = build_vocabulary(parts.train, stop, opts);
    write_part(out, "_train", parts.train, vocab, manifest);
    write_part(out, "_val", parts.val, vocab, manifest);
    write_part(out, "_test", parts.test, vocab, manifest);
  }
  write_text_file(out / "vocab.txt", vocab.to_text());
  write_text_file(out / "subgroups.txt", join_lines(corpus.subgroup_names));
  manifest["vocabulary_size"] = vocab.size();
  manifest["seed"] = args.seed;
  stamp(manifest, common);
  write_json(out / "manifest.json", manifest);
  std::cout << "documents " << corpus.documents.size() << " vocabulary " << vocab.size() << "\n";
  return 0;
}

// ------------------------------------------------------------- topics

struct TopicsArgs {
  std::string a, vocab, s, m, subgroups, out;
  std::size_t count = 10;
};

int cmd_topics(const TopicsArgs& args, const Common& common) {
  const DenseMatrix a = read_csv_matrix(args.a);
  const std::vector<std::string> terms = read_lines(args.vocab);
  if (args.s.empty() != args.m.empty()) throw ConfigError("--s and --m must be given together");
  DenseMatrix s, m;
  std::vector<std::string> names;
  if (!args.s.empty()) {
    s = read_csv_matrix(args.s);
    m = read_csv_matrix(args.m);
    if (!args.subgroups.empty()) names = read_lines(args.subgroups);
  }
  const TopicReport report = build_topic_report(a, terms, args.count, s, m, names);
  if (!args.out.empty()) {
    Json j = report.to_json();
    stamp(j, common);
    write_json(args.out, j);
  }
  std::cout << report.to_table();
  return 0;
}

// ------------------------------------------------------ cluster-score

struct ScoreArgs {
  std::string s, m, out;
};

int cmd_cluster_score(const ScoreArgs& args, const Common& common) {
  const DenseMatrix s = read_csv_matrix(args.s);
  const DenseMatrix m = read_csv_matrix(args.m);
  if (s.cols() != m.cols())
    throw DimensionError("S has " + std::to_string(s.cols()) + " documents, M has " +
                         std::to_string(m.cols()));
  const double hard = mean_score(s, m, AssignMode::hard);
  const double soft = mean_score(s, m, AssignMode::soft);
  if (!args.out.empty()) {
    Json j;
    j["topics"] = s.rows();
    j["subgroups"] = m.rows();
    j["hard_mean_score"] = hard;
    j["soft_mean_score"] = soft;
    stamp(j, common);
    write_json(args.out, j);
  }
  std::cout << "hard " << format_double(hard) << "\nsoft " << format_double(soft) << "\n";
  return 0;
}

// ------------------------------------------------------------- config

std::string json_scalar(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_double(v.get<double>());
  throw ConfigError("config key '" + key + "' must be a string, number or boolean");
}

// Config keys become leading "--key=value" arguments, so anything given on
// the command line comes later and wins (options take the last value).
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + path + "' must be a JSON object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") throw ConfigError("config files cannot nest --config");
    injected.push_back("--" + key + "=" + json_scalar(value, key));
  }
  args.insert(args.begin() + 2, injected.begin(), injected.end());
  return args;
}

void add_solver_options(CLI::App* cmd, SsnmfConfig& c) {
  cmd->add_option("--rank,-r", c.rank, "Rank r")->capture_default_str();
  cmd->add_option("--lambda", c.lambda, "Supervision weight")->capture_default_str();
  cmd->add_option("--iters,-N", c.max_iters, "Maximum iterations")->capture_default_str();
  cmd->add_option("--tol", c.tol, "Relative-error stopping tolerance, 0 disables")
      ->capture_default_str();
  cmd->add_option("--eps", c.eps, "Divisor guard")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Top-level seed")->capture_default_str();
}

int run(int argc, char** argv) {
  std::vector<std::string> raw(argv, argv + argc);
  raw = expand_config(raw);

  CLI::App app{"Semi-supervised NMF experiments"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--config", common.config_path, "JSON file of option values");
    cmd->add_flag("--no-timestamp", common.no_timestamp, "Omit timestamps from reports");
  };

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit one SSNMF variant to CSV data");
  add_common(fit_cmd);
  fit_cmd->add_option("--x", fit_args.x, "Data matrix X (n1 x n2)")->required();
  fit_cmd->add_option("--y", fit_args.y, "Label matrix Y (k x n2); omitted means lambda = 0");
  fit_cmd->add_option("--w", fit_args.w, "Data mask W (default all ones)");
  fit_cmd->add_option("--l", fit_args.l, "Label mask L (default all ones)");
  fit_cmd->add_option("--variant", fit_args.variant, "FF, FD, DF or DD")->capture_default_str();
  fit_cmd->add_option("--out,-o", fit_args.out, "Output directory")->capture_default_str();
  add_solver_options(fit_cmd, fit_args.config);

  ClassifyArgs cls;
  cls.config.rank = 13;
  cls.config.max_iters = 50;
  auto* cls_cmd = app.add_subcommand("classify", "Train on one split, predict another");
  add_common(cls_cmd);
  cls_cmd->add_option("--corpus", cls.corpus, "Corpus directory or JSONL file");
  cls_cmd->add_option("--cap", cls.cap, "Documents per class for --corpus (0: smallest class)");
  cls_cmd->add_option("--max-features", cls.max_features, "Vocabulary size limit for --corpus");
  cls_cmd->add_option("--min-df", cls.min_df, "Minimum document frequency for --corpus");
  cls_cmd->add_flag("--keep-boilerplate", cls.keep_boilerplate,
                    "Skip header, quote and signature stripping for --corpus");
  cls_cmd->add_option("--train-x", cls.train_x, "Training data CSV");
  cls_cmd->add_option("--train-labels", cls.train_labels, "Training one-hot labels CSV");
  cls_cmd->add_option("--val-x", cls.val_x, "Validation data CSV (used by --grid)");
  cls_cmd->add_option("--val-labels", cls.val_labels, "Validation labels CSV");
  cls_cmd->add_option("--test-x", cls.test_x, "Test data CSV");
  cls_cmd->add_option("--test-labels", cls.test_labels, "Test labels CSV");
  cls_cmd->add_option("--variant", cls.variant, "FF, FD, DF or DD")->capture_default_str();
  cls_cmd->add_flag("--grid", cls.grid, "Search tol in {1e-4,1e-3,1e-2} x lambda in {10,100,1000}");
  cls_cmd->add_option("--out,-o", cls.out, "Output directory")->capture_default_str();
  cls_cmd->add_option("--model-out", cls.model_out, "Directory for the trained model");
  add_solver_options(cls_cmd, cls.config);

  SynthArgs syn;
  auto* syn_cmd = app.add_subcommand("synth-bench", "Matched vs mismatched noise experiments");
  add_common(syn_cmd);
  syn_cmd->add_option("--experiment,-e", syn.experiment, "1, 2, 3, 4 or all")->capture_default_str();
  syn_cmd->add_option("--scale", syn.scale, "desk (100, N=20000) or full (500, N=100000)")
      ->capture_default_str();
  syn_cmd->add_option("--iters,-N", syn.iters, "Override iteration count");
  syn_cmd->add_option("--trials", syn.trials, "Override trial count");
  syn_cmd->add_option("--n", syn.n, "Override n1 = n2 = k");
  syn_cmd->add_option("--rank,-r", syn.rank, "Override rank");
  syn_cmd->add_option("--seed", syn.seed, "Top-level seed")->capture_default_str();
  syn_cmd->add_option("--threads", syn.threads, "Worker threads (default SSNMF_THREADS or 1)");
  syn_cmd->add_option("--out,-o", syn.out, "Output directory")->capture_default_str();

  PrepArgs prep;
  auto* prep_cmd = app.add_subcommand("prep", "Corpus to TF-IDF matrices");
  add_common(prep_cmd);
  prep_cmd->add_option("--corpus", prep.corpus, "Corpus directory or JSONL file")->required();
  prep_cmd->add_option("--out,-o", prep.out, "Output directory")->capture_default_str();
  prep_cmd->add_option("--min-df", prep.min_df)->capture_default_str();
  prep_cmd->add_option("--max-df", prep.max_df, "Maximum document-frequency ratio")
      ->capture_default_str();
  prep_cmd->add_option("--max-features", prep.max_features, "Vocabulary size limit");
  prep_cmd->add_option("--cap", prep.cap, "Documents per class (0: smallest class)");
  prep_cmd->add_option("--train", prep.train)->capture_default_str();
  prep_cmd->add_option("--val", prep.val)->capture_default_str();
  prep_cmd->add_option("--test", prep.test)->capture_default_str();
  prep_cmd->add_flag("--no-split", prep.no_split, "Emit one matrix for the whole corpus");
  prep_cmd->add_flag("--keep-boilerplate", prep.keep_boilerplate,
                     "Skip header, quote and signature stripping");
  prep_cmd->add_option("--stopwords", prep.stopwords, "Stopword list (default bundled English)");
  prep_cmd->add_option("--seed", prep.seed)->capture_default_str();

  TopicsArgs top;
  auto* top_cmd = app.add_subcommand("topics", "Top keywords per topic, optionally scored");
  add_common(top_cmd);
  top_cmd->add_option("--a", top.a, "Dictionary A CSV (|vocab| x r)")->required();
  top_cmd->add_option("--vocab", top.vocab, "Vocabulary, one term per line")->required();
  top_cmd->add_option("--count", top.count, "Keywords per topic")->capture_default_str();
  top_cmd->add_option("--s", top.s, "Representation S CSV for scoring");
  top_cmd->add_option("--m", top.m, "Subgroup membership M CSV for scoring");
  top_cmd->add_option("--subgroups", top.subgroups, "Subgroup names, one per line");
  top_cmd->add_option("--out,-o", top.out, "JSON report path");

  ScoreArgs sc;
  auto* sc_cmd = app.add_subcommand("cluster-score", "Mean hard and soft score P");
  add_common(sc_cmd);
  sc_cmd->add_option("--s", sc.s, "Representation S CSV (r x n)")->required();
  sc_cmd->add_option("--m", sc.m, "Subgroup membership M CSV (subgroups x n)")->required();
  sc_cmd->add_option("--out,-o", sc.out, "JSON report path");

  std::vector<std::string> reversed(raw.rbegin(), raw.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (*fit_cmd) return cmd_fit(fit_args, common);
  if (*cls_cmd) return cmd_classify(cls, common);
  if (*syn_cmd) return cmd_synth_bench(syn, common);
  if (*prep_cmd) return cmd_prep(prep, common);
  if (*top_cmd) return cmd_topics(top, common);
  return cmd_cluster_score(sc, common);
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return 1;
  } catch (const EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const IngestError& e) {
    std::cerr << "ingest error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
