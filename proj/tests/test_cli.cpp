#include <doctest.h>

#include <json.hpp>

#include "cli_util.hpp"
#include "ssnmf/csv.hpp"
#include "ssnmf/synth.hpp"

using namespace ssnmf;
namespace fs = std::filesystem;

namespace {

void write_separable(const fs::path& dir) {
  const SeparableData d = make_separable(3, 5, 10, 0.01, 2);
  write_csv_matrix(dir / "X.csv", d.x);
  write_csv_matrix(dir / "Y.csv", d.y.matrix());
}

} // namespace

TEST_CASE("fit") {
  const fs::path dir = cli::fresh_dir("ssnmf_cli_fit");
  cli::spit(dir / "X.csv", "1,2,3\n4,5,6\n7,8,9\n");
  cli::spit(dir / "Y.csv", "1,0,1\n0,1,0\n");

  const cli::Run missing = cli::run(dir, "fit --x nope.csv");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nope.csv") != std::string::npos);

  const cli::Run ok = cli::run(dir, "fit --x X.csv --y Y.csv --rank 2 --iters 20 -o out --no-timestamp");
  CHECK(ok.code == 0);
  for (const char* f : {"A.csv", "B.csv", "S.csv", "fit.json"}) CHECK(fs::exists(dir / "out" / f));
  const auto report = nlohmann::json::parse(cli::slurp(dir / "out" / "fit.json"));
  CHECK(report["iterations_run"] == 20);
  CHECK(report["objective_trace"].size() == 21);
  CHECK_FALSE(report.contains("timestamp"));

  CHECK(cli::run(dir, "fit --x X.csv --variant QQ").code == 2);
  CHECK(cli::run(dir, "fit --x X.csv --rank 0").code == 2);
  CHECK(cli::run(dir, "fit").code == 2);
  CHECK(cli::run(dir, "frobnicate").code == 2);
  CHECK(cli::run(dir, "fit --x X.csv --y Y.csv --w Y.csv").code == 2);
}

TEST_CASE("fit stops early on near-exact data") {
  const fs::path dir = cli::fresh_dir("ssnmf_cli_tol");
  const DenseMatrix a{{1.0, 0.2}, {0.3, 1.0}, {0.5, 0.5}, {0.9, 0.1}};
  const DenseMatrix s{{1.0, 0.5, 0.2, 0.7, 0.3}, {0.1, 0.6, 1.0, 0.2, 0.8}};
  write_csv_matrix(dir / "X.csv", matmul(a, s));
  write_csv_matrix(dir / "Y.csv", matmul(DenseMatrix{{1.0, 0.0}, {0.0, 1.0}}, s));
  const cli::Run r = cli::run(
      dir, "fit --x X.csv --y Y.csv --rank 2 --iters 5000 --tol 1e-3 -o out --no-timestamp");
  CHECK(r.code == 0);
  const auto report = nlohmann::json::parse(cli::slurp(dir / "out" / "fit.json"));
  CHECK(report["iterations_run"].get<int>() < 5000);
}

TEST_CASE("config files") {
  const fs::path dir = cli::fresh_dir("ssnmf_cli_config");
  cli::spit(dir / "X.csv", "1,2\n3,4\n");
  cli::spit(dir / "c.json", R"({"rank": 1, "iters": 4, "no-timestamp": true})");
  CHECK(cli::run(dir, "fit --config c.json --x X.csv -o a").code == 0);
  auto report = nlohmann::json::parse(cli::slurp(dir / "a" / "fit.json"));
  CHECK(report["iterations_run"] == 4);
  CHECK(report["config"]["rank"] == 1);
  CHECK_FALSE(report.contains("timestamp"));

  CHECK(cli::run(dir, "fit --config c.json --x X.csv --iters 6 -o b").code == 0);
  report = nlohmann::json::parse(cli::slurp(dir / "b" / "fit.json"));
  CHECK(report["iterations_run"] == 6);

  cli::spit(dir / "bad.json", R"({"rank": 1, "bogus": 3})");
  CHECK(cli::run(dir, "fit --config bad.json --x X.csv").code == 2);
  cli::spit(dir / "broken.json", "{");
  CHECK(cli::run(dir, "fit --config broken.json --x X.csv").code == 2);
}

TEST_CASE("classify") {
  const fs::path dir = cli::fresh_dir("ssnmf_cli_classify");
  write_separable(dir);
  const std::string data = "--train-x X.csv --train-labels Y.csv --test-x X.csv --test-labels Y.csv";
  const cli::Run r = cli::run(dir, "classify " + data + " --rank 3 --iters 200 -o out --no-timestamp");
  CHECK(r.code == 0);
  const auto report = nlohmann::json::parse(cli::slurp(dir / "out" / "report.json"));
  const double acc = report["accuracy"];
  CHECK(acc >= 0.95);
  CHECK(r.out.find("accuracy") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "predictions.csv"));
  CHECK(report["config"]["rank"] == 3);

  const cli::Run defaults = cli::run(dir, "classify " + data + " -o d --no-timestamp");
  CHECK(defaults.code == 0);
  const auto d = nlohmann::json::parse(cli::slurp(dir / "d" / "report.json"));
  CHECK(d["config"]["rank"] == 13);
  CHECK(d["config"]["max_iters"] == 50);
  CHECK(d["accuracy"].get<double>() >= 0.0);
  CHECK(d["accuracy"].get<double>() <= 1.0);

  const cli::Run grid = cli::run(
      dir, "classify " + data + " --grid --rank 3 --iters 30 -o g --model-out m --no-timestamp");
  CHECK(grid.code == 0);
  const auto g = nlohmann::json::parse(cli::slurp(dir / "g" / "report.json"));
  REQUIRE(g["grid"].size() == 9);
  CHECK(g["grid"][0]["tol"] == 1e-4);
  CHECK(g["grid"][0]["lambda"] == 10.0);
  CHECK(g["grid"][8]["tol"] == 1e-2);
  CHECK(g["grid"][8]["lambda"] == 1000.0);
  CHECK(fs::exists(dir / "m" / "model.json"));

  CHECK(cli::run(dir, "classify --train-x X.csv").code == 2);
}

TEST_CASE("synth-bench") {
  const fs::path dir = cli::fresh_dir("ssnmf_cli_synth");
  CHECK(cli::run(dir, "synth-bench -e 7").code == 2);
  CHECK(cli::run(dir, "synth-bench -e two").code == 2);
  const std::string args = "synth-bench -e all --n 8 --rank 2 --iters 30 --trials 2 --seed 4 --no-timestamp";
  const cli::Run a = cli::run(dir, args + " -o a");
  const cli::Run b = cli::run(dir, args + " -o b");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(cli::slurp(dir / "a" / "grid.json") == cli::slurp(dir / "b" / "grid.json"));
  CHECK(cli::slurp(dir / "a" / "grid.csv") == cli::slurp(dir / "b" / "grid.csv"));
  CHECK(a.out.find("(Div, Div)") != std::string::npos);
}

TEST_CASE("prep, topics, cluster-score") {
  const fs::path dir = cli::fresh_dir("ssnmf_cli_text");
  cli::spit(dir / "docs.jsonl",
            "{\"text\": \"the shuttle orbit launch\", \"group\": \"sci\", \"subgroup\": \"space\"}\n"
            "{\"text\": \"engine car wheel\", \"group\": \"rec\", \"subgroup\": \"autos\"}\n"
            "{\"text\": \"orbit moon launch\", \"group\": \"sci\", \"subgroup\": \"space\"}\n");
  CHECK(cli::run(dir, "prep --corpus docs.jsonl --no-split -o p1 --no-timestamp").code == 0);
  CHECK(cli::run(dir, "prep --corpus docs.jsonl --no-split -o p2 --no-timestamp").code == 0);
  CHECK(cli::slurp(dir / "p1" / "X.csv") == cli::slurp(dir / "p2" / "X.csv"));
  CHECK(cli::slurp(dir / "p1" / "manifest.json") == cli::slurp(dir / "p2" / "manifest.json"));
  const DenseMatrix x = read_csv_matrix(dir / "p1" / "X.csv");
  CHECK(x.cols() == 3);
  CHECK(cli::slurp(dir / "p1" / "vocab.txt").find("the\n") == std::string::npos);
  CHECK(cli::run(dir, "prep --corpus missing.jsonl").code == 2);

  CHECK(cli::run(dir, "prep --corpus docs.jsonl -o nosplit").code == 2);
  // Two documents per class: one to train, none to validation, one to test.
  cli::spit(dir / "four.jsonl",
            "{\"text\": \"shuttle orbit\", \"group\": \"sci\", \"subgroup\": \"space\"}\n"
            "{\"text\": \"engine car\", \"group\": \"rec\", \"subgroup\": \"autos\"}\n"
            "{\"text\": \"orbit moon\", \"group\": \"sci\", \"subgroup\": \"space\"}\n"
            "{\"text\": \"car wheel\", \"group\": \"rec\", \"subgroup\": \"autos\"}\n");
  CHECK(cli::run(dir, "prep --corpus four.jsonl -o split --no-timestamp").code == 0);
  CHECK(fs::exists(dir / "split" / "X_train.csv"));
  CHECK_FALSE(fs::exists(dir / "split" / "X_val.csv"));
  CHECK(fs::exists(dir / "split" / "X_test.csv"));
  CHECK(nlohmann::json::parse(cli::slurp(dir / "split" / "manifest.json"))["documents_val"] == 0);

  std::string vocab;
  for (int i = 0; i < 30; ++i) vocab += "w" + std::to_string(100 + i) + "\n";
  cli::spit(dir / "vocab.txt", vocab);
  DenseMatrix a(30, 13);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 13; ++j) a(i, j) = static_cast<double>((i * 7 + j * 3) % 11);
  write_csv_matrix(dir / "A.csv", a);
  const cli::Run t = cli::run(dir, "topics --a A.csv --vocab vocab.txt --count 10 -o t.json --no-timestamp");
  CHECK(t.code == 0);
  const auto topics = nlohmann::json::parse(cli::slurp(dir / "t.json"));
  REQUIRE(topics["topics"].size() == 13);
  for (const auto& topic : topics["topics"]) CHECK(topic["keywords"].size() == 10);

  cli::spit(dir / "M.csv", "1,0,0,1\n0,1,0,0\n0,0,1,0\n");
  const cli::Run s = cli::run(dir, "cluster-score --s M.csv --m M.csv -o s.json --no-timestamp");
  CHECK(s.code == 0);
  CHECK(s.out.find("hard 1\n") != std::string::npos);
  CHECK(nlohmann::json::parse(cli::slurp(dir / "s.json"))["hard_mean_score"] == 1.0);

  cli::spit(dir / "M0.csv", "1,1,1,1\n0,0,0,0\n");
  CHECK(cli::run(dir, "cluster-score --s M.csv --m M0.csv").code == 1);
  CHECK(cli::run(dir, "cluster-score --s M.csv --m A.csv").code == 2);
}
