#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "toolprint/csv.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out, err;
};

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / "toolprint_cli_test") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { toolprint::csv::write_file(path(name), text); }
  std::string read(const std::string& name) const { return toolprint::csv::read_file(path(name)); }

  Result run(const std::string& args) const {
    const std::string cmd = std::string("\"") + TOOLPRINT_CLI + "\" " + args + " >\"" + path("stdout") + "\" 2>\"" +
                            path("stderr") + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read("stdout");
    r.err = read("stderr");
    return r;
  }

 private:
  fs::path dir_;
};

const char* kTools = R"([
  {"name": "lex", "kind": "lexicon_compound", "output_class": "continuous"},
  {"name": "pat", "kind": "pattern_average", "output_class": "discrete5", "params": {"valence_jitter": 0.2}},
  {"name": "bin", "kind": "lexicon_compound", "output_class": "binary", "params": {"use_boosters": false}},
  {"name": "sim", "kind": "synthetic", "output_class": "continuous",
   "params": {"distribution": {"type": "clipped_gaussian", "mean": 0.2, "std": 0.3}}}
])";

json small_config() {
  return {{"name", "cli"},
          {"seed", 5},
          {"corpora", {{{"name", "synth"}, {"groups", {"C1"}}, {"synthetic", {{"n_docs", 300}}}}}},
          {"tools", json::parse(kTools)},
          {"tool_groups", {"all"}},
          {"normalizations", {"raw", "N3"}},
          {"chunk_sizes", {20}},
          {"classifiers", {{{"type", "knn"}}, {{"type", "tree"}, {"max_depth", 3}}}},
          {"monte_carlo", {{"m", {10}}, {"feature_subset_sizes", {15}}}}};
}

}  // namespace

TEST_CASE("cli score, features, train and eval pipeline") {
  Workspace ws;
  ws.write("tools.json", kTools);

  auto r = ws.run("score --synthetic 600 --tools " + ws.path("tools.json") + " --seed 3 --out " + ws.path("scores.csv"));
  REQUIRE(r.code == 0);
  CHECK(fs::exists(ws.path("scores.csv")));
  const auto table = toolprint::csv::parse(ws.read("scores.csv"));
  CHECK(table.size() == 601);
  CHECK(table[1].size() == 5);

  const auto again = ws.run("score --synthetic 600 --tools " + ws.path("tools.json") + " --seed 3");
  REQUIRE(again.code == 0);
  CHECK(again.out == ws.read("scores.csv"));

  r = ws.run("normalize --scores " + ws.path("scores.csv") + " --scheme N1");
  REQUIRE(r.code == 0);
  const auto n1 = toolprint::csv::parse(r.out);
  for (std::size_t row = 1; row < n1.size(); ++row)
    for (std::size_t c = 1; c < n1[row].size(); ++c) {
      const double v = std::stod(n1[row][c]);
      CHECK((v == -1.0 || v == 0.0 || v == 1.0));
    }

  r = ws.run("features --scores " + ws.path("scores.csv") + " --chunk-size 20 --seed 4 --out " + ws.path("data.csv"));
  REQUIRE(r.code == 0);
  CHECK(toolprint::csv::parse(ws.read("data.csv")).size() == 1 + 4 * 60);

  r = ws.run("train --data " + ws.path("data.csv") + " --classifier knn --seed 9 --out " + ws.path("model.json"));
  REQUIRE(r.code == 0);
  const auto report = json::parse(r.out);
  CHECK(report["type"] == "knn");
  CHECK(report["n_train"].get<int>() + report["n_dev"].get<int>() + report["n_test"].get<int>() == 240);

  r = ws.run("eval --model " + ws.path("model.json") + " --data " + ws.path("data.csv") + " --split test --seed 9");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["macro_f1"] == report["test"]["macro_f1"]);

  r = ws.run("train --data " + ws.path("data.csv") +
             " --classifier mlp --hidden 10 --epochs 10 --optimizer sgd --lr 0.05 --seed 9 --out " + ws.path("mlp.json"));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["leaderboard"].size() == 1);

  r = ws.run("features --scores " + ws.path("scores.csv") + " --mc-m 20 --mc-features 4 --tools lex,sim --out " +
             ws.path("mc.csv"));
  REQUIRE(r.code == 0);
  const auto mc = toolprint::csv::parse(ws.read("mc.csv"));
  CHECK(mc.size() == 41);
  CHECK(mc[0].size() == 5);
}

TEST_CASE("cli analysis subcommands") {
  Workspace ws;
  ws.write("tools.json", kTools);
  REQUIRE(ws.run("score --synthetic 200 --tools " + ws.path("tools.json") + " --out " + ws.path("s.csv")).code == 0);

  auto r = ws.run("dcor --scores " + ws.path("s.csv") + " --svg " + ws.path("dcor.svg"));
  REQUIRE(r.code == 0);
  CHECK(toolprint::csv::parse(r.out).size() == 5);
  CHECK_THAT(ws.read("dcor.svg"), ContainsSubstring("<svg"));

  r = ws.run("vote --scores " + ws.path("s.csv") + " --norm N1 --json --exclude-ties");
  REQUIRE(r.code == 0);
  const auto vote = json::parse(r.out);
  CHECK(vote["rates"].size() == 4);
  CHECK(vote["exclude_ties"] == true);

  r = ws.run("describe --scores " + ws.path("s.csv") + " --json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).size() == 4);
}

TEST_CASE("cli run, mc and report") {
  Workspace ws;
  ws.write("config.json", small_config().dump());
  auto r = ws.run("run --config " + ws.path("config.json") + " --workers 2 --out " + ws.path("out"));
  REQUIRE(r.code == 0);
  CHECK_THAT(r.err, ContainsSubstring("4 cells, 0 failed"));
  CHECK(fs::exists(ws.path("out/summary.json")));
  CHECK(fs::exists(ws.path("out/cells.csv")));
  CHECK(fs::exists(ws.path("out/tree_C1_all_raw_cs20_tree.dot")));

  r = ws.run("run --config " + ws.path("config.json") + " --workers 1 --formats json --out " + ws.path("serial"));
  REQUIRE(r.code == 0);
  auto a = json::parse(ws.read("out/summary.json")), b = json::parse(ws.read("serial/summary.json"));
  a.erase("timing");
  b.erase("timing");
  CHECK(a == b);

  r = ws.run("run --config " + ws.path("config.json") + " --seed 6 --formats json --out " + ws.path("reseeded"));
  REQUIRE(r.code == 0);
  CHECK(json::parse(ws.read("reseeded/summary.json"))["seed"] == 6);

  r = ws.run("mc --config " + ws.path("config.json") + " --formats json,csv --out " + ws.path("mc"));
  REQUIRE(r.code == 0);
  CHECK(json::parse(ws.read("mc/summary.json"))["mode"] == "monte_carlo");

  r = ws.run("report --bundle " + ws.path("out/summary.json") + " --formats csv --out " + ws.path("again"));
  REQUIRE(r.code == 0);
  CHECK(ws.read("again/cells.csv") == ws.read("out/cells.csv"));
}

TEST_CASE("cli exit codes") {
  Workspace ws;
  auto config = small_config();
  config["chunk_sizes"] = {20, 400};  // 400: too few chunks
  ws.write("partial.json", config.dump());
  auto r = ws.run("run --config " + ws.path("partial.json") + " --formats json --out " + ws.path("partial"));
  CHECK(r.code == 1);
  CHECK_THAT(r.err, ContainsSubstring("C1/all/raw/cs400/knn"));
  CHECK(json::parse(ws.read("partial/summary.json"))["n_failed"] == 4);

  config = small_config();
  config["tool_groups"] = {"nonsense"};
  ws.write("invalid.json", config.dump());
  r = ws.run("run --config " + ws.path("invalid.json"));
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("unknown tool group"));

  CHECK(ws.run("run --config " + ws.path("missing.json")).code == 2);
  CHECK(ws.run("run --config " + ws.path("partial.json") + " --formats pdf").code == 2);
  CHECK(ws.run("frobnicate").code == 2);
  CHECK(ws.run("score --synthetic 10").code == 2);
  CHECK(ws.run("--help").code == 0);
  CHECK(ws.run("eval --model " + ws.path("missing.json") + " --data " + ws.path("missing.csv")).code == 1);
}
