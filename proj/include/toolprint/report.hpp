#pragma once

// Serialization of experiment results: summary.json, cells.csv and the
// per-group CSV / SVG / DOT artifacts.

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "toolprint/analysis.hpp"
#include "toolprint/csv.hpp"
#include "toolprint/error.hpp"
#include "toolprint/runner.hpp"

namespace toolprint {

inline std::string_view to_string(RunMode m) { return m == RunMode::grid ? "grid" : "monte_carlo"; }

inline RunMode parse_run_mode(std::string_view s) {
  if (s == "grid") return RunMode::grid;
  if (s == "monte_carlo") return RunMode::monte_carlo;
  throw Error("unknown run mode '" + std::string(s) + "'");
}

inline nlohmann::json to_json(const CellRecord& c) {
  nlohmann::json j{{"id", c.at.id()},
                   {"corpus_group", c.at.corpus_group},
                   {"tool_group", c.at.tool_group},
                   {"normalization", to_string(c.at.normalization)},
                   {"chunk_size", c.at.chunk_size},
                   {"m", c.at.mc_samples},
                   {"feature_subset_size", c.at.feature_subset_size},
                   {"classifier", c.at.classifier},
                   {"status", c.ok ? "ok" : "failed"},
                   {"n_train", c.n_train},
                   {"n_dev", c.n_dev},
                   {"n_test", c.n_test},
                   {"dev_macro_f1", c.dev_macro_f1},
                   {"dev_weighted_f1", c.dev_weighted_f1},
                   {"test_macro_f1", c.test_macro_f1},
                   {"test_weighted_f1", c.test_weighted_f1},
                   {"selected", c.selected},
                   {"leaderboard", c.leaderboard}};
  if (!c.ok) j["error"] = c.error;
  return j;
}

inline CellRecord cell_from_json(const nlohmann::json& j) {
  CellRecord c;
  c.at.corpus_group = j.at("corpus_group").get<std::string>();
  c.at.tool_group = j.at("tool_group").get<std::string>();
  c.at.normalization = parse_normalization(j.at("normalization").get<std::string>());
  c.at.chunk_size = j.value("chunk_size", std::size_t{0});
  c.at.mc_samples = j.value("m", std::size_t{0});
  c.at.feature_subset_size = j.value("feature_subset_size", std::size_t{0});
  c.at.classifier = j.at("classifier").get<std::string>();
  c.ok = j.at("status").get<std::string>() == "ok";
  c.error = j.value("error", std::string{});
  c.n_train = j.value("n_train", std::size_t{0});
  c.n_dev = j.value("n_dev", std::size_t{0});
  c.n_test = j.value("n_test", std::size_t{0});
  c.dev_macro_f1 = j.value("dev_macro_f1", 0.0);
  c.dev_weighted_f1 = j.value("dev_weighted_f1", 0.0);
  c.test_macro_f1 = j.value("test_macro_f1", 0.0);
  c.test_weighted_f1 = j.value("test_weighted_f1", 0.0);
  c.selected = j.value("selected", nlohmann::json::object());
  c.leaderboard = j.value("leaderboard", nlohmann::json::array());
  return c;
}

inline nlohmann::json to_json(const Aggregate& a) {
  return {{"classifier", a.classifier},       {"tool_group", a.tool_group},
          {"corpus_group", a.corpus_group},   {"normalization", a.normalization},
          {"cells", a.cells},                 {"test_macro_f1", a.test_macro_f1},
          {"test_weighted_f1", a.test_weighted_f1}};
}

inline Aggregate aggregate_from_json(const nlohmann::json& j) {
  Aggregate a;
  a.classifier = j.at("classifier").get<std::string>();
  a.tool_group = j.at("tool_group").get<std::string>();
  a.corpus_group = j.at("corpus_group").get<std::string>();
  a.normalization = j.at("normalization").get<std::string>();
  a.cells = j.at("cells").get<std::size_t>();
  a.test_macro_f1 = j.at("test_macro_f1").get<double>();
  a.test_weighted_f1 = j.at("test_weighted_f1").get<double>();
  return a;
}

/// Everything except "timing" is a pure function of config and seed.
inline nlohmann::json to_json(const ReportBundle& b) {
  nlohmann::json j{{"format", "toolprint-summary"}, {"version", 1},       {"config_name", b.config_name},
                   {"seed", b.seed},                {"mode", to_string(b.mode)}, {"n_failed", b.n_failed()}};
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const auto& c : b.cells) cells.push_back(to_json(c));
  auto& aggs = j["aggregates"] = nlohmann::json::array();
  for (const auto& a : b.aggregates) aggs.push_back(to_json(a));
  auto& dc = j["dcor"] = nlohmann::json::object();
  for (const auto& [g, m] : b.dcor) dc[g] = to_json(m);
  auto& ag = j["agreement"] = nlohmann::json::object();
  for (const auto& [g, reps] : b.agreement) {
    auto& arr = ag[g] = nlohmann::json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
  }
  auto& ds = j["describe"] = nlohmann::json::object();
  for (const auto& [g, stats] : b.describe) {
    auto& arr = ds[g] = nlohmann::json::array();
    for (const auto& s : stats) arr.push_back(to_json(s));
  }
  j["trees"] = b.trees;
  nlohmann::json per_cell = nlohmann::json::object();
  for (const auto& c : b.cells) per_cell[c.at.id()] = c.wall_seconds;
  j["timing"] = {{"generated_at", b.generated_at}, {"total_seconds", b.total_seconds}, {"cells", per_cell}};
  return j;
}

inline ReportBundle bundle_from_json(const nlohmann::json& j) {
  if (j.value("format", std::string{}) != "toolprint-summary") throw Error("not a toolprint summary");
  ReportBundle b;
  b.config_name = j.at("config_name").get<std::string>();
  b.seed = j.at("seed").get<std::uint64_t>();
  b.mode = parse_run_mode(j.at("mode").get<std::string>());
  for (const auto& c : j.at("cells")) b.cells.push_back(cell_from_json(c));
  for (const auto& a : j.at("aggregates")) b.aggregates.push_back(aggregate_from_json(a));
  for (const auto& [g, m] : j.at("dcor").items()) b.dcor.emplace(g, dcor_from_json(m));
  for (const auto& [g, reps] : j.at("agreement").items())
    for (const auto& r : reps) b.agreement[g].push_back(agreement_from_json(r));
  for (const auto& [g, stats] : j.at("describe").items())
    for (const auto& s : stats) b.describe[g].push_back(boxplot_from_json(s));
  b.trees = j.value("trees", std::map<std::string, std::string>{});
  if (j.contains("timing")) {
    const auto& t = j.at("timing");
    b.generated_at = t.value("generated_at", std::string{});
    b.total_seconds = t.value("total_seconds", 0.0);
    if (t.contains("cells"))
      for (auto& c : b.cells) c.wall_seconds = t.at("cells").value(c.at.id(), 0.0);
  }
  return b;
}

inline ReportBundle load_bundle(const std::filesystem::path& path) {
  return bundle_from_json(nlohmann::json::parse(csv::read_file(path.string())));
}

inline const std::vector<std::string>& cells_csv_header() {
  static const std::vector<std::string> h{"id",           "corpus_group",    "tool_group",    "normalization",
                                          "chunk_size",   "m",               "feature_subset_size", "classifier",
                                          "status",       "n_train",         "n_dev",         "n_test",
                                          "dev_macro_f1", "dev_weighted_f1", "test_macro_f1", "test_weighted_f1",
                                          "wall_seconds", "error"};
  return h;
}

inline std::string cells_csv(const std::vector<CellRecord>& cells) {
  std::string out = csv::format_row(cells_csv_header());
  for (const auto& c : cells) {
    out += csv::format_row({c.at.id(), c.at.corpus_group, c.at.tool_group, std::string(to_string(c.at.normalization)),
                            std::to_string(c.at.chunk_size), std::to_string(c.at.mc_samples),
                            std::to_string(c.at.feature_subset_size), c.at.classifier, c.ok ? "ok" : "failed",
                            std::to_string(c.n_train), std::to_string(c.n_dev), std::to_string(c.n_test),
                            csv::format_double(c.dev_macro_f1), csv::format_double(c.dev_weighted_f1),
                            csv::format_double(c.test_macro_f1), csv::format_double(c.test_weighted_f1),
                            csv::format_double(c.wall_seconds), c.error});
  }
  return out;
}

/// Reads cells.csv back; hyperparameter details live only in summary.json.
inline std::vector<CellRecord> parse_cells_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows[0] != cells_csv_header()) throw Error("cells.csv: unexpected header");
  std::vector<CellRecord> cells;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != cells_csv_header().size()) throw Error("cells.csv: bad row " + std::to_string(r + 1));
    CellRecord c;
    c.at.corpus_group = f[1];
    c.at.tool_group = f[2];
    c.at.normalization = parse_normalization(f[3]);
    c.at.chunk_size = static_cast<std::size_t>(csv::parse_int(f[4]));
    c.at.mc_samples = static_cast<std::size_t>(csv::parse_int(f[5]));
    c.at.feature_subset_size = static_cast<std::size_t>(csv::parse_int(f[6]));
    c.at.classifier = f[7];
    c.ok = f[8] == "ok";
    c.n_train = static_cast<std::size_t>(csv::parse_int(f[9]));
    c.n_dev = static_cast<std::size_t>(csv::parse_int(f[10]));
    c.n_test = static_cast<std::size_t>(csv::parse_int(f[11]));
    c.dev_macro_f1 = csv::parse_double(f[12]);
    c.dev_weighted_f1 = csv::parse_double(f[13]);
    c.test_macro_f1 = csv::parse_double(f[14]);
    c.test_weighted_f1 = csv::parse_double(f[15]);
    c.wall_seconds = csv::parse_double(f[16]);
    c.error = f[17];
    if (c.at.id() != f[0]) throw Error("cells.csv: id mismatch at row " + std::to_string(r + 1));
    cells.push_back(std::move(c));
  }
  return cells;
}

inline std::string agreement_csv(const std::map<std::string, std::vector<AgreementReport>>& by_group,
                                  Normalization norm) {
  std::string out = csv::format_row({"corpus_group", "tool", "agreement", "n_documents", "n_ties"});
  for (const auto& [g, reps] : by_group)
    for (const auto& r : reps) {
      if (r.scheme != norm) continue;
      for (std::size_t t = 0; t < r.tools.size(); ++t)
        out += csv::format_row({g, r.tools[t], csv::format_double(r.rates[t]), std::to_string(r.n_documents),
                                std::to_string(r.n_ties)});
    }
  return out;
}

/// File-name-safe form of a cell id.
inline std::string sanitize_id(std::string_view id) {
  std::string s(id);
  for (auto& ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_')) ch = '_';
  return s;
}

inline const std::set<std::string>& known_formats() {
  static const std::set<std::string> f{"csv", "json", "svg", "dot"};
  return f;
}

inline std::set<std::string> parse_formats(std::string_view list) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string f(list.substr(start, end - start));
    if (!f.empty()) {
      if (!known_formats().contains(f)) throw Error("unknown output format '" + f + "'");
      out.insert(f);
    }
    start = end + 1;
  }
  if (out.empty()) throw Error("no output formats selected");
  return out;
}

/// Writes the selected artifact families into `dir`; returns the file names written.
inline std::vector<std::string> emit_report(const ReportBundle& b, const std::filesystem::path& dir,
                                            const std::set<std::string>& formats = known_formats()) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    csv::write_file((dir / name).string(), text);
    written.push_back(name);
  };
  if (formats.contains("json")) put("summary.json", to_json(b).dump(2) + "\n");
  if (formats.contains("csv")) {
    put("cells.csv", cells_csv(b.cells));
    for (const auto& [g, m] : b.dcor) put("dcor_" + g + ".csv", dcor_csv(m));
    for (const auto& [g, stats] : b.describe) put("describe_" + g + ".csv", describe_csv(stats));
    std::set<Normalization> norms;
    for (const auto& [g, reps] : b.agreement)
      for (const auto& r : reps) norms.insert(r.scheme);
    for (auto n : norms) put("agreement_" + std::string(to_string(n)) + ".csv", agreement_csv(b.agreement, n));
  }
  if (formats.contains("svg")) {
    for (const auto& [g, m] : b.dcor) put("dcor_" + g + ".svg", svg::heatmap(m, "Distance correlation, " + g));
    for (const auto& [g, stats] : b.describe) put("boxplot_" + g + ".svg", svg::boxplot(stats, "Scores, " + g));
  }
  if (formats.contains("dot"))
    for (const auto& [id, dot] : b.trees) put("tree_" + sanitize_id(id) + ".dot", dot);
  return written;
}

}  // namespace toolprint
