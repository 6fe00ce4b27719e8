#pragma once

// Experiment grid orchestration: corpus groups x tool groups x normalizations
// x chunk sizes (or Monte Carlo sizes) x classifiers.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "toolprint/analysis.hpp"
#include "toolprint/classify.hpp"
#include "toolprint/corpus.hpp"
#include "toolprint/error.hpp"
#include "toolprint/features.hpp"
#include "toolprint/normalize.hpp"
#include "toolprint/scorers.hpp"
#include "toolprint/split.hpp"

namespace toolprint {

/// Raised for configuration problems (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class RunMode { grid, monte_carlo };

inline const std::vector<std::string>& known_tool_groups() {
  static const std::vector<std::string> g{"all", "discrete", "continuous", "discrete_sentences", "continuous_sentences"};
  return g;
}

struct CorpusSource {
  std::string name;
  std::set<std::string> groups;
  std::optional<std::filesystem::path> path;
  std::optional<SynthCorpusSpec> synthetic;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t seed = 0;
  RunMode mode = RunMode::grid;
  std::vector<CorpusSource> corpora;
  std::vector<std::string> corpus_groups;  // empty: every tag used by some corpus
  std::vector<ToolSpec> tools;
  std::vector<std::string> tool_groups{"all"};
  std::vector<Normalization> normalizations{Normalization::raw};
  std::vector<std::size_t> chunk_sizes{50, 100, 200, 400, 1000};
  std::size_t oversample_factor = 2;
  std::vector<ClassifierSpec> classifiers{ClassifierSpec{}};
  bool use_scaler = true;
  std::vector<std::size_t> mc_samples{100};
  std::vector<std::size_t> mc_feature_subset_sizes{15};
  std::vector<Normalization> agreement_normalizations{Normalization::N1, Normalization::N3, Normalization::N5,
                                                      Normalization::N10};
  bool emit_trees = true;
  std::size_t workers = 0;  // 0: resolve from environment / hardware

  void validate() const {
    if (corpora.empty()) throw ConfigError("config: no corpora");
    if (tools.size() < 2) throw ConfigError("config: need at least 2 tools");
    if (tool_groups.empty()) throw ConfigError("config: no tool groups");
    if (normalizations.empty()) throw ConfigError("config: no normalizations");
    if (classifiers.empty()) throw ConfigError("config: no classifiers");
    if (mode == RunMode::grid && chunk_sizes.empty()) throw ConfigError("config: no chunk sizes");
    if (mode == RunMode::monte_carlo && (mc_samples.empty() || mc_feature_subset_sizes.empty()))
      throw ConfigError("config: monte carlo needs m and feature subset sizes");
    for (auto cs : chunk_sizes)
      if (cs == 0) throw ConfigError("config: chunk size must be >= 1");
    for (auto m : mc_samples)
      if (m == 0) throw ConfigError("config: monte carlo m must be >= 1");
    for (auto l : mc_feature_subset_sizes)
      if (l < 1 || l > kMonteCarloFeatureCount) throw ConfigError("config: feature subset size outside [1, 15]");
    for (const auto& g : tool_groups)
      if (std::find(known_tool_groups().begin(), known_tool_groups().end(), g) == known_tool_groups().end())
        throw ConfigError("config: unknown tool group '" + g + "'");
    std::set<std::string> labels;
    for (const auto& c : classifiers)
      if (!labels.insert(c.label()).second) throw ConfigError("config: duplicate classifier '" + c.label() + "'");
    std::set<std::string> names;
    for (const auto& t : tools)
      if (!names.insert(t.name).second) throw ConfigError("config: duplicate tool '" + t.name + "'");
    std::set<std::string> tags;
    for (const auto& c : corpora) {
      if (c.groups.empty()) throw ConfigError("config: corpus '" + c.name + "' has no groups");
      if (!c.path && !c.synthetic) throw ConfigError("config: corpus '" + c.name + "' needs a path or synthetic spec");
      tags.insert(c.groups.begin(), c.groups.end());
    }
    for (const auto& g : corpus_groups)
      if (!tags.contains(g)) throw ConfigError("config: corpus group '" + g + "' has no corpora");
  }

  std::vector<std::string> resolved_corpus_groups() const {
    if (!corpus_groups.empty()) return corpus_groups;
    std::set<std::string> tags;
    for (const auto& c : corpora) tags.insert(c.groups.begin(), c.groups.end());
    return {tags.begin(), tags.end()};
  }
};

namespace detail {

inline LatentDistribution latent_from_json(const nlohmann::json& j) {
  LatentDistribution d;
  const auto type = j.value("type", std::string("uniform"));
  if (type == "uniform") {
    d.kind = LatentDistribution::Kind::uniform;
    d.a = j.value("lo", -1.0);
    d.b = j.value("hi", 1.0);
  } else if (type == "normal") {
    d.kind = LatentDistribution::Kind::normal;
    d.a = j.value("mean", 0.0);
    d.b = j.value("std", 0.5);
  } else if (type == "fixed") {
    d.kind = LatentDistribution::Kind::fixed;
    d.a = j.value("value", 0.0);
  } else {
    throw ConfigError("unknown latent distribution '" + type + "'");
  }
  return d;
}

inline SynthCorpusSpec synth_from_json(const nlohmann::json& j, const std::string& name) {
  SynthCorpusSpec s;
  s.name = name;
  s.n_docs = j.value("n_docs", s.n_docs);
  s.lang = j.value("lang", s.lang);
  s.genre = j.value("genre", s.genre);
  s.id_prefix = j.value("id_prefix", name + "-");
  s.min_sentences = j.value("min_sentences", s.min_sentences);
  s.max_sentences = j.value("max_sentences", s.max_sentences);
  s.min_tokens = j.value("min_tokens", s.min_tokens);
  s.max_tokens = j.value("max_tokens", s.max_tokens);
  s.sentiment_rate = j.value("sentiment_rate", s.sentiment_rate);
  s.negator_rate = j.value("negator_rate", s.negator_rate);
  s.booster_rate = j.value("booster_rate", s.booster_rate);
  if (j.contains("latent")) s.latent = latent_from_json(j["latent"]);
  return s;
}

template <class T, class F>
std::vector<T> parse_list(const nlohmann::json& j, const char* key, std::vector<T> fallback, F&& convert) {
  if (!j.contains(key)) return fallback;
  std::vector<T> out;
  for (const auto& e : j.at(key)) out.push_back(convert(e));
  return out;
}

}  // namespace detail

/// Parses a config document; relative corpus paths resolve against `base_dir`.
inline ExperimentConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.seed = j.value("seed", c.seed);
    const auto mode = j.value("mode", std::string("grid"));
    if (mode == "grid") c.mode = RunMode::grid;
    else if (mode == "monte_carlo") c.mode = RunMode::monte_carlo;
    else throw ConfigError("unknown mode '" + mode + "'");
    for (const auto& cj : j.at("corpora")) {
      CorpusSource src;
      src.name = cj.at("name").get<std::string>();
      for (const auto& g : cj.at("groups")) src.groups.insert(g.get<std::string>());
      for (const auto& g : src.groups)
        if (g != "C1" && g != "C2" && g != "C3" && g != "C4") throw ConfigError("unknown corpus group " + g);
      if (cj.contains("path")) src.path = base_dir / cj.at("path").get<std::string>();
      if (cj.contains("synthetic")) src.synthetic = detail::synth_from_json(cj.at("synthetic"), src.name);
      c.corpora.push_back(std::move(src));
    }
    if (j.contains("corpus_groups")) c.corpus_groups = j.at("corpus_groups").get<std::vector<std::string>>();
    c.tools = tool_specs_from_json(j.at("tools"));
    if (j.contains("tool_groups")) c.tool_groups = j.at("tool_groups").get<std::vector<std::string>>();
    auto norm = [](const nlohmann::json& e) { return parse_normalization(e.get<std::string>()); };
    c.normalizations = detail::parse_list<Normalization>(j, "normalizations", c.normalizations, norm);
    c.agreement_normalizations =
        detail::parse_list<Normalization>(j, "agreement_normalizations", c.agreement_normalizations, norm);
    if (j.contains("chunk_sizes")) c.chunk_sizes = j.at("chunk_sizes").get<std::vector<std::size_t>>();
    c.oversample_factor = j.value("oversample_factor", c.oversample_factor);
    c.classifiers = detail::parse_list<ClassifierSpec>(j, "classifiers", c.classifiers,
                                                       [](const nlohmann::json& e) { return classifier_from_json(e); });
    c.use_scaler = j.value("use_scaler", c.use_scaler);
    if (j.contains("monte_carlo")) {
      const auto& mc = j.at("monte_carlo");
      if (mc.contains("m")) c.mc_samples = mc.at("m").get<std::vector<std::size_t>>();
      if (mc.contains("feature_subset_sizes"))
        c.mc_feature_subset_sizes = mc.at("feature_subset_sizes").get<std::vector<std::size_t>>();
    }
    c.emit_trees = j.value("emit_trees", c.emit_trees);
    c.workers = j.value("workers", c.workers);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(csv::read_file(path.string()));
  } catch (const std::exception& e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

// ---------------------------------------------------------------------------
// Cells and reports

struct CellCoordinates {
  std::string corpus_group;
  std::string tool_group;
  Normalization normalization = Normalization::raw;
  std::size_t chunk_size = 0;           // grid mode
  std::size_t mc_samples = 0;           // monte carlo mode
  std::size_t feature_subset_size = 0;  // monte carlo mode
  std::string classifier;

  std::string id() const {
    std::string s = corpus_group + "/" + tool_group + "/" + std::string(to_string(normalization)) + "/";
    if (mc_samples) s += "m" + std::to_string(mc_samples) + "/l" + std::to_string(feature_subset_size);
    else s += "cs" + std::to_string(chunk_size);
    return s + "/" + classifier;
  }

  bool operator==(const CellCoordinates&) const = default;
};

struct CellRecord {
  CellCoordinates at;
  bool ok = false;
  std::string error;
  std::size_t n_train = 0, n_dev = 0, n_test = 0;
  double dev_macro_f1 = 0, dev_weighted_f1 = 0, test_macro_f1 = 0, test_weighted_f1 = 0;
  nlohmann::json selected = nlohmann::json::object();  // chosen hyperparameters
  nlohmann::json leaderboard = nlohmann::json::array();
  double wall_seconds = 0;  // excluded from deterministic output

  bool operator==(const CellRecord&) const = default;
};

struct Aggregate {
  std::string classifier, tool_group, corpus_group;
  std::string normalization;  // "mean" for the across-normalization row
  std::size_t cells = 0;
  double test_macro_f1 = 0, test_weighted_f1 = 0;
};

struct ReportBundle {
  std::string config_name;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::grid;
  std::vector<CellRecord> cells;
  std::vector<Aggregate> aggregates;
  std::map<std::string, DcorMatrix> dcor;                         // per corpus group
  std::map<std::string, std::vector<AgreementReport>> agreement;  // per corpus group
  std::map<std::string, std::vector<BoxplotStats>> describe;      // per corpus group
  std::map<std::string, std::string> trees;                       // cell id -> DOT
  std::string generated_at;
  double total_seconds = 0;

  std::size_t n_failed() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.ok; }));
  }
};

inline std::vector<CellCoordinates> enumerate_cells(const ExperimentConfig& c) {
  std::vector<CellCoordinates> cells;
  for (const auto& cg : c.resolved_corpus_groups())
    for (const auto& tg : c.tool_groups)
      for (auto norm : c.normalizations) {
        auto push = [&](std::size_t cs, std::size_t m, std::size_t l) {
          for (const auto& clf : c.classifiers) cells.push_back({cg, tg, norm, cs, m, l, clf.label()});
        };
        if (c.mode == RunMode::grid) {
          for (auto cs : c.chunk_sizes) push(cs, 0, 0);
        } else {
          for (auto m : c.mc_samples)
            for (auto l : c.mc_feature_subset_sizes) push(0, m, l);
        }
      }
  return cells;
}

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("TOOLPRINT_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline Corpus assemble_group(const std::vector<Corpus>& corpora, const std::string& group) {
  Corpus out;
  out.name = group;
  out.group_tags = {group};
  for (const auto& c : corpora)
    if (c.group_tags.contains(group)) out.documents.insert(out.documents.end(), c.documents.begin(), c.documents.end());
  out.validate();  // also rejects ids shared between corpora
  return out;
}

inline std::vector<std::string> tools_in_group(const std::vector<ToolSpec>& tools, const std::string& group) {
  std::vector<std::string> out;
  const bool want_discrete = group.starts_with("discrete");
  for (const auto& t : tools)
    if (group == "all" || t.discrete() == want_discrete) out.push_back(t.name);
  return out;
}

inline ScoreMode mode_of_group(const std::string& group) {
  return group.ends_with("_sentences") ? ScoreMode::sentence_mean : ScoreMode::text;
}

}  // namespace detail

/// Runs every cell; failures are recorded per cell and never abort the run.
/// Seeds derive from the master seed and coordinates only, so results do not
/// depend on worker count or on which other cells exist.
inline ReportBundle run_experiment(const ExperimentConfig& config, std::size_t workers = 0) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t master = config.seed;

  std::vector<Corpus> corpora;
  for (const auto& src : config.corpora) {
    if (src.synthetic) {
      auto spec = *src.synthetic;
      spec.group_tags = src.groups;
      corpora.push_back(generate_synthetic_corpus(spec, derive_seed(master, "corpus/" + src.name)));
    } else {
      corpora.push_back(load_corpus(*src.path, src.groups, src.name));
    }
  }

  const auto groups = config.resolved_corpus_groups();
  std::map<std::string, Corpus> grouped;
  for (const auto& g : groups) grouped.emplace(g, detail::assemble_group(corpora, g));

  std::set<ScoreMode> modes;
  for (const auto& tg : config.tool_groups) modes.insert(detail::mode_of_group(tg));
  std::map<std::pair<std::string, ScoreMode>, ScoreTable> tables;
  for (const auto& g : groups)
    for (auto mode : {ScoreMode::text, ScoreMode::sentence_mean})
      if (modes.contains(mode) || mode == ScoreMode::text)
        tables.emplace(std::pair{g, mode},
                       build_score_table(grouped.at(g), config.tools, mode,
                                         derive_seed(master, "table/" + g + "/" + std::string(to_string(mode)))));

  ReportBundle bundle;
  bundle.config_name = config.name;
  bundle.seed = master;
  bundle.mode = config.mode;

  for (const auto& g : groups) {
    const auto& table = tables.at({g, ScoreMode::text});
    bundle.dcor.emplace(g, dcor_matrix(table));
    bundle.describe.emplace(g, describe(table));
    if (table.n_tools() >= 3) {
      auto& reports = bundle.agreement[g];
      for (auto norm : config.agreement_normalizations) reports.push_back(majority_agreement(table, norm));
    }
  }

  const auto coords = enumerate_cells(config);
  bundle.cells.resize(coords.size());
  std::vector<std::string> dots(coords.size());
  std::atomic<std::size_t> next{0};

  auto run_cell = [&](std::size_t idx) {
    const auto& at = coords[idx];
    CellRecord rec;
    rec.at = at;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto& table = tables.at({at.corpus_group, detail::mode_of_group(at.tool_group)});
      const auto filter = detail::tools_in_group(config.tools, at.tool_group);
      if (filter.size() < 2)
        throw Error("tool group '" + at.tool_group + "' has " + std::to_string(filter.size()) + " tool(s); need 2");
      const std::string data_key = at.corpus_group + "/" + at.tool_group + "/" + std::string(to_string(at.normalization));
      LabeledDataset data;
      std::uint64_t split_seed = 0;
      if (config.mode == RunMode::grid) {
        const auto chunk_seed = derive_seed(master, "chunks/" + at.corpus_group + "/" + std::to_string(at.chunk_size));
        const auto chunks = sample_chunks(table.n_docs(), at.chunk_size,
                                          default_chunk_count(table.n_docs(), at.chunk_size, config.oversample_factor),
                                          chunk_seed);
        data = build_dataset(table, chunks, at.normalization, filter);
        split_seed = derive_seed(master, "split/" + data_key + "/cs" + std::to_string(at.chunk_size));
      } else {
        const std::string mc_key = data_key + "/m" + std::to_string(at.mc_samples) + "/l" +
                                   std::to_string(at.feature_subset_size);
        data = monte_carlo_dataset(table, at.mc_samples, at.feature_subset_size, derive_seed(master, "mc/" + mc_key),
                                   at.normalization, filter);
        split_seed = derive_seed(master, "split/" + mc_key);
      }
      const auto split = split_dataset(data, split_seed);
      const auto& spec = *std::find_if(config.classifiers.begin(), config.classifiers.end(),
                                       [&](const auto& c) { return c.label() == at.classifier; });
      auto outcome = train_classifier(spec, split, config.use_scaler, derive_seed(master, "train/" + at.id()));
      rec.ok = true;
      rec.n_train = split.train.size();
      rec.n_dev = split.dev.size();
      rec.n_test = split.test.size();
      rec.dev_macro_f1 = outcome.dev.macro_f1;
      rec.dev_weighted_f1 = outcome.dev.weighted_f1;
      rec.test_macro_f1 = outcome.test.macro_f1;
      rec.test_weighted_f1 = outcome.test.weighted_f1;
      rec.selected = outcome.model.hyperparams;
      rec.leaderboard = outcome.leaderboard;
      if (config.emit_trees && spec.type == "tree")
        dots[idx] = export_tree_dot(std::get<TreeModel>(outcome.model.impl), outcome.model.feature_names,
                                    outcome.model.class_names);
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bundle.cells[idx] = std::move(rec);
  };

  const std::size_t n_workers = std::min(resolve_workers(workers ? workers : config.workers), std::max<std::size_t>(1, coords.size()));
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < coords.size(); ++i) run_cell(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < coords.size();) run_cell(i);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!dots[i].empty()) bundle.trees.emplace(coords[i].id(), std::move(dots[i]));

  // Means over chunk sizes / MC settings per (classifier, tool group, corpus,
  // normalization), then over normalizations.
  std::map<std::tuple<std::string, std::string, std::string, std::string>, Aggregate> per_norm;
  for (const auto& c : bundle.cells) {
    if (!c.ok) continue;
    auto& a = per_norm[{c.at.classifier, c.at.tool_group, c.at.corpus_group, std::string(to_string(c.at.normalization))}];
    a.classifier = c.at.classifier;
    a.tool_group = c.at.tool_group;
    a.corpus_group = c.at.corpus_group;
    a.normalization = to_string(c.at.normalization);
    ++a.cells;
    a.test_macro_f1 += c.test_macro_f1;
    a.test_weighted_f1 += c.test_weighted_f1;
  }
  std::map<std::tuple<std::string, std::string, std::string>, Aggregate> overall;
  for (auto& [key, a] : per_norm) {
    a.test_macro_f1 /= static_cast<double>(a.cells);
    a.test_weighted_f1 /= static_cast<double>(a.cells);
    bundle.aggregates.push_back(a);
    auto& o = overall[{a.classifier, a.tool_group, a.corpus_group}];
    o.classifier = a.classifier;
    o.tool_group = a.tool_group;
    o.corpus_group = a.corpus_group;
    o.normalization = "mean";
    ++o.cells;  // counts normalizations here
    o.test_macro_f1 += a.test_macro_f1;
    o.test_weighted_f1 += a.test_weighted_f1;
  }
  for (auto& [key, o] : overall) {
    o.test_macro_f1 /= static_cast<double>(o.cells);
    o.test_weighted_f1 /= static_cast<double>(o.cells);
    bundle.aggregates.push_back(o);
  }

  bundle.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  bundle.generated_at = buf;
  return bundle;
}

}  // namespace toolprint
