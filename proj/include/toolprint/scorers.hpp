#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "toolprint/corpus.hpp"
#include "toolprint/csv.hpp"
#include "toolprint/error.hpp"
#include "toolprint/lexicon.hpp"
#include "toolprint/rng.hpp"

namespace toolprint {

enum class ToolKind { lexicon_compound, pattern_average, synthetic };
enum class OutputClass { continuous, discrete3, discrete5, binary };
enum class ScoreMode { text, sentence_mean };

inline std::string_view to_string(ToolKind k) {
  switch (k) {
    case ToolKind::lexicon_compound: return "lexicon_compound";
    case ToolKind::pattern_average: return "pattern_average";
    case ToolKind::synthetic: return "synthetic";
  }
  return "?";
}
inline std::string_view to_string(OutputClass c) {
  switch (c) {
    case OutputClass::continuous: return "continuous";
    case OutputClass::discrete3: return "discrete3";
    case OutputClass::discrete5: return "discrete5";
    case OutputClass::binary: return "binary";
  }
  return "?";
}
inline std::string_view to_string(ScoreMode m) { return m == ScoreMode::text ? "text" : "sentence_mean"; }

inline ToolKind parse_tool_kind(std::string_view s) {
  if (s == "lexicon_compound") return ToolKind::lexicon_compound;
  if (s == "pattern_average") return ToolKind::pattern_average;
  if (s == "synthetic") return ToolKind::synthetic;
  throw Error("unknown tool kind '" + std::string(s) + "'");
}
inline OutputClass parse_output_class(std::string_view s) {
  if (s == "continuous") return OutputClass::continuous;
  if (s == "discrete3") return OutputClass::discrete3;
  if (s == "discrete5") return OutputClass::discrete5;
  if (s == "binary") return OutputClass::binary;
  throw Error("unknown output class '" + std::string(s) + "'");
}
inline ScoreMode parse_score_mode(std::string_view s) {
  if (s == "text") return ScoreMode::text;
  if (s == "sentence_mean") return ScoreMode::sentence_mean;
  throw Error("unknown score mode '" + std::string(s) + "'");
}

/// Distribution of a simulated tool: a finite point-mass mixture or a
/// Gaussian clipped to [-1, +1].
struct SyntheticDistribution {
  enum class Kind { point_mass, clipped_gaussian };
  Kind kind = Kind::clipped_gaussian;
  std::vector<double> support;
  std::vector<double> probabilities;
  double mean = 0.0;
  double std = 0.3;

  void validate() const {
    if (kind == Kind::clipped_gaussian) {
      if (!std::isfinite(mean) || !(std >= 0.0)) throw Error("clipped gaussian: bad mean/std");
      return;
    }
    if (support.empty() || support.size() != probabilities.size())
      throw Error("point mass: support and probabilities must be non-empty and equally long");
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (!(support[i] >= -1.0 && support[i] <= 1.0)) throw Error("point mass: support value outside [-1, 1]");
      if (!(probabilities[i] >= 0.0)) throw Error("point mass: negative probability");
      total += probabilities[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error("point mass: probabilities sum to " + csv::format_double(total) + ", not 1");
  }

  double draw(Rng& rng) const {
    if (kind == Kind::clipped_gaussian) return std::clamp(rng.normal(mean, std), -1.0, 1.0);
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      acc += probabilities[i];
      if (u < acc) return support[i];
    }
    // Rounding left u above the accumulated mass; take the last non-zero atom.
    for (std::size_t i = support.size(); i-- > 0;)
      if (probabilities[i] > 0.0) return support[i];
    return support.back();
  }
};

/// Kind-specific parameters. Lexicon fields are ignored by synthetic tools
/// and vice versa.
struct ToolParams {
  std::string lexicon = "demo";
  double valence_scale = 1.0;
  double valence_jitter = 0.0;     // per-token deterministic perturbation amplitude
  std::uint64_t jitter_seed = 0;
  double negation_factor = -0.74;
  double alpha = 15.0;             // compound normalizer
  std::size_t negation_window = 3;
  bool use_negation = true;
  bool use_boosters = true;
  SyntheticDistribution distribution;
};

struct ToolSpec {
  std::string name;
  ToolKind kind = ToolKind::lexicon_compound;
  OutputClass output_class = OutputClass::continuous;
  ToolParams params;

  bool discrete() const { return output_class != OutputClass::continuous; }
  std::set<std::string> group_tags() const { return {discrete() ? "discrete" : "continuous"}; }
};

// ---------------------------------------------------------------------------
// Scoring primitives

/// Rule-based compound score: negation and booster heuristics over a summed
/// valence, squashed by s / sqrt(s^2 + alpha).
inline double lexicon_compound(std::span<const std::string> tokens, const Lexicon& lexicon,
                               const ToolParams& params = {}) {
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const double* found = lexicon.valence(tokens[i]);
    if (!found) continue;
    double v = *found;
    if (params.use_boosters && i > 0 && v != 0.0) {
      const double inc = lexicon.booster(tokens[i - 1]);
      v += v > 0 ? inc : -inc;
    }
    if (params.use_negation) {
      const std::size_t from = i > params.negation_window ? i - params.negation_window : 0;
      for (std::size_t k = from; k < i; ++k) {
        if (lexicon.is_negator(tokens[k])) {
          v *= params.negation_factor;
          break;
        }
      }
    }
    sum += v;
  }
  return sum / std::sqrt(sum * sum + params.alpha);
}

/// Mean valence of the matched tokens; 0 when nothing matches.
inline double pattern_average(std::span<const std::string> tokens, const Lexicon& lexicon) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    if (const double* v = lexicon.valence(t)) {
      sum += *v;
      ++hits;
    }
  }
  return hits ? sum / static_cast<double>(hits) : 0.0;
}

inline double discretize_output(double score, OutputClass cls) {
  switch (cls) {
    case OutputClass::continuous:
      return score;
    case OutputClass::discrete3:
      if (score <= -1.0 / 3.0) return -1.0;
      if (score >= 1.0 / 3.0) return 1.0;
      return 0.0;
    case OutputClass::binary:
      return score >= 0.0 ? 1.0 : -1.0;
    case OutputClass::discrete5: {
      // Nearest multiple of 0.5, exact halves rounded toward zero.
      const double steps = std::ceil(std::abs(score) * 2.0 - 0.5);
      const double v = std::min(steps, 2.0) / 2.0;
      return score < 0.0 ? -v : v;
    }
  }
  return score;
}

inline double clamp_score(double x) {
  if (!std::isfinite(x)) throw Error("scorer produced a non-finite value");
  return std::clamp(x, -1.0, 1.0);
}

/// Lexicon as seen by one tool after its scale/jitter parameters.
inline Lexicon materialize_lexicon(const ToolParams& params) {
  if (params.lexicon != "demo") throw Error("unknown lexicon '" + params.lexicon + "'");
  Lexicon lex = demo_lexicon();
  if (params.valence_scale != 1.0 || params.valence_jitter != 0.0) {
    for (auto& [tok, v] : lex.entries) {
      const double u = static_cast<double>(derive_seed(params.jitter_seed, tok) >> 11) * 0x1.0p-53;
      v = std::clamp(v * params.valence_scale + params.valence_jitter * (2.0 * u - 1.0), -1.0, 1.0);
    }
  }
  return lex;
}

/// A ready-to-use scorer for a non-synthetic tool (lexicon materialized once).
class Scorer {
 public:
  explicit Scorer(ToolSpec tool) : tool_(std::move(tool)) {
    if (tool_.kind == ToolKind::synthetic)
      throw Error("tool '" + tool_.name + "' is synthetic; use simulate_tool");
    lexicon_ = materialize_lexicon(tool_.params);
  }

  const ToolSpec& tool() const { return tool_; }

  /// Raw score of one piece of text followed by the output-class adapter.
  double score_text(std::string_view text) const {
    const auto tokens = tokenize(text);
    double raw = 0.0;
    switch (tool_.kind) {
      case ToolKind::lexicon_compound: raw = lexicon_compound(tokens, lexicon_, tool_.params); break;
      case ToolKind::pattern_average: raw = pattern_average(tokens, lexicon_); break;
      default: throw Error("unknown tool kind");
    }
    return discretize_output(clamp_score(raw), tool_.output_class);
  }

  double score(const Document& doc, ScoreMode mode) const {
    if (mode == ScoreMode::text) return clamp_score(score_text(doc.text));
    const auto sentences = sentences_of(doc);
    double sum = 0.0;
    for (const auto& s : sentences) sum += score_text(s);
    return clamp_score(sum / static_cast<double>(sentences.size()));
  }

 private:
  ToolSpec tool_;
  Lexicon lexicon_;
};

inline double score_document(const ToolSpec& tool, const Document& doc, ScoreMode mode) {
  return Scorer(tool).score(doc, mode);
}

/// I.i.d. draws for a synthetic tool. Draw i depends only on (seed, i), so
/// the sequence is a pure function of (spec, number of documents, seed).
/// When sentence counts are given each document averages one draw per sentence.
inline std::vector<double> simulate_tool(const ToolSpec& tool, std::size_t n_docs, std::uint64_t seed,
                                         std::span<const std::size_t> sentence_counts = {}) {
  if (tool.kind != ToolKind::synthetic) throw Error("tool '" + tool.name + "' is not synthetic");
  tool.params.distribution.validate();
  if (!sentence_counts.empty() && sentence_counts.size() != n_docs)
    throw Error("simulate_tool: sentence counts do not match document count");
  std::vector<double> out(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) {
    Rng rng(derive_seed(seed, i));
    const std::size_t k = sentence_counts.empty() ? 1 : std::max<std::size_t>(1, sentence_counts[i]);
    double sum = 0.0;
    for (std::size_t s = 0; s < k; ++s)
      sum += discretize_output(tool.params.distribution.draw(rng), tool.output_class);
    out[i] = clamp_score(sum / static_cast<double>(k));
  }
  return out;
}

inline std::vector<double> simulate_tool(const ToolSpec& tool, std::span<const std::string> doc_ids,
                                         std::uint64_t seed) {
  return simulate_tool(tool, doc_ids.size(), seed);
}

// ---------------------------------------------------------------------------
// Score tables

struct ScoreTable {
  std::vector<std::string> tools;
  std::vector<std::string> doc_ids;
  ScoreMode mode = ScoreMode::text;
  std::vector<double> scores;  // row-major, tools x documents

  // Provenance carried into the manifest.
  std::vector<ToolSpec> tool_specs;
  std::string corpus_name;
  std::uint64_t seed = 0;

  std::size_t n_tools() const { return tools.size(); }
  std::size_t n_docs() const { return doc_ids.size(); }
  std::span<const double> row(std::size_t tool) const { return {scores.data() + tool * n_docs(), n_docs()}; }
  std::span<double> row(std::size_t tool) { return {scores.data() + tool * n_docs(), n_docs()}; }
  double at(std::size_t tool, std::size_t doc) const { return scores[tool * n_docs() + doc]; }

  std::size_t tool_index(std::string_view name) const {
    auto it = std::find(tools.begin(), tools.end(), name);
    if (it == tools.end()) throw Error("unknown tool '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - tools.begin());
  }

  void validate() const {
    if (scores.size() != tools.size() * doc_ids.size()) throw Error("score table: shape mismatch");
    for (double v : scores)
      if (!std::isfinite(v) || v < -1.0 || v > 1.0) throw Error("score table: entry outside [-1, 1]");
  }

  /// Table restricted to the given tool rows, in the given order.
  ScoreTable select(std::span<const std::size_t> rows) const {
    ScoreTable t;
    t.doc_ids = doc_ids;
    t.mode = mode;
    t.corpus_name = corpus_name;
    t.seed = seed;
    for (auto r : rows) {
      t.tools.push_back(tools.at(r));
      if (r < tool_specs.size()) t.tool_specs.push_back(tool_specs[r]);
      auto src = row(r);
      t.scores.insert(t.scores.end(), src.begin(), src.end());
    }
    return t;
  }
};

/// Row i is the scorer output of tools[i] on every document, or, for
/// synthetic tools, a draw from the stream derive_seed(seed, i).
inline ScoreTable build_score_table(const Corpus& corpus, std::span<const ToolSpec> tools, ScoreMode mode,
                                    std::uint64_t seed) {
  if (tools.size() < 2) throw Error("score table needs at least 2 tools");
  std::unordered_set<std::string> names;
  for (const auto& t : tools)
    if (!names.insert(t.name).second) throw Error("duplicate tool name '" + t.name + "'");
  ScoreTable table;
  table.mode = mode;
  table.corpus_name = corpus.name;
  table.seed = seed;
  table.tool_specs.assign(tools.begin(), tools.end());
  for (const auto& d : corpus.documents) table.doc_ids.push_back(d.id);
  for (const auto& t : tools) table.tools.push_back(t.name);
  table.scores.resize(tools.size() * corpus.documents.size());

  std::vector<std::size_t> sentence_counts;
  if (mode == ScoreMode::sentence_mean)
    for (const auto& d : corpus.documents) sentence_counts.push_back(sentences_of(d).size());

  for (std::size_t i = 0; i < tools.size(); ++i) {
    auto out = table.row(i);
    if (tools[i].kind == ToolKind::synthetic) {
      const auto drawn = simulate_tool(tools[i], corpus.documents.size(), derive_seed(seed, i), sentence_counts);
      std::copy(drawn.begin(), drawn.end(), out.begin());
    } else {
      const Scorer scorer(tools[i]);
      for (std::size_t j = 0; j < corpus.documents.size(); ++j) out[j] = scorer.score(corpus.documents[j], mode);
    }
  }
  table.validate();
  return table;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json to_json(const SyntheticDistribution& d) {
  if (d.kind == SyntheticDistribution::Kind::point_mass)
    return {{"type", "point_mass"}, {"support", d.support}, {"probabilities", d.probabilities}};
  return {{"type", "clipped_gaussian"}, {"mean", d.mean}, {"std", d.std}};
}

inline SyntheticDistribution distribution_from_json(const nlohmann::json& j) {
  SyntheticDistribution d;
  const auto type = j.value("type", std::string("clipped_gaussian"));
  if (type == "point_mass") {
    d.kind = SyntheticDistribution::Kind::point_mass;
    if (j.contains("support")) {
      d.support = j.at("support").get<std::vector<double>>();
      d.probabilities = j.at("probabilities").get<std::vector<double>>();
    } else {
      // {"masses": {"-1": 0.2, "1": 0.8}} shorthand
      for (const auto& [k, v] : j.at("masses").items()) {
        d.support.push_back(csv::parse_double(k));
        d.probabilities.push_back(v.get<double>());
      }
    }
  } else if (type == "clipped_gaussian") {
    d.kind = SyntheticDistribution::Kind::clipped_gaussian;
    d.mean = j.value("mean", 0.0);
    d.std = j.value("std", 0.3);
  } else {
    throw Error("unknown distribution type '" + type + "'");
  }
  return d;
}

inline nlohmann::json to_json(const ToolSpec& t) {
  nlohmann::json params;
  if (t.kind == ToolKind::synthetic) {
    params["distribution"] = to_json(t.params.distribution);
  } else {
    const auto& p = t.params;
    params = {{"lexicon", p.lexicon},
              {"valence_scale", p.valence_scale},
              {"valence_jitter", p.valence_jitter},
              {"jitter_seed", p.jitter_seed},
              {"negation_factor", p.negation_factor},
              {"alpha", p.alpha},
              {"negation_window", p.negation_window},
              {"use_negation", p.use_negation},
              {"use_boosters", p.use_boosters}};
  }
  const auto tags = t.group_tags();
  return {{"name", t.name},
          {"kind", to_string(t.kind)},
          {"output_class", to_string(t.output_class)},
          {"group_tags", std::vector<std::string>(tags.begin(), tags.end())},
          {"params", params}};
}

inline ToolSpec tool_spec_from_json(const nlohmann::json& j) {
  ToolSpec t;
  t.name = j.at("name").get<std::string>();
  if (t.name.empty()) throw Error("tool name must not be empty");
  t.kind = parse_tool_kind(j.at("kind").get<std::string>());
  t.output_class = parse_output_class(j.value("output_class", std::string("continuous")));
  const auto params = j.value("params", nlohmann::json::object());
  auto& p = t.params;
  p.lexicon = params.value("lexicon", p.lexicon);
  p.valence_scale = params.value("valence_scale", p.valence_scale);
  p.valence_jitter = params.value("valence_jitter", p.valence_jitter);
  p.jitter_seed = params.value("jitter_seed", p.jitter_seed);
  p.negation_factor = params.value("negation_factor", p.negation_factor);
  p.alpha = params.value("alpha", p.alpha);
  p.negation_window = params.value("negation_window", p.negation_window);
  p.use_negation = params.value("use_negation", p.use_negation);
  p.use_boosters = params.value("use_boosters", p.use_boosters);
  if (t.kind == ToolKind::synthetic) {
    if (!params.contains("distribution")) throw Error("synthetic tool '" + t.name + "' needs params.distribution");
    p.distribution = distribution_from_json(params.at("distribution"));
    p.distribution.validate();
  }
  if (!(p.alpha > 0.0)) throw Error("tool '" + t.name + "': alpha must be positive");
  return t;
}

inline std::vector<ToolSpec> tool_specs_from_json(const nlohmann::json& j) {
  const auto& arr = j.is_object() && j.contains("tools") ? j.at("tools") : j;
  std::vector<ToolSpec> out;
  for (const auto& e : arr) out.push_back(tool_spec_from_json(e));
  return out;
}

inline std::filesystem::path manifest_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".manifest.json");
  return p;
}

inline std::string score_table_csv(const ScoreTable& t) {
  std::string out;
  csv::Row header{"doc_id"};
  header.insert(header.end(), t.tools.begin(), t.tools.end());
  out += csv::format_row(header);
  for (std::size_t j = 0; j < t.n_docs(); ++j) {
    csv::Row row{t.doc_ids[j]};
    for (std::size_t i = 0; i < t.n_tools(); ++i) row.push_back(csv::format_double(t.at(i, j)));
    out += csv::format_row(row);
  }
  return out;
}

inline nlohmann::json score_table_manifest(const ScoreTable& t) {
  nlohmann::json tools = nlohmann::json::array();
  for (const auto& s : t.tool_specs) tools.push_back(to_json(s));
  return {{"mode", to_string(t.mode)}, {"tools", tools}, {"corpus_name", t.corpus_name}, {"seed", t.seed}};
}

inline void save_score_table(const ScoreTable& t, const std::filesystem::path& csv_path) {
  csv::write_file(csv_path.string(), score_table_csv(t));
  csv::write_file(manifest_path(csv_path).string(), score_table_manifest(t).dump(2) + "\n");
}

inline ScoreTable parse_score_table(std::string_view csv_text, const nlohmann::json* manifest = nullptr) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty() || rows[0].empty() || rows[0][0] != "doc_id") throw Error("score csv: missing doc_id header");
  ScoreTable t;
  t.tools.assign(rows[0].begin() + 1, rows[0].end());
  const std::size_t n_docs = rows.size() - 1;
  t.scores.assign(t.tools.size() * n_docs, 0.0);
  for (std::size_t j = 0; j < n_docs; ++j) {
    const auto& r = rows[j + 1];
    if (r.size() != t.tools.size() + 1) throw Error("score csv: row " + std::to_string(j + 2) + " has wrong width");
    t.doc_ids.push_back(r[0]);
    for (std::size_t i = 0; i < t.tools.size(); ++i) t.scores[i * n_docs + j] = csv::parse_double(r[i + 1]);
  }
  if (manifest) {
    t.mode = parse_score_mode(manifest->at("mode").get<std::string>());
    t.corpus_name = manifest->value("corpus_name", "");
    t.seed = manifest->value("seed", std::uint64_t{0});
    for (const auto& s : manifest->at("tools")) t.tool_specs.push_back(tool_spec_from_json(s));
  }
  t.validate();
  return t;
}

/// Loads a score CSV plus its sidecar manifest when one exists.
inline ScoreTable load_score_table(const std::filesystem::path& csv_path) {
  const auto text = csv::read_file(csv_path.string());
  const auto mpath = manifest_path(csv_path);
  if (std::filesystem::exists(mpath)) {
    const auto manifest = nlohmann::json::parse(csv::read_file(mpath.string()));
    return parse_score_table(text, &manifest);
  }
  return parse_score_table(text);
}

}  // namespace toolprint
