#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "toolprint/error.hpp"
#include "toolprint/lexicon.hpp"
#include "toolprint/rng.hpp"

namespace toolprint {

struct Document {
  std::string id;
  std::string lang;
  std::string genre;
  std::string text;
  std::optional<std::vector<std::string>> sentences;
  /// Only set for synthetic documents; never read by scorers.
  std::optional<double> latent_sentiment;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::string name;
  std::set<std::string> group_tags;  // subset of {C1, C2, C3, C4}
  std::vector<Document> documents;

  void validate() const {
    if (documents.empty()) throw Error("empty corpus");
    if (group_tags.empty()) throw Error("corpus '" + name + "' has no group tags");
    for (const auto& t : group_tags)
      if (t != "C1" && t != "C2" && t != "C3" && t != "C4")
        throw Error("corpus '" + name + "': unknown group tag " + t);
    std::unordered_set<std::string> seen;
    for (const auto& d : documents) {
      if (d.id.empty()) throw Error("corpus '" + name + "': empty document id");
      if (!seen.insert(d.id).second) throw Error("duplicate id " + d.id);
    }
  }

  bool operator==(const Corpus&) const = default;
};

/// Splits after '.', '!' or '?' when followed by whitespace. Segments are
/// trimmed and empty ones dropped; the trailing fragment is kept. Returns
/// {text} when nothing survives.
inline std::vector<std::string> split_sentences(std::string_view text) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  auto trimmed = [&](std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
  };
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') && i + 1 < text.size() && is_space(text[i + 1])) {
      auto seg = trimmed(text.substr(start, i + 1 - start));
      if (!seg.empty()) out.emplace_back(seg);
      start = i + 1;
    }
  }
  auto tail = trimmed(text.substr(std::min(start, text.size())));
  if (!tail.empty()) out.emplace_back(tail);
  if (out.empty()) out.emplace_back(text);
  return out;
}

/// The document's sentences, derived with split_sentences when unset.
inline std::vector<std::string> sentences_of(const Document& doc) {
  return doc.sentences ? *doc.sentences : split_sentences(doc.text);
}

inline nlohmann::json to_json(const Document& d) {
  nlohmann::json j = {{"id", d.id}, {"lang", d.lang}, {"genre", d.genre}, {"text", d.text}};
  if (d.sentences) j["sentences"] = *d.sentences;
  if (d.latent_sentiment) j["meta"] = {{"latent_sentiment", *d.latent_sentiment}};
  return j;
}

inline Document document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("expected a JSON object");
  if (!j.contains("id") || !j["id"].is_string()) throw Error("missing string field 'id'");
  if (!j.contains("text") || !j["text"].is_string()) throw Error("missing string field 'text'");
  Document d;
  d.id = j["id"].get<std::string>();
  d.text = j["text"].get<std::string>();
  d.lang = j.value("lang", "");
  d.genre = j.value("genre", "");
  if (j.contains("sentences") && !j["sentences"].is_null())
    d.sentences = j["sentences"].get<std::vector<std::string>>();
  if (j.contains("meta") && j["meta"].contains("latent_sentiment"))
    d.latent_sentiment = j["meta"]["latent_sentiment"].get<double>();
  return d;
}

/// Reads a JSONL corpus (one document object per line, blank lines ignored).
inline Corpus load_corpus(const std::filesystem::path& path, std::set<std::string> group_tags = {"C3"},
                          std::string name = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus " + path.string());
  Corpus corpus;
  corpus.name = name.empty() ? path.stem().string() : std::move(name);
  corpus.group_tags = std::move(group_tags);
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    Document doc;
    try {
      doc = document_from_json(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      throw Error("malformed line " + std::to_string(lineno) + ": " + e.what());
    }
    if (doc.id.empty()) throw Error("malformed line " + std::to_string(lineno) + ": empty id");
    if (!seen.insert(doc.id).second)
      throw Error("duplicate id " + doc.id + " at line " + std::to_string(lineno));
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw Error("empty corpus");
  corpus.validate();
  return corpus;
}

inline std::string to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& d : corpus.documents) {
    out += to_json(d).dump();
    out += '\n';
  }
  return out;
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write corpus " + path.string());
  out << to_jsonl(corpus);
}

// ---------------------------------------------------------------------------
// Synthetic corpora

struct LatentDistribution {
  enum class Kind { uniform, normal, fixed };
  Kind kind = Kind::uniform;
  double a = -1.0;  // uniform: lo | normal: mean | fixed: value
  double b = 1.0;   // uniform: hi | normal: std

  double draw(Rng& rng) const {
    double v = 0.0;
    switch (kind) {
      case Kind::uniform: v = rng.uniform(a, b); break;
      case Kind::normal: v = rng.normal(a, b); break;
      case Kind::fixed: v = a; break;
    }
    return std::clamp(v, -1.0, 1.0);
  }
};

struct SynthCorpusSpec {
  std::string name = "synthetic";
  std::set<std::string> group_tags = {"C3"};
  std::size_t n_docs = 100;
  std::string lang = "en";
  std::string genre = "synthetic";
  std::string id_prefix = "doc";
  std::size_t min_sentences = 1;
  std::size_t max_sentences = 4;
  std::size_t min_tokens = 4;
  std::size_t max_tokens = 14;
  double sentiment_rate = 0.25;  // per-token probability of a lexicon token
  double negator_rate = 0.08;    // probability a sentiment token is preceded by a negator
  double booster_rate = 0.10;    // probability a sentiment token is preceded by a booster
  LatentDistribution latent;
};

namespace detail {

struct LexiconPools {
  std::vector<std::string> positive, negative, negators, boosters, filler;
};

inline LexiconPools make_pools(const Lexicon& lex) {
  LexiconPools p;
  for (const auto& [tok, v] : lex.entries) {
    if (v > 0) p.positive.push_back(tok);
    else if (v < 0) p.negative.push_back(tok);
  }
  for (const auto& t : lex.negators) p.negators.push_back(t);
  for (const auto& [t, inc] : lex.boosters) p.boosters.push_back(t);
  for (auto f : lexicon_data::kFiller) p.filler.emplace_back(f);
  // Hash containers have unspecified order; sort for determinism.
  for (auto* v : {&p.positive, &p.negative, &p.negators, &p.boosters, &p.filler}) std::sort(v->begin(), v->end());
  return p;
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

}  // namespace detail

/// Pure function of (spec, seed): document i draws from its own stream.
inline Corpus generate_synthetic_corpus(const SynthCorpusSpec& spec, std::uint64_t seed,
                                        const Lexicon& lexicon = demo_lexicon()) {
  if (spec.n_docs == 0) throw Error("synthetic corpus: n_docs must be >= 1");
  if (spec.min_sentences == 0 || spec.min_sentences > spec.max_sentences)
    throw Error("synthetic corpus: bad sentence range");
  if (spec.min_tokens == 0 || spec.min_tokens > spec.max_tokens)
    throw Error("synthetic corpus: bad token range");
  const auto pools = detail::make_pools(lexicon);
  if (pools.positive.empty() || pools.negative.empty()) throw Error("synthetic corpus: lexicon lacks a polarity");

  Corpus corpus;
  corpus.name = spec.name;
  corpus.group_tags = spec.group_tags;
  corpus.documents.reserve(spec.n_docs);
  static constexpr char kEnders[] = {'.', '.', '.', '!', '?'};

  for (std::size_t i = 0; i < spec.n_docs; ++i) {
    Rng rng(derive_seed(seed, i));
    Document doc;
    doc.id = spec.id_prefix + std::to_string(i);
    doc.lang = spec.lang;
    doc.genre = spec.genre;
    const double latent = spec.latent.draw(rng);
    doc.latent_sentiment = latent;
    const double p_positive = (1.0 + latent) / 2.0;

    auto sentiment_token = [&] {
      return rng.uniform() < p_positive ? detail::pick(pools.positive, rng) : detail::pick(pools.negative, rng);
    };

    const auto n_sent = spec.min_sentences + rng.below(spec.max_sentences - spec.min_sentences + 1);
    std::vector<std::vector<std::string>> sentences(n_sent);
    bool any_sentiment = false;
    for (auto& words : sentences) {
      const auto n_tok = spec.min_tokens + rng.below(spec.max_tokens - spec.min_tokens + 1);
      while (words.size() < n_tok) {
        if (rng.uniform() < spec.sentiment_rate) {
          if (!pools.negators.empty() && rng.uniform() < spec.negator_rate) words.push_back(detail::pick(pools.negators, rng));
          if (!pools.boosters.empty() && rng.uniform() < spec.booster_rate) words.push_back(detail::pick(pools.boosters, rng));
          words.push_back(sentiment_token());
          any_sentiment = true;
        } else {
          words.push_back(detail::pick(pools.filler, rng));
        }
      }
    }
    if (!any_sentiment) sentences.front().back() = sentiment_token();

    std::vector<std::string> rendered;
    for (auto& words : sentences) {
      std::string s;
      for (std::size_t w = 0; w < words.size(); ++w) {
        if (w) s += ' ';
        s += words[w];
      }
      s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
      s += kEnders[rng.below(std::size(kEnders))];
      rendered.push_back(std::move(s));
    }
    for (std::size_t s = 0; s < rendered.size(); ++s) {
      if (s) doc.text += ' ';
      doc.text += rendered[s];
    }
    doc.sentences = std::move(rendered);
    corpus.documents.push_back(std::move(doc));
  }
  corpus.validate();
  return corpus;
}

}  // namespace toolprint
