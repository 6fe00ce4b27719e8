#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "toolprint/error.hpp"
#include "toolprint/lexicon_data.hpp"

namespace toolprint {

struct Lexicon {
  std::unordered_map<std::string, double> entries;  // token -> valence in [-1, +1]
  std::unordered_set<std::string> negators;
  std::unordered_map<std::string, double> boosters;  // token -> increment in (0, 1)

  void validate() const {
    for (const auto& [tok, v] : entries)
      if (!(v >= -1.0 && v <= 1.0)) throw Error("lexicon: valence of '" + tok + "' outside [-1, 1]");
    for (const auto& [tok, inc] : boosters)
      if (!(inc > 0.0 && inc < 1.0)) throw Error("lexicon: booster '" + tok + "' increment outside (0, 1)");
  }

  const double* valence(std::string_view token) const {
    auto it = entries.find(std::string(token));
    return it == entries.end() ? nullptr : &it->second;
  }
  bool is_negator(std::string_view token) const { return negators.contains(std::string(token)); }
  double booster(std::string_view token) const {
    auto it = boosters.find(std::string(token));
    return it == boosters.end() ? 0.0 : it->second;
  }
};

/// The lexicon shipped with the library (~200 entries per polarity).
inline const Lexicon& demo_lexicon() {
  static const Lexicon lex = [] {
    Lexicon l;
    for (const auto& [tok, v] : lexicon_data::kValences) l.entries.emplace(tok, v);
    for (auto tok : lexicon_data::kNegators) l.negators.emplace(tok);
    for (const auto& [tok, inc] : lexicon_data::kBoosters) l.boosters.emplace(tok, inc);
    l.validate();
    return l;
  }();
  return lex;
}

/// Lowercased ASCII word tokens. Apostrophes are dropped so "don't" -> "dont";
/// every other non-alphanumeric byte separates tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c >= 0x80) {
      cur += static_cast<char>(std::tolower(c));
    } else if (c == '\'') {
      continue;
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace toolprint
