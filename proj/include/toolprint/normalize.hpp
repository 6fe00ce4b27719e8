#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "toolprint/error.hpp"

namespace toolprint {

enum class Normalization { raw, N1, N3, N5, N10 };

inline std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::raw: return "raw";
    case Normalization::N1: return "N1";
    case Normalization::N3: return "N3";
    case Normalization::N5: return "N5";
    case Normalization::N10: return "N10";
  }
  return "?";
}

inline Normalization parse_normalization(std::string_view s) {
  if (s == "raw") return Normalization::raw;
  if (s == "N1") return Normalization::N1;
  if (s == "N3") return Normalization::N3;
  if (s == "N5") return Normalization::N5;
  if (s == "N10") return Normalization::N10;
  throw Error("unknown normalization '" + std::string(s) + "'");
}

/// positive (>= 0.5), negative (<= -0.5), neutral otherwise.
inline double normalize_n1(double score) {
  if (score >= 0.5) return 1.0;
  if (score <= -0.5) return -1.0;
  return 0.0;
}

/// (-inf, -0.333] -> -1, (-0.333, 0.333) -> 0, [0.333, inf) -> +1.
inline double normalize_n3(double score) {
  if (score <= -0.333) return -1.0;
  if (score >= 0.333) return 1.0;
  return 0.0;
}

/// Midpoint of the bin containing score when [-1, 1] is cut into `bins`
/// half-open intervals of width 2/bins (the last one closed at +1).
inline double normalize_equal_bins(double score, int bins) {
  if (bins != 5 && bins != 10) throw Error("equal-bin normalization supports 5 or 10 bins");
  const double pos = std::floor((score + 1.0) * bins / 2.0);
  const int idx = static_cast<int>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
  return static_cast<double>(2 * idx + 1 - bins) / bins;
}

inline double normalize(double score, Normalization scheme) {
  switch (scheme) {
    case Normalization::raw: return score;
    case Normalization::N1: return normalize_n1(score);
    case Normalization::N3: return normalize_n3(score);
    case Normalization::N5: return normalize_equal_bins(score, 5);
    case Normalization::N10: return normalize_equal_bins(score, 10);
  }
  return score;
}

inline std::vector<double> normalize(std::vector<double> values, Normalization scheme) {
  for (auto& v : values) v = normalize(v, scheme);
  return values;
}

}  // namespace toolprint
