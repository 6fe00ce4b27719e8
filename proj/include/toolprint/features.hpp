#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"
#include "toolprint/normalize.hpp"
#include "toolprint/rng.hpp"
#include "toolprint/scorers.hpp"

namespace toolprint {

inline constexpr std::size_t kMomentCount = 13;
inline constexpr std::size_t kMonteCarloFeatureCount = 15;

/// Frozen feature order; trained models refer to features by these names.
inline constexpr std::array<std::string_view, kMonteCarloFeatureCount> kFeatureNames{
    "mean", "std", "var", "median", "min", "max", "p5", "p10",
    "p25", "p50", "p75", "p90", "p95", "entropy_hist", "entropy_value"};

inline std::vector<std::string> moment_feature_names(std::size_t count = kMomentCount) {
  return {kFeatureNames.begin(), kFeatureNames.begin() + static_cast<std::ptrdiff_t>(count)};
}

struct Chunk {
  std::vector<std::size_t> doc_indices;
  bool with_replacement = false;
  std::size_t size() const { return doc_indices.size(); }
};

struct MomentVector {
  double mean = 0, std = 0, var = 0, median = 0, min = 0, max = 0;
  double p5 = 0, p10 = 0, p25 = 0, p50 = 0, p75 = 0, p90 = 0, p95 = 0;
  std::optional<double> entropy_hist, entropy_value;

  std::array<double, kMomentCount> moments() const {
    return {mean, std, var, median, min, max, p5, p10, p25, p50, p75, p90, p95};
  }

  /// 13 moments, followed by the two entropies when present.
  std::vector<double> values() const {
    const auto m = moments();
    std::vector<double> v(m.begin(), m.end());
    if (entropy_hist && entropy_value) {
      v.push_back(*entropy_hist);
      v.push_back(*entropy_value);
    }
    return v;
  }
};

/// Linear interpolation at rank (p / 100) * (n - 1) over sorted values.
inline double percentile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error("percentile of empty input");
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double a = sorted[lo], b = sorted[lo + 1];
  const double t = pos - static_cast<double>(lo);
  return std::clamp(a + (b - a) * t, a, b);
}

inline MomentVector compute_moments(std::span<const double> values) {
  if (values.empty()) throw Error("compute_moments: empty input");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());

  MomentVector m;
  double sum = 0.0;
  for (double v : s) sum += v;
  m.mean = sum / n;
  double ss = 0.0;
  for (double v : s) ss += (v - m.mean) * (v - m.mean);
  m.var = ss / n;
  m.std = std::sqrt(m.var);
  m.min = s.front();
  m.max = s.back();
  m.p5 = percentile_sorted(s, 5);
  m.p10 = percentile_sorted(s, 10);
  m.p25 = percentile_sorted(s, 25);
  m.p50 = percentile_sorted(s, 50);
  m.p75 = percentile_sorted(s, 75);
  m.p90 = percentile_sorted(s, 90);
  m.p95 = percentile_sorted(s, 95);
  m.median = m.p50;
  return m;
}

enum class EntropyVariant { hist, value };

/// Shannon entropy (nats). `hist`: 10 equal-width bins on [-1, 1];
/// `value`: empirical distribution over distinct values.
inline double compute_entropy(std::span<const double> values, EntropyVariant variant) {
  if (values.empty()) throw Error("compute_entropy: empty input");
  const double n = static_cast<double>(values.size());
  auto term = [n](std::size_t count) {
    const double p = static_cast<double>(count) / n;
    return count ? -p * std::log(p) : 0.0;
  };
  double h = 0.0;
  if (variant == EntropyVariant::hist) {
    std::array<std::size_t, 10> bins{};
    for (double v : values) {
      const double pos = std::floor((v + 1.0) / 0.2);
      ++bins[static_cast<std::size_t>(std::clamp(pos, 0.0, 9.0))];
    }
    for (auto c : bins) h += term(c);
  } else {
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size();) {
      std::size_t j = i;
      while (j < s.size() && s[j] == s[i]) ++j;
      h += term(j - i);
      i = j;
    }
  }
  return h == 0.0 ? 0.0 : h;  // no -0.0
}

inline std::size_t default_chunk_count(std::size_t n_docs, std::size_t chunk_size, std::size_t oversample_factor = 2) {
  if (chunk_size == 0) throw Error("chunk size must be >= 1");
  return n_docs / chunk_size * oversample_factor;
}

/// Chunk c holds chunk_size distinct indices drawn from stream (seed, c).
inline std::vector<Chunk> sample_chunks(std::size_t n_docs, std::size_t chunk_size, std::size_t n_chunks,
                                        std::uint64_t seed) {
  if (chunk_size < 1) throw Error("chunk size must be >= 1");
  if (chunk_size > n_docs)
    throw Error("chunk size " + std::to_string(chunk_size) + " exceeds document count " + std::to_string(n_docs));
  std::vector<Chunk> chunks(n_chunks);
  std::vector<std::size_t> perm(n_docs);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    Rng rng(derive_seed(seed, c));
    for (std::size_t i = 0; i < n_docs; ++i) perm[i] = i;
    for (std::size_t i = 0; i < chunk_size; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n_docs - i));
      std::swap(perm[i], perm[j]);
    }
    chunks[c].doc_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(chunk_size));
  }
  return chunks;
}

namespace detail {

inline std::vector<std::size_t> resolve_tools(const ScoreTable& table, std::span<const std::string> filter) {
  std::vector<std::size_t> rows;
  if (filter.empty()) {
    for (std::size_t i = 0; i < table.n_tools(); ++i) rows.push_back(i);
  } else {
    for (std::size_t i = 0; i < table.n_tools(); ++i)
      if (std::find(filter.begin(), filter.end(), table.tools[i]) != filter.end()) rows.push_back(i);
    for (const auto& name : filter) table.tool_index(name);  // unknown names throw
  }
  if (rows.size() < 2) throw Error("tool filter leaves fewer than 2 tools");
  return rows;
}

}  // namespace detail

/// One sample per (chunk, tool): the 13 moments of that tool's normalized
/// scores on the chunk. An empty filter selects every tool.
inline LabeledDataset build_dataset(const ScoreTable& table, std::span<const Chunk> chunks, Normalization norm,
                                    std::span<const std::string> tool_filter = {}) {
  const auto rows = detail::resolve_tools(table, tool_filter);
  LabeledDataset ds;
  ds.feature_names = moment_feature_names();
  for (auto r : rows) ds.class_names.push_back(table.tools[r]);

  std::vector<std::vector<double>> normalized;
  for (auto r : rows) {
    auto src = table.row(r);
    normalized.push_back(normalize(std::vector<double>(src.begin(), src.end()), norm));
  }
  ds.features.reserve(chunks.size() * rows.size() * kMomentCount);
  std::vector<double> values;
  for (const auto& chunk : chunks) {
    for (std::size_t t = 0; t < rows.size(); ++t) {
      values.clear();
      for (auto idx : chunk.doc_indices) values.push_back(normalized[t].at(idx));
      const auto m = compute_moments(values).moments();
      ds.add(m, static_cast<int>(t));
    }
  }
  return ds;
}

/// Monte Carlo resampling: per tool, m samples of ceil(1% of documents)
/// scores drawn with replacement, each summarized by 13 moments and two
/// entropies, then projected onto `feature_subset_size` features chosen once
/// per dataset.
inline LabeledDataset monte_carlo_dataset(const ScoreTable& table, std::size_t m, std::size_t feature_subset_size,
                                          std::uint64_t seed, Normalization norm = Normalization::raw,
                                          std::span<const std::string> tool_filter = {}) {
  if (feature_subset_size < 1 || feature_subset_size > kMonteCarloFeatureCount)
    throw Error("feature subset size must be in [1, 15], got " + std::to_string(feature_subset_size));
  if (table.n_docs() == 0) throw Error("monte carlo: empty score table");
  const auto rows = detail::resolve_tools(table, tool_filter);
  const auto draw = static_cast<std::size_t>(std::ceil(0.01 * static_cast<double>(table.n_docs())));

  std::vector<std::size_t> chosen(kMonteCarloFeatureCount);
  for (std::size_t k = 0; k < chosen.size(); ++k) chosen[k] = k;
  {
    Rng rng(derive_seed(seed, "feature-subset"));
    for (std::size_t i = 0; i < feature_subset_size; ++i)
      std::swap(chosen[i], chosen[i + static_cast<std::size_t>(rng.below(chosen.size() - i))]);
    chosen.resize(feature_subset_size);
    std::sort(chosen.begin(), chosen.end());
  }

  LabeledDataset ds;
  for (auto k : chosen) ds.feature_names.emplace_back(kFeatureNames[k]);
  for (auto r : rows) ds.class_names.push_back(table.tools[r]);
  std::vector<double> values(draw), projected(chosen.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto src = table.row(rows[t]);
    for (std::size_t s = 0; s < m; ++s) {
      Rng rng(derive_seed(seed, t, s));
      for (auto& v : values) v = normalize(src[static_cast<std::size_t>(rng.below(src.size()))], norm);
      auto mv = compute_moments(values);
      mv.entropy_hist = compute_entropy(values, EntropyVariant::hist);
      mv.entropy_value = compute_entropy(values, EntropyVariant::value);
      const auto full = mv.values();
      for (std::size_t k = 0; k < chosen.size(); ++k) projected[k] = full[chosen[k]];
      ds.add(projected, static_cast<int>(t));
    }
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Feature scaling

struct ScalerParams {
  std::vector<double> mean;
  std::vector<double> std;

  LabeledDataset apply(const LabeledDataset& d) const {
    if (d.dim() != mean.size()) throw Error("scaler: feature width mismatch");
    LabeledDataset out = d;
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto r = out.row(i);
      for (std::size_t k = 0; k < r.size(); ++k) r[k] = std[k] < 1e-12 ? 0.0 : (r[k] - mean[k]) / std[k];
    }
    return out;
  }

  void apply_inplace(std::span<double> x) const {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std[k] < 1e-12 ? 0.0 : (x[k] - mean[k]) / std[k];
  }
};

inline ScalerParams fit_scaler(const LabeledDataset& d) {
  if (d.size() < 2) throw Error("scaler needs at least 2 samples");
  ScalerParams p;
  p.mean.assign(d.dim(), 0.0);
  p.std.assign(d.dim(), 0.0);
  const double n = static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < d.dim(); ++k) p.mean[k] += d.row(i)[k];
  for (auto& m : p.mean) m /= n;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < d.dim(); ++k) {
      const double dev = d.row(i)[k] - p.mean[k];
      p.std[k] += dev * dev;
    }
  for (auto& s : p.std) s = std::sqrt(s / n);
  return p;
}

/// Per-feature standardization; returns the scaled set and the parameters
/// to reuse on dev/test data.
inline std::pair<LabeledDataset, ScalerParams> standard_scale(const LabeledDataset& d) {
  auto p = fit_scaler(d);
  return {p.apply(d), std::move(p)};
}

inline nlohmann::json to_json(const ScalerParams& p) { return {{"mean", p.mean}, {"std", p.std}}; }
inline ScalerParams scaler_from_json(const nlohmann::json& j) {
  return {j.at("mean").get<std::vector<double>>(), j.at("std").get<std::vector<double>>()};
}

}  // namespace toolprint
