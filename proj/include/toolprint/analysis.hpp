#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "toolprint/csv.hpp"
#include "toolprint/error.hpp"
#include "toolprint/features.hpp"
#include "toolprint/normalize.hpp"
#include "toolprint/scorers.hpp"

namespace toolprint {

// ---------------------------------------------------------------------------
// Distance correlation

namespace detail {

/// Pairwise |x_i - x_j| summarized by row means and grand mean, so the
/// double-centred matrix can be streamed without O(n^2) memory.
struct DistanceProfile {
  std::span<const double> x;
  std::vector<double> row_mean;
  double grand_mean = 0.0;
  bool constant = true;

  explicit DistanceProfile(std::span<const double> values) : x(values), row_mean(values.size(), 0.0) {
    const std::size_t n = values.size();
    for (std::size_t i = 1; i < n; ++i)
      if (values[i] != values[0]) constant = false;
    // Row sums of |x_i - x_j| from the sorted order in O(n log n).
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    double total = 0.0;
    for (double v : values) total += v;
    double prefix = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double v = values[order[r]];
      const double below = static_cast<double>(r) * v - prefix;
      const double above = (total - prefix - v) - static_cast<double>(n - r - 1) * v;
      row_mean[order[r]] = (below + above) / static_cast<double>(n);
      prefix += v;
    }
    for (double m : row_mean) grand_mean += m;
    grand_mean /= static_cast<double>(n);
  }

  double centered(std::size_t i, std::size_t j) const {
    return std::abs(x[i] - x[j]) - row_mean[i] - row_mean[j] + grand_mean;
  }
};

/// (1/n^2) sum A_ij B_ij.
inline double dcov2(const DistanceProfile& a, const DistanceProfile& b) {
  const std::size_t n = a.x.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += a.centered(i, j) * b.centered(i, j);
    sum += row;
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n));
}

inline double dcor_from(const DistanceProfile& a, const DistanceProfile& b, double var_a, double var_b) {
  if (a.constant || b.constant) return 0.0;
  const double cov = std::max(0.0, dcov2(a, b));
  const double denom = std::sqrt(var_a * var_b);
  if (!(denom > 0.0)) return 0.0;
  return std::clamp(std::sqrt(cov / denom), 0.0, 1.0);
}

}  // namespace detail

/// Sample distance correlation in [0, 1]; 0 when either input is constant.
inline double distance_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("distance correlation: length mismatch");
  if (x.size() < 2) throw Error("distance correlation needs at least 2 observations");
  const detail::DistanceProfile a(x), b(y);
  if (a.constant || b.constant) return 0.0;
  return detail::dcor_from(a, b, std::max(0.0, detail::dcov2(a, a)), std::max(0.0, detail::dcov2(b, b)));
}

struct DcorMatrix {
  std::vector<std::string> tools;
  std::vector<std::vector<double>> values;
};

inline DcorMatrix dcor_matrix(const ScoreTable& table) {
  if (table.n_tools() < 2) throw Error("dcor matrix needs at least 2 tools");
  if (table.n_docs() < 2) throw Error("dcor matrix needs at least 2 documents");
  const std::size_t k = table.n_tools();
  std::vector<detail::DistanceProfile> profiles;
  std::vector<double> self;
  for (std::size_t i = 0; i < k; ++i) {
    profiles.emplace_back(table.row(i));
    self.push_back(std::max(0.0, detail::dcov2(profiles.back(), profiles.back())));
  }
  DcorMatrix m;
  m.tools = table.tools;
  m.values.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    m.values[i][i] = profiles[i].constant ? 0.0 : 1.0;
    for (std::size_t j = i + 1; j < k; ++j)
      m.values[i][j] = m.values[j][i] = detail::dcor_from(profiles[i], profiles[j], self[i], self[j]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Majority-vote agreement

struct AgreementReport {
  Normalization scheme = Normalization::raw;
  std::vector<std::string> tools;
  std::vector<double> rates;
  std::size_t n_documents = 0;  // documents counted in the denominator
  std::size_t n_ties = 0;       // documents whose modal value was tied
  bool exclude_ties = false;
};

/// Per-document vote = most frequent normalized value; tied modes resolve
/// to the value closest to zero, then the smaller one.
inline AgreementReport majority_agreement(const ScoreTable& table, Normalization norm, bool exclude_ties = false) {
  if (table.n_tools() < 3) throw Error("majority vote needs at least 3 tools");
  AgreementReport r;
  r.scheme = norm;
  r.tools = table.tools;
  r.exclude_ties = exclude_ties;
  std::vector<std::size_t> agree(table.n_tools(), 0);
  std::vector<double> vals(table.n_tools());
  std::map<double, std::size_t> freq;
  for (std::size_t d = 0; d < table.n_docs(); ++d) {
    freq.clear();
    for (std::size_t t = 0; t < table.n_tools(); ++t) {
      vals[t] = normalize(table.at(t, d), norm);
      ++freq[vals[t]];
    }
    std::size_t top = 0;
    for (const auto& [v, c] : freq) top = std::max(top, c);
    bool have = false, tie = false;
    double vote = 0.0;
    for (const auto& [v, c] : freq) {  // ascending values
      if (c != top) continue;
      if (!have) {
        vote = v;
        have = true;
      } else {
        tie = true;
        if (std::abs(v) < std::abs(vote)) vote = v;
      }
    }
    if (tie) ++r.n_ties;
    if (tie && exclude_ties) continue;
    ++r.n_documents;
    for (std::size_t t = 0; t < table.n_tools(); ++t)
      if (vals[t] == vote) ++agree[t];
  }
  for (auto a : agree) r.rates.push_back(r.n_documents ? static_cast<double>(a) / static_cast<double>(r.n_documents) : 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// Descriptive statistics

struct BoxplotStats {
  std::string tool;
  std::size_t n = 0;
  double mean = 0, std = 0, median = 0, q1 = 0, q3 = 0;
  double whisker_low = 0, whisker_high = 0;  // most extreme values within 1.5 IQR of the quartiles
  double min = 0, max = 0;
  std::size_t outliers = 0;
};

inline BoxplotStats boxplot_stats(std::span<const double> values, std::string tool = {}) {
  if (values.empty()) throw Error("describe: empty row");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  const auto m = compute_moments(values);
  BoxplotStats b;
  b.tool = std::move(tool);
  b.n = s.size();
  b.mean = m.mean;
  b.std = m.std;
  b.median = m.median;
  b.q1 = m.p25;
  b.q3 = m.p75;
  b.min = m.min;
  b.max = m.max;
  const double iqr = b.q3 - b.q1;
  const double lo = b.q1 - 1.5 * iqr, hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  bool low_set = false;
  for (double v : s) {
    if (v < lo || v > hi) {
      ++b.outliers;
      continue;
    }
    if (!low_set) {
      b.whisker_low = std::min(v, b.q1);
      low_set = true;
    }
    b.whisker_high = std::max(v, b.q3);
  }
  return b;
}

inline std::vector<BoxplotStats> describe(const ScoreTable& table) {
  std::vector<BoxplotStats> out;
  for (std::size_t t = 0; t < table.n_tools(); ++t) out.push_back(boxplot_stats(table.row(t), table.tools[t]));
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string dcor_csv(const DcorMatrix& m) {
  csv::Row header{"tool"};
  header.insert(header.end(), m.tools.begin(), m.tools.end());
  std::string out = csv::format_row(header);
  for (std::size_t i = 0; i < m.tools.size(); ++i) {
    csv::Row r{m.tools[i]};
    for (double v : m.values[i]) r.push_back(csv::format_double(v));
    out += csv::format_row(r);
  }
  return out;
}

inline nlohmann::json to_json(const DcorMatrix& m) { return {{"tools", m.tools}, {"values", m.values}}; }
inline DcorMatrix dcor_from_json(const nlohmann::json& j) {
  return {j.at("tools").get<std::vector<std::string>>(), j.at("values").get<std::vector<std::vector<double>>>()};
}

inline nlohmann::json to_json(const AgreementReport& r) {
  return {{"normalization", to_string(r.scheme)}, {"tools", r.tools}, {"rates", r.rates},
          {"n_documents", r.n_documents}, {"n_ties", r.n_ties}, {"exclude_ties", r.exclude_ties}};
}
inline AgreementReport agreement_from_json(const nlohmann::json& j) {
  AgreementReport r;
  r.scheme = parse_normalization(j.at("normalization").get<std::string>());
  r.tools = j.at("tools").get<std::vector<std::string>>();
  r.rates = j.at("rates").get<std::vector<double>>();
  r.n_documents = j.at("n_documents").get<std::size_t>();
  r.n_ties = j.value("n_ties", std::size_t{0});
  r.exclude_ties = j.value("exclude_ties", false);
  return r;
}

inline nlohmann::json to_json(const BoxplotStats& b) {
  return {{"tool", b.tool}, {"n", b.n}, {"mean", b.mean}, {"std", b.std}, {"median", b.median},
          {"q1", b.q1}, {"q3", b.q3}, {"whisker_low", b.whisker_low}, {"whisker_high", b.whisker_high},
          {"min", b.min}, {"max", b.max}, {"outliers", b.outliers}};
}
inline BoxplotStats boxplot_from_json(const nlohmann::json& j) {
  BoxplotStats b;
  b.tool = j.at("tool").get<std::string>();
  b.n = j.at("n").get<std::size_t>();
  b.mean = j.at("mean").get<double>();
  b.std = j.at("std").get<double>();
  b.median = j.at("median").get<double>();
  b.q1 = j.at("q1").get<double>();
  b.q3 = j.at("q3").get<double>();
  b.whisker_low = j.at("whisker_low").get<double>();
  b.whisker_high = j.at("whisker_high").get<double>();
  b.min = j.at("min").get<double>();
  b.max = j.at("max").get<double>();
  b.outliers = j.at("outliers").get<std::size_t>();
  return b;
}

inline std::string describe_csv(const std::vector<BoxplotStats>& stats) {
  std::string out = csv::format_row({"tool", "n", "mean", "std", "median", "q1", "q3", "whisker_low",
                                     "whisker_high", "min", "max", "outliers"});
  for (const auto& b : stats)
    out += csv::format_row({b.tool, std::to_string(b.n), csv::format_double(b.mean), csv::format_double(b.std),
                            csv::format_double(b.median), csv::format_double(b.q1), csv::format_double(b.q3),
                            csv::format_double(b.whisker_low), csv::format_double(b.whisker_high),
                            csv::format_double(b.min), csv::format_double(b.max), std::to_string(b.outliers)});
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace svg {

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v, const char* fmt = "%.2f") {
  char buf[32];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

/// Heatmap with a white -> dark green ramp and the value printed per cell.
inline std::string heatmap(const DcorMatrix& m, std::string_view title) {
  const int cell = 48, margin = 140, k = static_cast<int>(m.tools.size());
  const int size = margin + k * cell + 20;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size) + "\" height=\"" +
         std::to_string(size) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<text x=\"10\" y=\"20\" font-size=\"14\">" + escape(title) + "</text>\n";
  for (int i = 0; i < k; ++i) {
    const auto name = escape(m.tools[static_cast<std::size_t>(i)]);
    out += "<text x=\"" + std::to_string(margin - 6) + "\" y=\"" + std::to_string(margin + i * cell + cell / 2 + 4) +
           "\" text-anchor=\"end\">" + name + "</text>\n";
    const int cx = margin + i * cell + cell / 2, cy = margin - 6;
    out += "<text x=\"" + std::to_string(cx) + "\" y=\"" + std::to_string(cy) + "\" transform=\"rotate(-45 " +
           std::to_string(cx) + " " + std::to_string(cy) + ")\">" + name + "</text>\n";
    for (int j = 0; j < k; ++j) {
      const double v = std::clamp(m.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 0.0, 1.0);
      const int r = static_cast<int>(std::lround(255 - v * (255 - 0)));
      const int g = static_cast<int>(std::lround(255 - v * (255 - 100)));
      const int b = static_cast<int>(std::lround(255 - v * (255 - 0)));
      const int x = margin + j * cell, y = margin + i * cell;
      out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(cell) +
             "\" height=\"" + std::to_string(cell) + "\" fill=\"rgb(" + std::to_string(r) + "," + std::to_string(g) +
             "," + std::to_string(b) + ")\" stroke=\"#999\"/>\n";
      out += "<text x=\"" + std::to_string(x + cell / 2) + "\" y=\"" + std::to_string(y + cell / 2 + 4) +
             "\" text-anchor=\"middle\" fill=\"" + (v > 0.6 ? "#fff" : "#000") + "\">" + num(v) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

/// Horizontal box-and-whisker chart over the [-1, 1] score range.
inline std::string boxplot(const std::vector<BoxplotStats>& stats, std::string_view title) {
  const int row_h = 36, margin_l = 160, width = 600, top = 40;
  const int height = top + static_cast<int>(stats.size()) * row_h + 40;
  auto sx = [&](double v) { return num(margin_l + (std::clamp(v, -1.0, 1.0) + 1.0) / 2.0 * (width - margin_l - 20), "%.1f"); };
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<text x=\"10\" y=\"20\" font-size=\"14\">" + escape(title) + "</text>\n";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& b = stats[i];
    const int y = top + static_cast<int>(i) * row_h;
    const std::string mid = std::to_string(y + row_h / 2);
    out += "<text x=\"" + std::to_string(margin_l - 8) + "\" y=\"" + std::to_string(y + row_h / 2 + 4) +
           "\" text-anchor=\"end\">" + escape(b.tool) + "</text>\n";
    out += "<line x1=\"" + sx(b.whisker_low) + "\" y1=\"" + mid + "\" x2=\"" + sx(b.whisker_high) + "\" y2=\"" + mid +
           "\" stroke=\"#333\"/>\n";
    out += "<rect x=\"" + sx(b.q1) + "\" y=\"" + std::to_string(y + 8) + "\" width=\"" +
           num((b.q3 - b.q1) / 2.0 * (width - margin_l - 20), "%.1f") + "\" height=\"" + std::to_string(row_h - 16) +
           "\" fill=\"#cde\" stroke=\"#333\"/>\n";
    out += "<line x1=\"" + sx(b.median) + "\" y1=\"" + std::to_string(y + 8) + "\" x2=\"" + sx(b.median) + "\" y2=\"" +
           std::to_string(y + row_h - 8) + "\" stroke=\"#c00\" stroke-width=\"2\"/>\n";
    out += "<circle cx=\"" + sx(b.mean) + "\" cy=\"" + mid + "\" r=\"3\" fill=\"#060\"/>\n";
  }
  const std::string axis_y = std::to_string(height - 24);
  out += "<line x1=\"" + sx(-1) + "\" y1=\"" + axis_y + "\" x2=\"" + sx(1) + "\" y2=\"" + axis_y + "\" stroke=\"#000\"/>\n";
  for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0})
    out += "<text x=\"" + sx(t) + "\" y=\"" + std::to_string(height - 8) + "\" text-anchor=\"middle\">" + num(t, "%.1f") +
           "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace svg

}  // namespace toolprint
