#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "toolprint/csv.hpp"
#include "toolprint/error.hpp"

namespace toolprint {

/// Feature vectors (row-major, fixed width) labeled by class index.
struct LabeledDataset {
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return feature_names.size(); }
  int n_classes() const { return static_cast<int>(class_names.size()); }
  bool empty() const { return labels.empty(); }

  std::span<const double> row(std::size_t i) const { return {features.data() + i * dim(), dim()}; }
  std::span<double> row(std::size_t i) { return {features.data() + i * dim(), dim()}; }

  void add(std::span<const double> x, int label) {
    if (x.size() != dim()) throw Error("dataset: feature width mismatch");
    features.insert(features.end(), x.begin(), x.end());
    labels.push_back(label);
  }

  /// Same schema, no samples.
  LabeledDataset empty_like() const {
    LabeledDataset d;
    d.feature_names = feature_names;
    d.class_names = class_names;
    return d;
  }

  LabeledDataset subset(std::span<const std::size_t> indices) const {
    auto d = empty_like();
    d.features.reserve(indices.size() * dim());
    d.labels.reserve(indices.size());
    for (auto i : indices) d.add(row(i), labels.at(i));
    return d;
  }

  std::vector<std::size_t> class_counts() const {
    std::vector<std::size_t> counts(class_names.size(), 0);
    for (int l : labels) ++counts.at(static_cast<std::size_t>(l));
    return counts;
  }

  void validate() const {
    if (features.size() != labels.size() * dim()) throw Error("dataset: feature buffer has wrong size");
    for (int l : labels)
      if (l < 0 || l >= n_classes()) throw Error("dataset: label " + std::to_string(l) + " out of range");
  }

  bool operator==(const LabeledDataset&) const = default;
};

inline std::filesystem::path dataset_manifest_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".manifest.json");
  return p;
}

inline std::string dataset_csv(const LabeledDataset& d) {
  csv::Row header{"label"};
  for (std::size_t k = 0; k < d.dim(); ++k) header.push_back("f" + std::to_string(k));
  std::string out = csv::format_row(header);
  for (std::size_t i = 0; i < d.size(); ++i) {
    csv::Row r{std::to_string(d.labels[i])};
    for (double v : d.row(i)) r.push_back(csv::format_double(v));
    out += csv::format_row(r);
  }
  return out;
}

/// Writes `label,f0,...` CSV plus a manifest carrying names and `meta`.
inline void save_dataset(const LabeledDataset& d, const std::filesystem::path& csv_path,
                         const nlohmann::json& meta = nlohmann::json::object()) {
  csv::write_file(csv_path.string(), dataset_csv(d));
  nlohmann::json m = {{"feature_names", d.feature_names},
                      {"class_names", d.class_names},
                      {"n_classes", d.n_classes()},
                      {"n_samples", d.size()},
                      {"meta", meta}};
  csv::write_file(dataset_manifest_path(csv_path).string(), m.dump(2) + "\n");
}

inline LabeledDataset load_dataset(const std::filesystem::path& csv_path) {
  const auto rows = csv::parse(csv::read_file(csv_path.string()));
  if (rows.empty() || rows[0].empty() || rows[0][0] != "label") throw Error("dataset csv: missing label header");
  LabeledDataset d;
  const std::size_t dim = rows[0].size() - 1;
  const auto mpath = dataset_manifest_path(csv_path);
  if (std::filesystem::exists(mpath)) {
    const auto m = nlohmann::json::parse(csv::read_file(mpath.string()));
    d.feature_names = m.at("feature_names").get<std::vector<std::string>>();
    d.class_names = m.at("class_names").get<std::vector<std::string>>();
    if (d.feature_names.size() != dim) throw Error("dataset manifest: feature count disagrees with csv");
  } else {
    d.feature_names.assign(rows[0].begin() + 1, rows[0].end());
  }
  int max_label = -1;
  std::vector<double> x(dim);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != dim + 1) throw Error("dataset csv: row " + std::to_string(i + 1) + " has wrong width");
    const int label = static_cast<int>(csv::parse_int(rows[i][0]));
    for (std::size_t k = 0; k < dim; ++k) x[k] = csv::parse_double(rows[i][k + 1]);
    d.features.insert(d.features.end(), x.begin(), x.end());
    d.labels.push_back(label);
    max_label = std::max(max_label, label);
  }
  if (d.class_names.empty())
    for (int c = 0; c <= max_label; ++c) d.class_names.push_back("class" + std::to_string(c));
  d.validate();
  return d;
}

}  // namespace toolprint
