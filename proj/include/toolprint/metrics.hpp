#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "toolprint/error.hpp"

namespace toolprint {

struct MetricsReport {
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  std::vector<double> per_class_f1;
  std::vector<std::vector<long long>> confusion;  // rows = truth, cols = prediction
  std::size_t n_samples = 0;
};

/// F1_c = 2 tp / (2 tp + fp + fn), which equals 2PR / (P + R) with 0/0 := 0.
inline MetricsReport metrics_from_confusion(std::vector<std::vector<long long>> confusion) {
  const std::size_t k = confusion.size();
  for (const auto& row : confusion)
    if (row.size() != k) throw Error("confusion matrix must be square");
  MetricsReport r;
  r.per_class_f1.assign(k, 0.0);
  std::vector<long long> support(k, 0), predicted(k, 0);
  long long total = 0, correct = 0;
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t p = 0; p < k; ++p) {
      support[t] += confusion[t][p];
      predicted[p] += confusion[t][p];
      total += confusion[t][p];
      if (t == p) correct += confusion[t][p];
    }
  for (std::size_t c = 0; c < k; ++c) {
    const long long tp = confusion[c][c];
    const long long denom = support[c] + predicted[c];  // 2tp + fp + fn
    r.per_class_f1[c] = denom ? 2.0 * static_cast<double>(tp) / static_cast<double>(denom) : 0.0;
  }
  double macro = 0.0, weighted = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    macro += r.per_class_f1[c];
    weighted += static_cast<double>(support[c]) * r.per_class_f1[c];
  }
  r.macro_f1 = k ? macro / static_cast<double>(k) : 0.0;
  r.weighted_f1 = total ? weighted / static_cast<double>(total) : 0.0;
  r.accuracy = total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  r.n_samples = static_cast<std::size_t>(total);
  r.confusion = std::move(confusion);
  return r;
}

inline MetricsReport metrics_from_predictions(std::span<const int> truth, std::span<const int> predicted,
                                              int n_classes) {
  if (truth.size() != predicted.size()) throw Error("metrics: truth/prediction length mismatch");
  std::vector<std::vector<long long>> confusion(static_cast<std::size_t>(n_classes),
                                                std::vector<long long>(static_cast<std::size_t>(n_classes), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= n_classes || predicted[i] < 0 || predicted[i] >= n_classes)
      throw Error("metrics: label out of range");
    ++confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])];
  }
  return metrics_from_confusion(std::move(confusion));
}

inline nlohmann::json to_json(const MetricsReport& r) {
  return {{"macro_f1", r.macro_f1},     {"weighted_f1", r.weighted_f1}, {"accuracy", r.accuracy},
          {"per_class_f1", r.per_class_f1}, {"confusion", r.confusion}, {"n_samples", r.n_samples}};
}

}  // namespace toolprint
