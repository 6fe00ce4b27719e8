#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"

namespace toolprint {

/// k-nearest neighbours under Euclidean distance. Distance ties go to the
/// lower training index; label-count ties go to the label of the nearest
/// neighbour among the tied labels.
class KNNModel {
 public:
  KNNModel() = default;
  KNNModel(LabeledDataset train, int k) : train_(std::move(train)), k_(k) {
    if (k_ < 1) throw Error("knn: k must be >= 1");
    if (static_cast<std::size_t>(k_) > train_.size())
      throw Error("knn: k = " + std::to_string(k_) + " exceeds training size " + std::to_string(train_.size()));
  }

  int k() const { return k_; }
  const LabeledDataset& data() const { return train_; }

  int predict(std::span<const double> x) const {
    if (x.size() != train_.dim()) throw Error("knn: input width mismatch");
    std::vector<std::pair<double, std::size_t>> dist(train_.size());
    for (std::size_t i = 0; i < train_.size(); ++i) {
      const auto r = train_.row(i);
      double d = 0.0;
      for (std::size_t f = 0; f < r.size(); ++f) d += (r[f] - x[f]) * (r[f] - x[f]);
      dist[i] = {d, i};
    }
    const auto k = static_cast<std::size_t>(k_);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    std::vector<int> votes(static_cast<std::size_t>(train_.n_classes()), 0);
    for (std::size_t n = 0; n < k; ++n) ++votes[static_cast<std::size_t>(train_.labels[dist[n].second])];
    const int top = *std::max_element(votes.begin(), votes.end());
    for (std::size_t n = 0; n < k; ++n) {
      const int label = train_.labels[dist[n].second];
      if (votes[static_cast<std::size_t>(label)] == top) return label;
    }
    return 0;  // unreachable
  }

 private:
  LabeledDataset train_;
  int k_ = 5;
};

inline KNNModel train_knn(const LabeledDataset& train, int k = 5) { return KNNModel(train, k); }

}  // namespace toolprint
