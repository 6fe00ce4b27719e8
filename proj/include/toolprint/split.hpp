#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"
#include "toolprint/rng.hpp"

namespace toolprint {

struct Split {
  LabeledDataset train, dev, test;
};

struct SplitIndices {
  std::vector<std::size_t> train, dev, test;
};

/// Stratified 70/15/15 split. Each class is shuffled on its own and its
/// members are laid out by relative rank, so every prefix of the merged order
/// holds roughly the same class proportions. Part sizes are floor(0.70 n),
/// floor(0.15 n) and the remainder.
inline SplitIndices split_indices(const LabeledDataset& d, std::uint64_t seed) {
  if (d.size() < 10) throw Error("split needs at least 10 samples, got " + std::to_string(d.size()));
  const auto counts = d.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] < 3)
      throw Error("class " + d.class_names[c] + " has support " + std::to_string(counts[c]) + " (< 3)");

  std::vector<std::vector<std::size_t>> members(counts.size());
  for (std::size_t i = 0; i < d.size(); ++i) members[static_cast<std::size_t>(d.labels[i])].push_back(i);
  Rng rng(seed);
  for (auto& m : members) rng.shuffle(m);

  struct Keyed {
    double position;
    std::size_t cls;
    std::size_t index;
  };
  std::vector<Keyed> order;
  order.reserve(d.size());
  for (std::size_t c = 0; c < members.size(); ++c)
    for (std::size_t r = 0; r < members[c].size(); ++r)
      order.push_back({(static_cast<double>(r) + 0.5) / static_cast<double>(members[c].size()), c, members[c][r]});
  std::sort(order.begin(), order.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.position, a.cls) < std::tie(b.position, b.cls);
  });

  const std::size_t n = d.size();
  const std::size_t n_train = n * 70 / 100;
  const std::size_t n_dev = n * 15 / 100;
  SplitIndices s;
  for (std::size_t k = 0; k < n; ++k) {
    auto& part = k < n_train ? s.train : (k < n_train + n_dev ? s.dev : s.test);
    part.push_back(order[k].index);
  }
  return s;
}

inline Split split_dataset(const LabeledDataset& d, std::uint64_t seed) {
  const auto idx = split_indices(d, seed);
  return {d.subset(idx.train), d.subset(idx.dev), d.subset(idx.test)};
}

}  // namespace toolprint
