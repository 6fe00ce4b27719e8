#pragma once

// CART classification tree: binary splits `feature <= threshold` chosen by
// minimum weighted Gini impurity.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"

namespace toolprint {

inline double gini(std::span<const std::size_t> counts) {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) return 0.0;
  double sum_sq = 0.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(n);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  double impurity = 0.0;
  std::size_t n_samples = 0;
  std::vector<std::size_t> class_counts;
  int prediction = 0;

  bool is_leaf() const { return feature < 0; }
};

class TreeModel {
 public:
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t dim = 0;
  int max_depth = 5;

  int predict(std::span<const double> x) const {
    if (x.size() != dim) throw Error("tree: input width mismatch");
    int n = 0;
    while (!nodes[static_cast<std::size_t>(n)].is_leaf()) {
      const auto& node = nodes[static_cast<std::size_t>(n)];
      n = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(n)].prediction;
  }

  int depth() const { return depth_of(0); }

 private:
  int depth_of(int n) const {
    const auto& node = nodes[static_cast<std::size_t>(n)];
    return node.is_leaf() ? 0 : 1 + std::max(depth_of(node.left), depth_of(node.right));
  }
};

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& d, int max_depth) : d_(d), k_(static_cast<std::size_t>(d.n_classes())) {
    model_.dim = d.dim();
    model_.max_depth = max_depth;
  }

  TreeModel build() && {
    std::vector<std::size_t> all(d_.size());
    std::iota(all.begin(), all.end(), 0);
    grow(all, 0);
    return std::move(model_);
  }

 private:
  int grow(const std::vector<std::size_t>& idx, int depth) {
    const int id = static_cast<int>(model_.nodes.size());
    model_.nodes.emplace_back();
    TreeNode node;
    node.n_samples = idx.size();
    node.class_counts.assign(k_, 0);
    for (auto i : idx) ++node.class_counts[static_cast<std::size_t>(d_.labels[i])];
    node.impurity = gini(node.class_counts);
    node.prediction = static_cast<int>(std::max_element(node.class_counts.begin(), node.class_counts.end()) -
                                       node.class_counts.begin());

    const bool pure = std::count_if(node.class_counts.begin(), node.class_counts.end(),
                                    [](std::size_t c) { return c > 0; }) <= 1;
    if (depth < model_.max_depth && !pure && idx.size() >= 2) {
      if (auto split = best_split(idx)) {
        node.feature = split->feature;
        node.threshold = split->threshold;
        std::vector<std::size_t> left, right;
        for (auto i : idx) (d_.row(i)[static_cast<std::size_t>(node.feature)] <= node.threshold ? left : right).push_back(i);
        model_.nodes[static_cast<std::size_t>(id)] = node;
        const int l = grow(left, depth + 1);
        const int r = grow(right, depth + 1);
        model_.nodes[static_cast<std::size_t>(id)].left = l;
        model_.nodes[static_cast<std::size_t>(id)].right = r;
        return id;
      }
    }
    model_.nodes[static_cast<std::size_t>(id)] = node;
    return id;
  }

  struct Candidate {
    int feature;
    double threshold;
  };

  /// Scans features in ascending order and thresholds ascending; only a
  /// strictly better impurity replaces the incumbent.
  std::optional<Candidate> best_split(const std::vector<std::size_t>& idx) const {
    std::optional<Candidate> best;
    double best_score = std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(idx.size());
    std::vector<std::size_t> order = idx;
    std::vector<std::size_t> left(k_), right(k_);
    for (std::size_t f = 0; f < d_.dim(); ++f) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return d_.row(a)[f] < d_.row(b)[f]; });
      std::fill(left.begin(), left.end(), 0);
      std::fill(right.begin(), right.end(), 0);
      for (auto i : order) ++right[static_cast<std::size_t>(d_.labels[i])];
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        const auto lbl = static_cast<std::size_t>(d_.labels[order[pos]]);
        ++left[lbl];
        --right[lbl];
        const double a = d_.row(order[pos])[f], b = d_.row(order[pos + 1])[f];
        if (!(a < b)) continue;
        const double nl = static_cast<double>(pos + 1), nr = n - nl;
        const double score = (nl * gini(left) + nr * gini(right)) / n;
        if (score < best_score - 1e-12) {
          best_score = score;
          double mid = a + (b - a) / 2.0;
          if (!(mid < b)) mid = a;  // adjacent doubles
          best = Candidate{static_cast<int>(f), mid};
        }
      }
    }
    return best;
  }

  const LabeledDataset& d_;
  std::size_t k_;
  TreeModel model_;
};

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string fmt_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace detail

/// Leaves predict the majority class (lower index on ties). Growth stops at
/// max_depth, at pure nodes, below 2 samples, or when no threshold exists.
inline TreeModel train_tree(const LabeledDataset& train, int max_depth = 5) {
  if (train.n_classes() < 2) throw Error("tree: need at least 2 classes");
  if (train.empty()) throw Error("tree: empty training set");
  if (max_depth < 0) throw Error("tree: max_depth must be >= 0");
  return detail::TreeBuilder(train, max_depth).build();
}

/// Graphviz rendering. Node labels carry, top to bottom: split rule,
/// gini, sample count, per-class counts and the majority class.
inline std::string export_tree_dot(const TreeModel& tree, std::span<const std::string> feature_names,
                                   std::span<const std::string> class_names) {
  std::string out = "digraph Tree {\nnode [shape=box, style=\"rounded\", fontname=\"helvetica\"] ;\n";
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    std::string label;
    if (!node.is_leaf()) {
      const auto f = static_cast<std::size_t>(node.feature);
      const std::string name = f < feature_names.size() ? feature_names[f] : "f" + std::to_string(f);
      label += detail::dot_escape(name) + " <= " + detail::fmt_number(node.threshold) + "\\n";
    }
    label += "gini = " + detail::fmt_number(node.impurity) + "\\n";
    label += "samples = " + std::to_string(node.n_samples) + "\\n";
    label += "value = [";
    for (std::size_t c = 0; c < node.class_counts.size(); ++c) {
      if (c) label += ", ";
      label += std::to_string(node.class_counts[c]);
    }
    label += "]\\n";
    const auto p = static_cast<std::size_t>(node.prediction);
    label += "class = " + detail::dot_escape(p < class_names.size() ? class_names[p] : std::to_string(p));
    out += std::to_string(id) + " [label=\"" + label + "\"] ;\n";
  }
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& node = tree.nodes[id];
    if (node.is_leaf()) continue;
    out += std::to_string(id) + " -> " + std::to_string(node.left) + " [headlabel=\"True\"] ;\n";
    out += std::to_string(id) + " -> " + std::to_string(node.right) + " [headlabel=\"False\"] ;\n";
  }
  out += "}\n";
  return out;
}

}  // namespace toolprint
