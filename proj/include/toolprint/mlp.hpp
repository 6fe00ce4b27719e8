#pragma once

// Shallow perceptron: input -> hidden (ReLU) -> softmax, trained with
// mini-batch SGD or Adam on mean cross-entropy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"
#include "toolprint/metrics.hpp"
#include "toolprint/rng.hpp"

namespace toolprint {

enum class Optimizer { sgd, adam };

inline std::string_view to_string(Optimizer o) { return o == Optimizer::sgd ? "sgd" : "adam"; }
inline Optimizer parse_optimizer(std::string_view s) {
  if (s == "sgd") return Optimizer::sgd;
  if (s == "adam") return Optimizer::adam;
  throw Error("unknown optimizer '" + std::string(s) + "'");
}

struct MLPHyperparams {
  int hidden_size = 50;
  Optimizer optimizer = Optimizer::adam;
  double learning_rate = 0.01;
  int epochs = 50;
  int batch_size = 32;
  std::uint64_t seed = 0;

  void validate() const {
    if (hidden_size < 5 || hidden_size > 300) throw Error("hidden_size must be in [5, 300]");
    if (!(learning_rate >= 0.001 && learning_rate <= 0.1)) throw Error("learning_rate must be in [0.001, 0.1]");
    if (epochs < 5 || epochs > 100) throw Error("epochs must be in [5, 100]");
    if (batch_size < 1) throw Error("batch_size must be >= 1");
  }

  bool operator==(const MLPHyperparams&) const = default;
};

inline nlohmann::json to_json(const MLPHyperparams& hp) {
  return {{"hidden_size", hp.hidden_size}, {"optimizer", to_string(hp.optimizer)},
          {"learning_rate", hp.learning_rate}, {"epochs", hp.epochs},
          {"batch_size", hp.batch_size}, {"seed", hp.seed}};
}

inline MLPHyperparams mlp_hyperparams_from_json(const nlohmann::json& j) {
  MLPHyperparams hp;
  hp.hidden_size = j.value("hidden_size", hp.hidden_size);
  hp.optimizer = parse_optimizer(j.value("optimizer", std::string("adam")));
  hp.learning_rate = j.value("learning_rate", hp.learning_rate);
  hp.epochs = j.value("epochs", hp.epochs);
  hp.batch_size = j.value("batch_size", hp.batch_size);
  hp.seed = j.value("seed", hp.seed);
  return hp;
}

class MLPModel {
 public:
  MLPModel() = default;
  MLPModel(std::size_t inputs, std::size_t hidden, std::size_t classes)
      : inputs_(inputs), hidden_(hidden), classes_(classes), theta_(parameter_count(inputs, hidden, classes), 0.0) {}

  static std::size_t parameter_count(std::size_t d, std::size_t h, std::size_t c) { return h * d + h + c * h + c; }

  std::size_t inputs() const { return inputs_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t classes() const { return classes_; }

  /// Flat parameter vector: W1 (hidden x inputs), b1, W2 (classes x hidden), b2.
  std::span<const double> parameters() const { return theta_; }
  std::span<double> parameters() { return theta_; }

  /// Glorot-uniform weights, zero biases.
  void initialize(Rng& rng) {
    std::fill(theta_.begin(), theta_.end(), 0.0);
    const double a1 = std::sqrt(6.0 / static_cast<double>(inputs_ + hidden_));
    const double a2 = std::sqrt(6.0 / static_cast<double>(hidden_ + classes_));
    for (std::size_t k = 0; k < hidden_ * inputs_; ++k) theta_[w1() + k] = rng.uniform(-a1, a1);
    for (std::size_t k = 0; k < classes_ * hidden_; ++k) theta_[w2() + k] = rng.uniform(-a2, a2);
  }

  std::vector<double> logits(std::span<const double> x) const {
    std::vector<double> h(hidden_), out(classes_);
    forward(theta_, x, h, out);
    return out;
  }

  int predict(std::span<const double> x) const {
    const auto z = logits(x);
    return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
  }

  /// Mean cross-entropy over the batch and its gradient w.r.t. `theta`
  /// (same layout as parameters()).
  double loss_and_gradient(std::span<const double> theta, const LabeledDataset& data,
                           std::span<const std::size_t> batch, std::span<double> grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    std::vector<double> h(hidden_), z(classes_), dz(classes_), dh(hidden_);
    double loss = 0.0;
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (auto i : batch) {
      const auto x = data.row(i);
      const auto y = static_cast<std::size_t>(data.labels[i]);
      forward(theta, x, h, z);
      const double zmax = *std::max_element(z.begin(), z.end());
      double denom = 0.0;
      for (double v : z) denom += std::exp(v - zmax);
      const double log_denom = std::log(denom) + zmax;
      loss += log_denom - z[y];
      for (std::size_t c = 0; c < classes_; ++c) dz[c] = (std::exp(z[c] - log_denom) - (c == y ? 1.0 : 0.0)) * scale;

      std::fill(dh.begin(), dh.end(), 0.0);
      for (std::size_t c = 0; c < classes_; ++c) {
        const double g = dz[c];
        grad[b2() + c] += g;
        const double* w = &theta[w2() + c * hidden_];
        double* gw = &grad[w2() + c * hidden_];
        for (std::size_t j = 0; j < hidden_; ++j) {
          gw[j] += g * h[j];
          dh[j] += g * w[j];
        }
      }
      for (std::size_t j = 0; j < hidden_; ++j) {
        if (h[j] <= 0.0) continue;  // ReLU gate
        const double g = dh[j];
        grad[b1() + j] += g;
        double* gw = &grad[w1() + j * inputs_];
        for (std::size_t k = 0; k < inputs_; ++k) gw[k] += g * x[k];
      }
    }
    return loss * scale;
  }

  double loss_and_gradient(const LabeledDataset& data, std::span<const std::size_t> batch,
                           std::span<double> grad) const {
    return loss_and_gradient(theta_, data, batch, grad);
  }

 private:
  std::size_t w1() const { return 0; }
  std::size_t b1() const { return hidden_ * inputs_; }
  std::size_t w2() const { return b1() + hidden_; }
  std::size_t b2() const { return w2() + classes_ * hidden_; }

  void forward(std::span<const double> theta, std::span<const double> x, std::span<double> h,
               std::span<double> out) const {
    if (x.size() != inputs_) throw Error("mlp: input width mismatch");
    for (std::size_t j = 0; j < hidden_; ++j) {
      const double* w = &theta[w1() + j * inputs_];
      double a = theta[b1() + j];
      for (std::size_t k = 0; k < inputs_; ++k) a += w[k] * x[k];
      h[j] = a > 0.0 ? a : 0.0;
    }
    for (std::size_t c = 0; c < classes_; ++c) {
      const double* w = &theta[w2() + c * hidden_];
      double a = theta[b2() + c];
      for (std::size_t j = 0; j < hidden_; ++j) a += w[j] * h[j];
      out[c] = a;
    }
  }

  std::size_t inputs_ = 0, hidden_ = 0, classes_ = 0;
  std::vector<double> theta_;
};

namespace detail {

template <class Model>
double macro_f1_on(const Model& model, const LabeledDataset& data) {
  std::vector<int> pred(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) pred[i] = model.predict(data.row(i));
  return metrics_from_predictions(data.labels, pred, data.n_classes()).macro_f1;
}

}  // namespace detail

struct MLPTrainingLog {
  std::vector<double> epoch_loss;    // mean mini-batch loss per epoch
  std::vector<double> dev_macro_f1;  // per epoch
  int best_epoch = 0;                // 1-based
};

/// Trains and returns the epoch snapshot with the best dev macro-F1 (the
/// earliest one on ties). An empty dev set selects on the training set.
inline MLPModel train_mlp(const LabeledDataset& train, const LabeledDataset& dev, const MLPHyperparams& hp,
                          MLPTrainingLog* log = nullptr) {
  hp.validate();
  if (train.empty()) throw Error("mlp: empty training set");
  if (train.n_classes() < 2) throw Error("mlp: need at least 2 classes");
  if (!dev.empty() && dev.dim() != train.dim()) throw Error("mlp: train/dev feature widths differ");
  const auto& selection = dev.empty() ? train : dev;

  Rng rng(hp.seed);
  MLPModel model(train.dim(), static_cast<std::size_t>(hp.hidden_size), static_cast<std::size_t>(train.n_classes()));
  model.initialize(rng);

  auto theta = model.parameters();
  std::vector<double> grad(theta.size()), m(theta.size(), 0.0), v(theta.size(), 0.0);
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long long step = 0;

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  MLPModel best = model;
  double best_f1 = -1.0;
  MLPTrainingLog local;

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(hp.batch_size)) {
      const auto end = std::min(order.size(), start + static_cast<std::size_t>(hp.batch_size));
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      const double loss = model.loss_and_gradient(train, batch, grad);
      if (!std::isfinite(loss)) throw Error("training diverged at epoch " + std::to_string(epoch));
      epoch_loss += loss;
      ++batches;
      if (hp.optimizer == Optimizer::sgd) {
        for (std::size_t k = 0; k < theta.size(); ++k) theta[k] -= hp.learning_rate * grad[k];
      } else {
        ++step;
        const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
        for (std::size_t k = 0; k < theta.size(); ++k) {
          m[k] = beta1 * m[k] + (1.0 - beta1) * grad[k];
          v[k] = beta2 * v[k] + (1.0 - beta2) * grad[k] * grad[k];
          theta[k] -= hp.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps);
        }
      }
    }
    for (double p : theta)
      if (!std::isfinite(p)) throw Error("training diverged at epoch " + std::to_string(epoch));
    const double f1 = detail::macro_f1_on(model, selection);
    local.epoch_loss.push_back(epoch_loss / static_cast<double>(batches));
    local.dev_macro_f1.push_back(f1);
    if (f1 > best_f1) {
      best_f1 = f1;
      best = model;
      local.best_epoch = epoch;
    }
  }
  if (log) *log = std::move(local);
  return best;
}

}  // namespace toolprint
