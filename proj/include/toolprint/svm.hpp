#pragma once

// Soft-margin kernel SVM. Each binary sub-problem is solved with SMO using
// second-order working-set selection; multiclass is one-vs-rest.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"

namespace toolprint {

enum class KernelType { linear, rbf };

inline std::string_view to_string(KernelType k) { return k == KernelType::linear ? "linear" : "rbf"; }
inline KernelType parse_kernel(std::string_view s) {
  if (s == "linear") return KernelType::linear;
  if (s == "rbf") return KernelType::rbf;
  throw Error("unknown kernel '" + std::string(s) + "'");
}

struct SVMParams {
  KernelType kernel = KernelType::rbf;
  double c = 1.0;
  std::optional<double> gamma;  // unset means "scale"
  double tolerance = 1e-3;
  std::size_t max_iterations = 0;  // 0: max(10^7, 100 n)
};

/// 1 / (n_features * population variance over all feature values); 1 when
/// the data are constant.
inline double gamma_scale(const LabeledDataset& d) {
  const double n = static_cast<double>(d.features.size());
  if (n == 0) return 1.0;
  double mean = 0.0;
  for (double v : d.features) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : d.features) var += (v - mean) * (v - mean);
  var /= n;
  return var > 0.0 ? 1.0 / (static_cast<double>(d.dim()) * var) : 1.0;
}

struct BinarySVM {
  std::vector<double> coef;                // alpha_i * y_i for support vectors
  std::vector<std::size_t> support;        // indices into the model's support set
  std::vector<double> weights;             // linear kernel only: sum coef_i x_i
  double rho = 0.0;
  std::size_t iterations = 0;
  double final_violation = 0.0;
};

class SVMModel {
 public:
  KernelType kernel = KernelType::rbf;
  double gamma = 1.0;
  double c = 1.0;
  std::size_t dim = 0;
  std::vector<double> support_vectors;  // row-major, union over sub-problems
  std::vector<BinarySVM> machines;      // one per class

  double kernel_value(std::span<const double> a, std::span<const double> b) const {
    if (kernel == KernelType::linear) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
      return s;
    }
    double d2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
    return std::exp(-gamma * d2);
  }

  std::vector<double> decision_values(std::span<const double> x) const {
    if (x.size() != dim) throw Error("svm: input width mismatch");
    std::vector<double> out(machines.size());
    for (std::size_t m = 0; m < machines.size(); ++m) {
      const auto& bm = machines[m];
      double f = -bm.rho;
      if (kernel == KernelType::linear) {
        for (std::size_t k = 0; k < dim; ++k) f += bm.weights[k] * x[k];
      } else {
        for (std::size_t s = 0; s < bm.support.size(); ++s)
          f += bm.coef[s] * kernel_value({support_vectors.data() + bm.support[s] * dim, dim}, x);
      }
      out[m] = f;
    }
    return out;
  }

  /// Highest one-vs-rest decision value; ties go to the lower class index.
  int predict(std::span<const double> x) const {
    const auto f = decision_values(x);
    return static_cast<int>(std::max_element(f.begin(), f.end()) - f.begin());
  }
};

namespace detail {

/// Lazily computed, cached rows of the kernel matrix.
class KernelRows {
 public:
  KernelRows(const LabeledDataset& d, const SVMModel& shape) : d_(d), shape_(shape), rows_(d.size()) {}

  std::span<const double> row(std::size_t i) {
    auto& r = rows_[i];
    if (r.empty()) {
      r.resize(d_.size());
      for (std::size_t j = 0; j < d_.size(); ++j) r[j] = shape_.kernel_value(d_.row(i), d_.row(j));
    }
    return r;
  }
  double diag(std::size_t i) { return row(i)[i]; }

 private:
  const LabeledDataset& d_;
  const SVMModel& shape_;
  std::vector<std::vector<double>> rows_;
};

/// min 0.5 a'Qa - e'a  s.t. 0 <= a <= C, y'a = 0, Q_ij = y_i y_j K_ij.
/// Returns alpha and rho; stops when max violation m(a) - M(a) < tolerance.
inline std::pair<std::vector<double>, BinarySVM> solve_binary(KernelRows& kernel, std::span<const signed char> y,
                                                              const SVMParams& p) {
  const std::size_t n = y.size();
  const double C = p.c;
  std::vector<double> alpha(n, 0.0), grad(n, -1.0);
  const std::size_t cap = p.max_iterations ? p.max_iterations : std::max<std::size_t>(10'000'000, 100 * n);
  constexpr double tau = 1e-12;

  auto is_upper = [&](std::size_t i) { return alpha[i] >= C; };
  auto is_lower = [&](std::size_t i) { return alpha[i] <= 0.0; };
  auto in_up = [&](std::size_t t) { return y[t] > 0 ? !is_upper(t) : !is_lower(t); };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? !is_lower(t) : !is_upper(t); };

  BinarySVM out;
  std::size_t iter = 0;
  double violation = std::numeric_limits<double>::infinity();
  for (;;) {
    // Working set selection (maximal violating pair, second-order for j).
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t)
      if (in_up(t) && -y[t] * grad[t] > gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t j = n;
    double best_obj = std::numeric_limits<double>::infinity();
    if (i != n) {
      const auto ki = kernel.row(i);
      const double kii = ki[i];
      for (std::size_t t = 0; t < n; ++t) {
        if (!in_low(t)) continue;
        const double yg = y[t] * grad[t];
        gmax2 = std::max(gmax2, yg);
        const double b = gmax + yg;
        if (b > 0.0) {
          double a = kii + kernel.diag(t) - 2.0 * ki[t];
          if (a <= 0.0) a = tau;
          const double obj = -(b * b) / a;
          if (obj < best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      }
    }
    violation = gmax + gmax2;
    if (i == n || j == n || violation < p.tolerance) break;
    if (iter >= cap)
      throw Error("svm did not converge after " + std::to_string(iter) + " iterations (violation " +
                  std::to_string(violation) + ")");
    ++iter;

    const auto ki = kernel.row(i);
    const auto kj = kernel.row(j);
    const double old_ai = alpha[i], old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = ki[i] + kj[j] - 2.0 * ki[j];
      if (quad <= 0.0) quad = tau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
      } else {
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
      }
      if (diff > 0) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
      } else {
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
      }
    } else {
      double quad = ki[i] + kj[j] - 2.0 * ki[j];
      if (quad <= 0.0) quad = tau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
      } else {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
      }
      if (sum > C) {
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
      } else {
        if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
      }
    }
    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += y[t] * (y[i] * ki[t] * dai + y[j] * kj[t] * daj);
  }

  // rho: mean of y_i grad_i over free vectors, else the midpoint of bounds.
  double ub = std::numeric_limits<double>::infinity(), lb = -std::numeric_limits<double>::infinity(), sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (is_upper(t)) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (is_lower(t)) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  out.rho = n_free ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  out.iterations = iter;
  out.final_violation = violation;
  return {std::move(alpha), std::move(out)};
}

}  // namespace detail

inline SVMModel train_svm(const LabeledDataset& train, const SVMParams& params = {}) {
  if (train.n_classes() < 2) throw Error("svm: need at least 2 classes");
  if (train.empty()) throw Error("svm: empty training set");
  if (train.dim() == 0) throw Error("svm: zero-width features");
  if (!(params.c > 0.0)) throw Error("svm: C must be positive");
  SVMModel model;
  model.kernel = params.kernel;
  model.c = params.c;
  model.dim = train.dim();
  model.gamma = params.gamma ? *params.gamma : gamma_scale(train);

  detail::KernelRows kernel(train, model);
  std::vector<std::ptrdiff_t> sv_slot(train.size(), -1);
  std::vector<signed char> y(train.size());
  for (int cls = 0; cls < train.n_classes(); ++cls) {
    for (std::size_t i = 0; i < train.size(); ++i) y[i] = train.labels[i] == cls ? 1 : -1;
    auto [alpha, bm] = detail::solve_binary(kernel, y, params);
    if (model.kernel == KernelType::linear) bm.weights.assign(model.dim, 0.0);
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (alpha[i] <= 0.0) continue;
      const double coef = alpha[i] * y[i];
      if (model.kernel == KernelType::linear) {
        const auto r = train.row(i);
        for (std::size_t k = 0; k < model.dim; ++k) bm.weights[k] += coef * r[k];
      }
      if (sv_slot[i] < 0) {
        sv_slot[i] = static_cast<std::ptrdiff_t>(model.support_vectors.size() / model.dim);
        const auto r = train.row(i);
        model.support_vectors.insert(model.support_vectors.end(), r.begin(), r.end());
      }
      bm.support.push_back(static_cast<std::size_t>(sv_slot[i]));
      bm.coef.push_back(coef);
    }
    model.machines.push_back(std::move(bm));
  }
  return model;
}

inline SVMModel train_svm(const LabeledDataset& train, KernelType kernel, double c = 1.0,
                          std::optional<double> gamma = std::nullopt) {
  SVMParams p;
  p.kernel = kernel;
  p.c = c;
  p.gamma = gamma;
  return train_svm(train, p);
}

}  // namespace toolprint
