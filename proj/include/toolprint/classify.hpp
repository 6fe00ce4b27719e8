#pragma once

// Classifier selection by name plus the train -> select -> report step shared
// by the CLI and the experiment runner.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toolprint/error.hpp"
#include "toolprint/features.hpp"
#include "toolprint/metrics.hpp"
#include "toolprint/model.hpp"
#include "toolprint/rng.hpp"
#include "toolprint/split.hpp"

namespace toolprint {

/// Axes of an MLP hyperparameter grid; the cartesian product is trained.
struct MLPGrid {
  std::vector<int> hidden_sizes{10, 50, 150};
  std::vector<double> learning_rates{0.001, 0.01};
  std::vector<Optimizer> optimizers{Optimizer::sgd, Optimizer::adam};
  std::vector<int> epochs{50};
  int batch_size = 32;

  std::vector<MLPHyperparams> points() const {
    std::vector<MLPHyperparams> out;
    for (int h : hidden_sizes)
      for (double lr : learning_rates)
        for (Optimizer o : optimizers)
          for (int e : epochs) {
            MLPHyperparams hp;
            hp.hidden_size = h;
            hp.learning_rate = lr;
            hp.optimizer = o;
            hp.epochs = e;
            hp.batch_size = batch_size;
            hp.validate();
            out.push_back(hp);
          }
    if (out.empty()) throw Error("mlp grid is empty");
    return out;
  }
};

struct ClassifierSpec {
  std::string type = "mlp";  // mlp | knn | svm | tree
  int k = 5;
  SVMParams svm;
  int max_depth = 5;
  MLPGrid grid;

  /// Stable name used in cell coordinates and report files.
  std::string label() const {
    if (type == "svm") return "svm_" + std::string(to_string(svm.kernel));
    return type;
  }
};

inline nlohmann::json to_json(const MLPGrid& g) {
  std::vector<std::string> opts;
  for (auto o : g.optimizers) opts.emplace_back(to_string(o));
  return {{"hidden_size", g.hidden_sizes}, {"learning_rate", g.learning_rates}, {"optimizer", opts},
          {"epochs", g.epochs}, {"batch_size", g.batch_size}};
}

inline MLPGrid mlp_grid_from_json(const nlohmann::json& j) {
  MLPGrid g;
  if (j.contains("hidden_size")) g.hidden_sizes = j.at("hidden_size").get<std::vector<int>>();
  if (j.contains("learning_rate")) g.learning_rates = j.at("learning_rate").get<std::vector<double>>();
  if (j.contains("optimizer")) {
    g.optimizers.clear();
    for (const auto& o : j.at("optimizer")) g.optimizers.push_back(parse_optimizer(o.get<std::string>()));
  }
  if (j.contains("epochs")) g.epochs = j.at("epochs").get<std::vector<int>>();
  g.batch_size = j.value("batch_size", g.batch_size);
  return g;
}

inline nlohmann::json to_json(const ClassifierSpec& c) {
  nlohmann::json j = {{"type", c.type}};
  if (c.type == "knn") j["k"] = c.k;
  if (c.type == "tree") j["max_depth"] = c.max_depth;
  if (c.type == "svm") {
    j["kernel"] = to_string(c.svm.kernel);
    j["c"] = c.svm.c;
    j["gamma"] = c.svm.gamma ? nlohmann::json(*c.svm.gamma) : nlohmann::json("scale");
  }
  if (c.type == "mlp") j["grid"] = to_json(c.grid);
  return j;
}

inline ClassifierSpec classifier_from_json(const nlohmann::json& j) {
  ClassifierSpec c;
  c.type = j.at("type").get<std::string>();
  if (c.type == "svm_linear" || c.type == "svm_rbf") {
    c.svm.kernel = parse_kernel(c.type.substr(4));
    c.type = "svm";
  } else if (c.type == "svm") {
    c.svm.kernel = parse_kernel(j.value("kernel", std::string("rbf")));
  } else if (c.type != "mlp" && c.type != "knn" && c.type != "tree") {
    throw Error("unknown classifier '" + c.type + "'");
  }
  c.k = j.value("k", c.k);
  c.max_depth = j.value("max_depth", c.max_depth);
  c.svm.c = j.value("c", c.svm.c);
  if (j.contains("gamma") && !(j["gamma"].is_string() && j["gamma"] == "scale")) c.svm.gamma = j["gamma"].get<double>();
  if (j.contains("grid")) c.grid = mlp_grid_from_json(j["grid"]);
  if (c.k < 1) throw Error("knn: k must be >= 1");
  if (c.max_depth < 0) throw Error("tree: max_depth must be >= 0");
  if (c.type == "mlp") c.grid.points();  // validates ranges
  return c;
}

struct LeaderboardEntry {
  MLPHyperparams hp;
  double dev_macro_f1 = 0.0;
  double dev_weighted_f1 = 0.0;
};

struct SweepResult {
  MLPModel best;
  MLPHyperparams best_hp;
  std::vector<LeaderboardEntry> leaderboard;  // grid order
};

/// Trains every grid point (all with the same seed) and keeps the best dev
/// macro-F1; ties prefer the smaller hidden layer, then the lower rate.
inline SweepResult sweep_mlp(const LabeledDataset& train, const LabeledDataset& dev,
                             const std::vector<MLPHyperparams>& grid, std::uint64_t seed) {
  if (grid.empty()) throw Error("sweep: empty grid");
  SweepResult r;
  std::optional<std::size_t> best;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    auto hp = grid[g];
    hp.seed = seed;
    MLPModel model = train_mlp(train, dev, hp);
    const auto& sel = dev.empty() ? train : dev;
    const auto m = evaluate(model, sel);
    r.leaderboard.push_back({hp, m.macro_f1, m.weighted_f1});
    bool better = !best;
    if (best) {
      const auto& b = r.leaderboard[*best];
      if (m.macro_f1 != b.dev_macro_f1) better = m.macro_f1 > b.dev_macro_f1;
      else if (hp.hidden_size != b.hp.hidden_size) better = hp.hidden_size < b.hp.hidden_size;
      else better = hp.learning_rate < b.hp.learning_rate;
    }
    if (better) {
      best = g;
      r.best = std::move(model);
      r.best_hp = hp;
    }
  }
  return r;
}

inline nlohmann::json to_json(const LeaderboardEntry& e) {
  return {{"hyperparams", to_json(e.hp)}, {"dev_macro_f1", e.dev_macro_f1}, {"dev_weighted_f1", e.dev_weighted_f1}};
}

struct TrainOutcome {
  Model model;
  MetricsReport dev;
  MetricsReport test;
  nlohmann::json leaderboard = nlohmann::json::array();
};

/// Fits the optional scaler on train, trains (sweeping the grid for MLPs),
/// and scores the dev and test parts. The returned model embeds the scaler.
inline TrainOutcome train_classifier(const ClassifierSpec& spec, const Split& split, bool use_scaler,
                                     std::uint64_t seed) {
  std::optional<ScalerParams> scaler;
  LabeledDataset train = split.train, dev = split.dev, test = split.test;
  if (use_scaler) {
    scaler = fit_scaler(train);
    train = scaler->apply(train);
    if (!dev.empty()) dev = scaler->apply(dev);
    if (!test.empty()) test = scaler->apply(test);
  }
  TrainOutcome out;
  out.model.feature_names = split.train.feature_names;
  out.model.class_names = split.train.class_names;
  if (spec.type == "mlp") {
    auto sweep = sweep_mlp(train, dev, spec.grid.points(), seed);
    out.model.impl = std::move(sweep.best);
    out.model.hyperparams = to_json(sweep.best_hp);
    for (const auto& e : sweep.leaderboard) out.leaderboard.push_back(to_json(e));
  } else if (spec.type == "knn") {
    out.model.impl = train_knn(train, std::min<int>(spec.k, static_cast<int>(train.size())));
    out.model.hyperparams = {{"k", spec.k}};
  } else if (spec.type == "svm") {
    out.model.impl = train_svm(train, spec.svm);
    out.model.hyperparams = to_json(spec);
  } else if (spec.type == "tree") {
    out.model.impl = train_tree(train, spec.max_depth);
    out.model.hyperparams = {{"max_depth", spec.max_depth}};
  } else {
    throw Error("unknown classifier '" + spec.type + "'");
  }
  // Metrics on already-scaled parts; the scaler is attached afterwards.
  out.dev = evaluate(out.model, dev);
  out.test = evaluate(out.model, test);
  out.model.scaler = std::move(scaler);
  return out;
}

}  // namespace toolprint
