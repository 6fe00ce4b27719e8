#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "toolprint/csv.hpp"
#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"
#include "toolprint/features.hpp"
#include "toolprint/knn.hpp"
#include "toolprint/metrics.hpp"
#include "toolprint/mlp.hpp"
#include "toolprint/svm.hpp"
#include "toolprint/tree.hpp"

namespace toolprint {

inline constexpr int kModelFormatVersion = 1;

/// A trained classifier together with its input schema and optional scaler.
struct Model {
  std::variant<MLPModel, KNNModel, SVMModel, TreeModel> impl;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::optional<ScalerParams> scaler;
  nlohmann::json hyperparams = nlohmann::json::object();

  std::string type() const {
    switch (impl.index()) {
      case 0: return "mlp";
      case 1: return "knn";
      case 2: return "svm";
      default: return "tree";
    }
  }

  int predict(std::span<const double> x) const {
    if (x.size() != feature_names.size()) throw Error("model: input width mismatch");
    if (!scaler) return std::visit([&](const auto& m) { return m.predict(x); }, impl);
    std::vector<double> scaled(x.begin(), x.end());
    scaler->apply_inplace(scaled);
    return std::visit([&](const auto& m) { return m.predict(std::span<const double>(scaled)); }, impl);
  }
};

template <class Classifier>
MetricsReport evaluate(const Classifier& model, const LabeledDataset& test) {
  std::vector<int> pred(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) pred[i] = model.predict(test.row(i));
  return metrics_from_predictions(test.labels, pred, test.n_classes());
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::json rows_json(std::span<const double> flat, std::size_t width) {
  nlohmann::json rows = nlohmann::json::array();
  if (width == 0) return rows;
  for (std::size_t r = 0; r * width < flat.size(); ++r)
    rows.push_back(std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(r * width),
                                       flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * width)));
  return rows;
}

inline void append_rows(const nlohmann::json& rows, std::size_t width, std::vector<double>& out) {
  for (const auto& r : rows) {
    auto v = r.get<std::vector<double>>();
    if (v.size() != width) throw Error("model json: ragged weight matrix");
    out.insert(out.end(), v.begin(), v.end());
  }
}

inline nlohmann::json weights_json(const MLPModel& m) {
  const auto p = m.parameters();
  const std::size_t d = m.inputs(), h = m.hidden(), c = m.classes();
  return {{"inputs", d},
          {"hidden", h},
          {"classes", c},
          {"w1", rows_json(p.subspan(0, h * d), d)},
          {"b1", std::vector<double>(p.begin() + static_cast<std::ptrdiff_t>(h * d), p.begin() + static_cast<std::ptrdiff_t>(h * d + h))},
          {"w2", rows_json(p.subspan(h * d + h, c * h), h)},
          {"b2", std::vector<double>(p.end() - static_cast<std::ptrdiff_t>(c), p.end())}};
}

inline MLPModel mlp_from_json(const nlohmann::json& j) {
  const auto d = j.at("inputs").get<std::size_t>(), h = j.at("hidden").get<std::size_t>(),
             c = j.at("classes").get<std::size_t>();
  std::vector<double> flat;
  append_rows(j.at("w1"), d, flat);
  auto b1 = j.at("b1").get<std::vector<double>>();
  flat.insert(flat.end(), b1.begin(), b1.end());
  append_rows(j.at("w2"), h, flat);
  auto b2 = j.at("b2").get<std::vector<double>>();
  flat.insert(flat.end(), b2.begin(), b2.end());
  MLPModel m(d, h, c);
  if (flat.size() != m.parameters().size()) throw Error("model json: mlp weight count mismatch");
  std::copy(flat.begin(), flat.end(), m.parameters().begin());
  return m;
}

inline nlohmann::json weights_json(const KNNModel& m) {
  return {{"k", m.k()}, {"features", rows_json(m.data().features, m.data().dim())}, {"labels", m.data().labels}};
}

inline nlohmann::json weights_json(const SVMModel& m) {
  nlohmann::json machines = nlohmann::json::array();
  for (const auto& bm : m.machines)
    machines.push_back({{"coef", bm.coef}, {"support", bm.support}, {"weights", bm.weights}, {"rho", bm.rho},
                        {"iterations", bm.iterations}, {"final_violation", bm.final_violation}});
  return {{"kernel", to_string(m.kernel)},
          {"gamma", m.gamma},
          {"c", m.c},
          {"dim", m.dim},
          {"support_vectors", rows_json(m.support_vectors, m.dim)},
          {"machines", machines}};
}

inline SVMModel svm_from_json(const nlohmann::json& j) {
  SVMModel m;
  m.kernel = parse_kernel(j.at("kernel").get<std::string>());
  m.gamma = j.at("gamma").get<double>();
  m.c = j.at("c").get<double>();
  m.dim = j.at("dim").get<std::size_t>();
  append_rows(j.at("support_vectors"), m.dim, m.support_vectors);
  for (const auto& mj : j.at("machines")) {
    BinarySVM bm;
    bm.coef = mj.at("coef").get<std::vector<double>>();
    bm.support = mj.at("support").get<std::vector<std::size_t>>();
    bm.weights = mj.at("weights").get<std::vector<double>>();
    bm.rho = mj.at("rho").get<double>();
    bm.iterations = mj.value("iterations", std::size_t{0});
    bm.final_violation = mj.value("final_violation", 0.0);
    m.machines.push_back(std::move(bm));
  }
  return m;
}

inline nlohmann::json weights_json(const TreeModel& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : t.nodes)
    nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right},
                     {"impurity", n.impurity}, {"n_samples", n.n_samples}, {"class_counts", n.class_counts},
                     {"prediction", n.prediction}});
  return {{"max_depth", t.max_depth}, {"dim", t.dim}, {"nodes", nodes}};
}

inline TreeModel tree_from_json(const nlohmann::json& j) {
  TreeModel t;
  t.max_depth = j.at("max_depth").get<int>();
  t.dim = j.at("dim").get<std::size_t>();
  for (const auto& nj : j.at("nodes")) {
    TreeNode n;
    n.feature = nj.at("feature").get<int>();
    n.threshold = nj.at("threshold").get<double>();
    n.left = nj.at("left").get<int>();
    n.right = nj.at("right").get<int>();
    n.impurity = nj.at("impurity").get<double>();
    n.n_samples = nj.at("n_samples").get<std::size_t>();
    n.class_counts = nj.at("class_counts").get<std::vector<std::size_t>>();
    n.prediction = nj.at("prediction").get<int>();
    t.nodes.push_back(std::move(n));
  }
  if (t.nodes.empty()) throw Error("model json: tree without nodes");
  return t;
}

}  // namespace detail

inline nlohmann::json to_json(const Model& m) {
  nlohmann::json j = {{"format", "toolprint-model"},
                      {"version", kModelFormatVersion},
                      {"type", m.type()},
                      {"feature_names", m.feature_names},
                      {"class_names", m.class_names},
                      {"hyperparams", m.hyperparams},
                      {"scaler", m.scaler ? to_json(*m.scaler) : nlohmann::json(nullptr)}};
  j["weights"] = std::visit([](const auto& impl) { return detail::weights_json(impl); }, m.impl);
  return j;
}

inline Model model_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "toolprint-model") throw Error("not a toolprint model file");
  const int version = j.value("version", 0);
  if (version != kModelFormatVersion) throw Error("unsupported model version " + std::to_string(version));
  Model m;
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  m.class_names = j.at("class_names").get<std::vector<std::string>>();
  m.hyperparams = j.value("hyperparams", nlohmann::json::object());
  if (j.contains("scaler") && !j["scaler"].is_null()) m.scaler = scaler_from_json(j["scaler"]);
  const auto type = j.at("type").get<std::string>();
  const auto& w = j.at("weights");
  if (type == "mlp") {
    m.impl = detail::mlp_from_json(w);
  } else if (type == "knn") {
    LabeledDataset d;
    d.feature_names = m.feature_names;
    d.class_names = m.class_names;
    detail::append_rows(w.at("features"), d.dim(), d.features);
    d.labels = w.at("labels").get<std::vector<int>>();
    d.validate();
    m.impl = KNNModel(std::move(d), w.at("k").get<int>());
  } else if (type == "svm") {
    m.impl = detail::svm_from_json(w);
  } else if (type == "tree") {
    m.impl = detail::tree_from_json(w);
  } else {
    throw Error("unknown model type '" + type + "'");
  }
  return m;
}

inline void save_model(const Model& m, const std::filesystem::path& path) {
  csv::write_file(path.string(), to_json(m).dump(1) + "\n");
}

inline Model load_model(const std::filesystem::path& path) {
  return model_from_json(nlohmann::json::parse(csv::read_file(path.string())));
}

}  // namespace toolprint
