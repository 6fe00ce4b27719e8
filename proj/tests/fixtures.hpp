#pragma once

// Synthetic tool fixtures shared by the unit and acceptance suites.

#include <cstdio>
#include <string>
#include <vector>

#include "toolprint.hpp"

namespace fixtures {

using namespace toolprint;

inline ToolSpec gaussian_tool(std::string name, double mean, double std) {
  ToolSpec t;
  t.name = std::move(name);
  t.kind = ToolKind::synthetic;
  t.output_class = OutputClass::continuous;
  t.params.distribution.kind = SyntheticDistribution::Kind::clipped_gaussian;
  t.params.distribution.mean = mean;
  t.params.distribution.std = std;
  return t;
}

inline ToolSpec point_mass_tool(std::string name, OutputClass cls, std::vector<double> support,
                                std::vector<double> probabilities) {
  ToolSpec t;
  t.name = std::move(name);
  t.kind = ToolKind::synthetic;
  t.output_class = cls;
  t.params.distribution.kind = SyntheticDistribution::Kind::point_mass;
  t.params.distribution.support = std::move(support);
  t.params.distribution.probabilities = std::move(probabilities);
  return t;
}

/// Documents carrying only ids; synthetic tools never look at the text.
inline Corpus blank_corpus(std::size_t n) {
  Corpus c;
  c.name = "blank";
  c.documents.reserve(n);
  char id[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(id, sizeof(id), "d%06zu", i);
    Document d;
    d.id = id;
    d.text = "Placeholder.";
    c.documents.push_back(std::move(d));
  }
  return c;
}

/// Four tools: two point-mass mixtures on distinct supports and two clipped
/// Gaussians. The point masses are placed so that no single moment or
/// entropy separates all four tools.
inline std::vector<ToolSpec> four_tools() {
  return {point_mass_tool("pm3", OutputClass::discrete3, {-1, 0, 1}, {0.1, 0.45, 0.45}),
          point_mass_tool("pm5", OutputClass::discrete5, {-1, -0.5, 0, 0.5, 1}, {0.05, 0.25, 0.3, 0.15, 0.25}),
          gaussian_tool("gauss_neg", -0.2, 0.3), gaussian_tool("gauss_pos", 0.2, 0.1)};
}

inline ClassifierSpec fixed_mlp(int hidden = 50, double lr = 0.01, Optimizer opt = Optimizer::adam, int epochs = 50) {
  ClassifierSpec c;
  c.type = "mlp";
  c.grid.hidden_sizes = {hidden};
  c.grid.learning_rates = {lr};
  c.grid.optimizers = {opt};
  c.grid.epochs = {epochs};
  return c;
}

inline ClassifierSpec classifier(const std::string& label) {
  if (label == "mlp") return fixed_mlp();
  return classifier_from_json({{"type", label}});
}

/// Chunk -> features -> stratified split -> train; returns the test report.
inline TrainOutcome chunked_cell(const ScoreTable& table, std::size_t chunk_size, Normalization norm,
                                 const std::vector<std::string>& tools, const ClassifierSpec& spec,
                                 std::uint64_t seed) {
  const auto chunks =
      sample_chunks(table.n_docs(), chunk_size, default_chunk_count(table.n_docs(), chunk_size), derive_seed(seed, 1));
  const auto data = build_dataset(table, chunks, norm, tools);
  const auto split = split_dataset(data, derive_seed(seed, 2));
  return train_classifier(spec, split, true, derive_seed(seed, 3));
}

inline TrainOutcome monte_carlo_cell(const ScoreTable& table, std::size_t m, std::size_t l,
                                     const ClassifierSpec& spec, std::uint64_t seed) {
  const auto data = monte_carlo_dataset(table, m, l, derive_seed(seed, 1));
  const auto split = split_dataset(data, derive_seed(seed, 2));
  return train_classifier(spec, split, true, derive_seed(seed, 3));
}

}  // namespace fixtures
