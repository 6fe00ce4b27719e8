#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "toolprint/dataset.hpp"
#include "toolprint/features.hpp"

namespace fs = std::filesystem;
using namespace toolprint;
using Catch::Approx;

namespace {

ScoreTable table_of(std::vector<std::vector<double>> rows) {
  ScoreTable t;
  for (std::size_t i = 0; i < rows.size(); ++i) t.tools.push_back("t" + std::to_string(i));
  for (std::size_t d = 0; d < rows[0].size(); ++d) t.doc_ids.push_back("doc" + std::to_string(d));
  for (const auto& r : rows) t.scores.insert(t.scores.end(), r.begin(), r.end());
  return t;
}

}  // namespace

TEST_CASE("compute_moments reference values") {
  const auto m = compute_moments(std::vector<double>{-1, 0, 1});
  CHECK(m.mean == 0.0);
  CHECK(m.var == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m.std == Approx(0.816497).margin(1e-6));
  CHECK(m.min == -1.0);
  CHECK(m.max == 1.0);
  CHECK(m.median == 0.0);

  const auto q = compute_moments(std::vector<double>{3, 1, 0, 2});
  CHECK(q.p25 == Approx(0.75));
  CHECK(q.p50 == Approx(1.5));
  CHECK(q.p75 == Approx(2.25));
  CHECK(q.median == q.p50);

  const auto one = compute_moments(std::vector<double>{0.4});
  for (double v : one.moments()) CHECK(v == (v == 0.0 ? 0.0 : 0.4));
  CHECK(one.std == 0.0);

  CHECK_THROWS_AS(compute_moments(std::vector<double>{}), Error);
  CHECK(moment_feature_names() == std::vector<std::string>{"mean", "std", "var", "median", "min", "max", "p5", "p10",
                                                           "p25", "p50", "p75", "p90", "p95"});
}

TEST_CASE("moment invariants over 10^4 random inputs") {
  Rng rng(404);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<double> xs(n);
    const bool discrete = rng.below(2) == 0;
    for (auto& x : xs) x = discrete ? std::round(rng.uniform(-2, 2)) / 2 : rng.uniform(-1, 1);
    const auto m = compute_moments(xs);
    const auto v = m.moments();
    for (double x : v) REQUIRE(std::isfinite(x));
    REQUIRE(m.min <= m.p5);
    REQUIRE(m.p5 <= m.p10);
    REQUIRE(m.p10 <= m.p25);
    REQUIRE(m.p25 <= m.p50);
    REQUIRE(m.p50 <= m.p75);
    REQUIRE(m.p75 <= m.p90);
    REQUIRE(m.p90 <= m.p95);
    REQUIRE(m.p95 <= m.max);
    REQUIRE(m.median == m.p50);
    REQUIRE(std::abs(m.var - m.std * m.std) <= 1e-12);

    // Order invariance.
    auto shuffled = xs;
    rng.shuffle(shuffled);
    const auto s = compute_moments(shuffled).moments();
    for (std::size_t k = 0; k < v.size(); ++k) REQUIRE(std::abs(s[k] - v[k]) <= 1e-15 * (1 + std::abs(v[k])) * n);
  }
}

TEST_CASE("entropy variants") {
  CHECK(compute_entropy(std::vector<double>(7, 0.3), EntropyVariant::hist) == 0.0);
  CHECK(compute_entropy(std::vector<double>(7, 0.3), EntropyVariant::value) == 0.0);
  std::vector<double> per_bin;
  for (int b = 0; b < 10; ++b) per_bin.push_back(-0.9 + 0.2 * b);
  CHECK(compute_entropy(per_bin, EntropyVariant::hist) == Approx(std::log(10.0)).epsilon(1e-12));
  CHECK(compute_entropy(std::vector<double>{1, 1, -1, -1}, EntropyVariant::value) == Approx(0.693147).margin(1e-6));
  // Edges: -1 falls in the first bin, +1 in the last.
  CHECK(compute_entropy(std::vector<double>{-1, 1}, EntropyVariant::hist) == Approx(std::log(2.0)));
  CHECK(compute_entropy(std::vector<double>{0.95, 1.0}, EntropyVariant::hist) == 0.0);
  CHECK_THROWS_AS(compute_entropy(std::vector<double>{}, EntropyVariant::value), Error);
}

TEST_CASE("sample_chunks") {
  const auto full = sample_chunks(100, 100, 1, 7);
  REQUIRE(full.size() == 1);
  auto sorted = full[0].doc_indices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 100; ++i) CHECK(sorted[i] == i);

  const auto a = sample_chunks(500, 40, 25, 3), b = sample_chunks(500, 40, 25, 3);
  REQUIRE(a.size() == 25);
  for (std::size_t c = 0; c < a.size(); ++c) {
    CHECK(a[c].doc_indices == b[c].doc_indices);
    CHECK(a[c].doc_indices.size() == 40);
    CHECK(std::set<std::size_t>(a[c].doc_indices.begin(), a[c].doc_indices.end()).size() == 40);
    for (auto i : a[c].doc_indices) CHECK(i < 500);
  }
  // Chunk c depends only on (seed, c).
  const auto more = sample_chunks(500, 40, 30, 3);
  for (std::size_t c = 0; c < a.size(); ++c) CHECK(more[c].doc_indices == a[c].doc_indices);

  CHECK_THROWS_AS(sample_chunks(10, 50, 1, 0), Error);
  CHECK_THROWS_AS(sample_chunks(10, 0, 1, 0), Error);
  CHECK(default_chunk_count(1000, 300) == 6);
  CHECK(default_chunk_count(1000, 300, 5) == 15);
}

TEST_CASE("sample_chunks draws indices uniformly") {
  std::vector<std::size_t> hits(20, 0);
  for (const auto& c : sample_chunks(20, 5, 4000, 12))
    for (auto i : c.doc_indices) ++hits[i];
  // Expected 1000 per index; 5 sigma is about 150.
  for (auto h : hits) CHECK(std::abs(static_cast<double>(h) - 1000.0) < 150.0);
}

TEST_CASE("build_dataset counting and identical rows") {
  Rng rng(1);
  std::vector<double> r0(200), r2(200), r3(200);
  for (auto& v : r0) v = rng.uniform(-1, 1);
  for (auto& v : r2) v = rng.uniform(-1, 1);
  for (auto& v : r3) v = rng.uniform(-1, 1);
  const auto table = table_of({r0, r0, r2, r3});
  const auto chunks = sample_chunks(200, 20, 10, 5);
  const auto ds = build_dataset(table, chunks, Normalization::raw);
  CHECK(ds.size() == 40);
  CHECK(ds.dim() == 13);
  CHECK(ds.class_counts() == std::vector<std::size_t>{10, 10, 10, 10});
  for (std::size_t i = 0; i < ds.size(); i += 4) {
    CHECK(ds.labels[i] == 0);
    CHECK(std::equal(ds.row(i).begin(), ds.row(i).end(), ds.row(i + 1).begin()));
  }
  CHECK(build_dataset(table, chunks, Normalization::raw) == ds);

  const std::vector<std::string> two{"t3", "t0"};
  const auto sub = build_dataset(table, chunks, Normalization::raw, two);
  CHECK(sub.class_names == std::vector<std::string>{"t0", "t3"});
  CHECK(sub.size() == 20);
  const std::vector<std::string> one{"t1"};
  CHECK_THROWS_AS(build_dataset(table, chunks, Normalization::raw, one), Error);
  const std::vector<std::string> unknown{"t1", "nope"};
  CHECK_THROWS_AS(build_dataset(table, chunks, Normalization::raw, unknown), Error);
}

TEST_CASE("N1 on a binary tool yields only the moments of {-1,+1} multisets") {
  // Hand-computed 13-vectors for the four multisets of size 3.
  const double s = std::sqrt(8.0 / 9.0);
  const std::vector<std::vector<double>> allowed{
      {-1, 0, 0, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
      {-1.0 / 3, s, 8.0 / 9, -1, -1, 1, -1, -1, -1, -1, 0, 0.6, 0.8},
      {1.0 / 3, s, 8.0 / 9, 1, -1, 1, -0.8, -0.6, 0, 1, 1, 1, 1},
      {1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
  };
  const auto table = build_score_table(
      fixtures::blank_corpus(300),
      std::vector<ToolSpec>{fixtures::point_mass_tool("bin", OutputClass::binary, {-1, 1}, {0.5, 0.5}),
                            fixtures::gaussian_tool("g", 0, 0.5)},
      ScoreMode::text, 2);
  const auto ds = build_dataset(table, sample_chunks(300, 3, 400, 6), Normalization::N1);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.labels[i] != 0) continue;
    const auto row = ds.row(i);
    bool matched = false;
    for (std::size_t a = 0; a < allowed.size(); ++a) {
      bool eq = true;
      for (std::size_t k = 0; k < 13; ++k) eq = eq && std::abs(row[k] - allowed[a][k]) < 1e-12;
      if (eq) {
        matched = true;
        seen.insert(a);
      }
    }
    CHECK(matched);
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("monte_carlo_dataset") {
  const auto table = build_score_table(fixtures::blank_corpus(1000), fixtures::four_tools(), ScoreMode::text, 1);
  const auto ds = monte_carlo_dataset(table, 10, 15, 4);
  CHECK(ds.size() == 40);
  CHECK(ds.dim() == 15);
  CHECK(ds.feature_names == std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end()));
  CHECK(monte_carlo_dataset(table, 10, 15, 4) == ds);
  CHECK_FALSE(monte_carlo_dataset(table, 10, 15, 5) == ds);

  // Subsets project the 15-vector computed from the same draws.
  const auto small = monte_carlo_dataset(table, 10, 4, 4);
  REQUIRE(small.dim() == 4);
  for (std::size_t f = 0; f < 4; ++f) {
    const auto k = static_cast<std::size_t>(
        std::find(kFeatureNames.begin(), kFeatureNames.end(), small.feature_names[f]) - kFeatureNames.begin());
    REQUIRE(k < 15);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(small.row(i)[f] == ds.row(i)[k]);
  }
  CHECK_THROWS_AS(monte_carlo_dataset(table, 10, 0, 4), Error);
  CHECK_THROWS_AS(monte_carlo_dataset(table, 10, 16, 4), Error);

  // ceil(1%) of 150 documents is 2 draws: value entropy never exceeds ln 2.
  const auto tiny = build_score_table(fixtures::blank_corpus(150), fixtures::four_tools(), ScoreMode::text, 1);
  const auto tds = monte_carlo_dataset(tiny, 20, 15, 1);
  for (std::size_t i = 0; i < tds.size(); ++i) CHECK(tds.row(i)[14] <= std::log(2.0) + 1e-12);
}

TEST_CASE("standard_scale") {
  Rng rng(8);
  LabeledDataset d;
  d.feature_names = {"a", "b", "const"};
  d.class_names = {"x", "y"};
  for (int i = 0; i < 50; ++i) {
    const double row[] = {rng.uniform(-5, 5), rng.normal() * 1e-3 + 7, 2.5};
    d.add(row, i % 2);
  }
  const auto [scaled, params] = standard_scale(d);
  for (std::size_t k = 0; k < 3; ++k) {
    double mean = 0, var = 0;
    for (std::size_t i = 0; i < scaled.size(); ++i) mean += scaled.row(i)[k];
    mean /= 50;
    for (std::size_t i = 0; i < scaled.size(); ++i) var += std::pow(scaled.row(i)[k] - mean, 2);
    const double sd = std::sqrt(var / 50);
    CHECK(std::abs(mean) < 1e-9);
    if (k == 2) {
      for (std::size_t i = 0; i < scaled.size(); ++i) CHECK(scaled.row(i)[k] == 0.0);
    } else {
      CHECK(std::abs(sd - 1) < 1e-9);
    }
  }
  CHECK(params.apply(d) == scaled);
  CHECK(scaler_from_json(to_json(params)).apply(d) == scaled);
  CHECK_THROWS_AS(fit_scaler(d.subset(std::vector<std::size_t>{0})), Error);
}

TEST_CASE("dataset CSV and manifest round trip") {
  const auto table = build_score_table(fixtures::blank_corpus(400), fixtures::four_tools(), ScoreMode::text, 3);
  const auto ds = build_dataset(table, sample_chunks(400, 50, 8, 1), Normalization::N5);
  const auto dir = fs::temp_directory_path() / "toolprint-test-features";
  fs::create_directories(dir);
  save_dataset(ds, dir / "data.csv", {{"norm", "N5"}, {"chunk_size", 50}});
  const auto back = load_dataset(dir / "data.csv");
  CHECK(back == ds);
  CHECK(dataset_csv(ds).starts_with("label,f0,f1,"));
  const auto manifest = nlohmann::json::parse(csv::read_file((dir / "data.manifest.json").string()));
  CHECK(manifest["meta"]["norm"] == "N5");
  CHECK(manifest["feature_names"].size() == 13);
}

TEST_CASE("dataset schema checks") {
  LabeledDataset d;
  d.feature_names = {"a"};
  d.class_names = {"x"};
  const double two[] = {1, 2};
  CHECK_THROWS_AS(d.add(two, 0), Error);
  d.add(std::span<const double>(two, 1), 3);
  CHECK_THROWS_AS(d.validate(), Error);
}
