// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "toolprint.hpp"

namespace fs = std::filesystem;
using namespace toolprint;
using fixtures::blank_corpus;
using fixtures::four_tools;
using fixtures::gaussian_tool;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Naive moments: extended-precision sums, heap-ordered values, percentile by
// explicit neighbour lookup.

struct NaiveMoments {
  long double v[13];
};

NaiveMoments naive_moments(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  long double sum = 0;
  for (double x : xs) sum += x;
  const long double mean = sum / n;
  long double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const long double var = ss / n;

  std::priority_queue<double, std::vector<double>, std::greater<double>> heap(xs.begin(), xs.end());
  std::vector<double> asc;
  while (!heap.empty()) {
    asc.push_back(heap.top());
    heap.pop();
  }
  double lo = xs[0], hi = xs[0];
  for (double x : xs) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  auto pct = [&](int p) -> long double {
    const long double pos = (long double)p * (n - 1) / 100.0L;
    const std::size_t below = (std::size_t)std::floor(pos);
    const std::size_t above = std::min(below + 1, n - 1);
    const long double w = pos - below;
    return asc[below] * (1 - w) + asc[above] * w;
  };
  const long double median = n % 2 ? (long double)asc[n / 2] : ((long double)asc[n / 2 - 1] + asc[n / 2]) / 2;
  return {{mean, std::sqrt(var), var, median, lo, hi, pct(5), pct(10), pct(25), pct(50), pct(75), pct(90), pct(95)}};
}

bool close_rel(double a, long double b, double rel) {
  return std::fabs((long double)a - b) <= rel * std::max(std::fabs((long double)a), std::fabs(b)) + 1e-15L;
}

Outcome moment_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  std::size_t mismatches = 0;
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(2000);
    std::vector<double> xs(n);
    const int style = static_cast<int>(rng.below(3));
    for (auto& x : xs) {
      if (style == 0) x = rng.uniform(-1, 1);
      else if (style == 1) x = std::round(rng.uniform(-1, 1) * 2) / 2;  // heavy ties
      else x = std::clamp(rng.normal() * 0.4, -1.0, 1.0);
    }
    const auto got = compute_moments(xs).moments();
    const auto want = naive_moments(xs);
    for (int k = 0; k < 13; ++k) {
      const long double diff = std::fabs((long double)got[k] - want.v[k]);
      worst = std::max(worst, (double)diff);
      if (!close_rel(got[k], want.v[k], 1e-9)) ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 10,
          fmt("1000 multisets, %zu mismatches, worst abs diff %.3g, %.2fs", mismatches, worst, secs)};
}

// ---------------------------------------------------------------------------

Outcome gradient_check() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2002);
  double worst = 0;
  for (int draw = 0; draw < 10; ++draw) {
    const std::size_t d = 2 + rng.below(7), h = 2 + rng.below(12), c = 2 + rng.below(4), n = 5 + rng.below(20);
    LabeledDataset data;
    data.feature_names = moment_feature_names(d);
    for (std::size_t k = 0; k < c; ++k) data.class_names.push_back("c" + std::to_string(k));
    std::vector<double> x(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : x) v = rng.normal();
      data.add(x, static_cast<int>(i < c ? i : rng.below(c)));
    }
    MLPModel model(d, h, c);
    std::vector<double> theta(model.parameters().size());
    for (auto& t : theta) t = rng.normal() * 0.5;
    std::vector<std::size_t> batch(n);
    std::iota(batch.begin(), batch.end(), 0);
    std::vector<double> grad(theta.size()), scratch(theta.size());
    model.loss_and_gradient(theta, data, batch, grad);
    const double eps = 1e-5;
    for (std::size_t p = 0; p < theta.size(); ++p) {
      auto tp = theta, tm = theta;
      tp[p] += eps;
      tm[p] -= eps;
      const double numeric =
          (model.loss_and_gradient(tp, data, batch, scratch) - model.loss_and_gradient(tm, data, batch, scratch)) /
          (2 * eps);
      const double rel = std::fabs(grad[p] - numeric) / std::max({std::fabs(grad[p]), std::fabs(numeric), 1e-8});
      worst = std::max(worst, rel);
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 5, fmt("max relative error %.3g over 10 draws, %.2fs", worst, secs)};
}

// ---------------------------------------------------------------------------

Outcome null_indistinguishable() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = blank_corpus(5000);
  const std::vector<ToolSpec> tools{gaussian_tool("twin_a", 0, 0.3), gaussian_tool("twin_b", 0, 0.3)};
  const std::vector<std::string> labels{"mlp", "knn", "svm_linear"};
  std::vector<double> sums(labels.size(), 0.0);
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const auto table = build_score_table(corpus, tools, ScoreMode::text, derive_seed(3003, rep));
    for (std::size_t k = 0; k < labels.size(); ++k)
      sums[k] += fixtures::chunked_cell(table, 200, Normalization::raw, {}, fixtures::classifier(labels[k]),
                                        derive_seed(3004, rep))
                     .test.macro_f1;
  }
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const double mean = sums[k] / 20;
    ok = ok && mean >= 0.35 && mean <= 0.65;
    detail += fmt("%s=%.3f ", labels[k].c_str(), mean);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 180, detail + fmt("(mean test macro-F1, 20 reps, %.1fs)", secs)};
}

// ---------------------------------------------------------------------------
// The four-tool fixture at 10,000 documents is shared by several criteria.

const ScoreTable& four_tool_table() {
  static const ScoreTable table = build_score_table(blank_corpus(10000), four_tools(), ScoreMode::text, 4004);
  return table;
}

Outcome separability() {
  const auto t0 = std::chrono::steady_clock::now();
  const double f1 =
      fixtures::chunked_cell(four_tool_table(), 500, Normalization::raw, {}, fixtures::fixed_mlp(), 4005).test.macro_f1;
  const double secs = seconds_since(t0);
  return {f1 >= 0.95 && secs < 180, fmt("MLP test macro-F1 %.3f at chunk size 500, %.1fs", f1, secs)};
}

Outcome chunk_trend() {
  const double small =
      fixtures::chunked_cell(four_tool_table(), 50, Normalization::raw, {}, fixtures::fixed_mlp(), 5005).test.macro_f1;
  const double large =
      fixtures::chunked_cell(four_tool_table(), 1000, Normalization::raw, {}, fixtures::fixed_mlp(), 5005).test.macro_f1;
  return {large >= small - 0.02, fmt("F1(cs=50)=%.3f F1(cs=1000)=%.3f", small, large)};
}

Outcome normalization_trend() {
  const std::vector<std::string> continuous{"gauss_neg", "gauss_pos"};
  const double raw = fixtures::chunked_cell(four_tool_table(), 500, Normalization::raw, continuous,
                                            fixtures::fixed_mlp(), 6006)
                         .test.macro_f1;
  const double n3 = fixtures::chunked_cell(four_tool_table(), 500, Normalization::N3, continuous,
                                           fixtures::fixed_mlp(), 6006)
                        .test.macro_f1;
  return {n3 <= raw + 0.02, fmt("continuous tools: F1(raw)=%.3f F1(N3)=%.3f", raw, n3)};
}

// ---------------------------------------------------------------------------

Outcome dcor_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(7007);
  std::vector<double> x(1000), y(1000), u(1000), v(1000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = 2 * x[i] + 3;
    u[i] = rng.uniform();
    v[i] = rng.uniform();
  }
  const double self = distance_correlation(x, x);
  const double affine = distance_correlation(x, y);
  const double indep = distance_correlation(u, v);
  const auto table = build_score_table(blank_corpus(1000), four_tools(), ScoreMode::text, 7008);
  const auto m = dcor_matrix(table);
  bool matrix_ok = true;
  for (std::size_t i = 0; i < m.values.size(); ++i)
    for (std::size_t j = 0; j < m.values.size(); ++j) {
      if (m.values[i][j] != m.values[j][i]) matrix_ok = false;
      if (i == j && std::fabs(m.values[i][i] - 1.0) > 1e-9) matrix_ok = false;
    }
  const double secs = seconds_since(t0);
  const bool ok = std::fabs(self - 1) <= 1e-9 && std::fabs(affine - 1) <= 1e-6 && indep < 0.1 && matrix_ok && secs < 5;
  return {ok, fmt("dcor(x,x)=%.12f dcor(x,2x+3)=%.9f independent=%.4f matrix %s, %.2fs", self, affine, indep,
                  matrix_ok ? "symmetric/unit-diagonal" : "BROKEN", secs)};
}

// ---------------------------------------------------------------------------

Outcome f1_golden() {
  // Hand-derived: F1_0 = 16/21, F1_1 = 14/19, macro = 598/798.
  const double expected = (16.0 / 21.0 + 14.0 / 19.0) / 2.0;
  const double got = metrics_from_confusion({{8, 2}, {3, 7}}).macro_f1;
  Rng rng(8008);
  const int k = 4;
  std::vector<int> truth(200), pred(200);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i] = static_cast<int>(rng.below(k));
    pred[i] = rng.uniform() < 0.6 ? truth[i] : static_cast<int>(rng.below(k));
  }
  const double base = metrics_from_predictions(truth, pred, k).macro_f1;
  double worst = 0;
  std::vector<int> perm(k);
  for (int r = 0; r < 50; ++r) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<int> t2(truth.size()), p2(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      t2[i] = perm[static_cast<std::size_t>(truth[i])];
      p2[i] = perm[static_cast<std::size_t>(pred[i])];
    }
    worst = std::max(worst, std::fabs(metrics_from_predictions(t2, p2, k).macro_f1 - base));
  }
  return {std::fabs(got - expected) <= 1e-4 && worst <= 1e-12,
          fmt("macro-F1 %.6f (expected %.6f), max drift over 50 relabelings %.2g", got, expected, worst)};
}

// ---------------------------------------------------------------------------

ScoreTable table_of(std::vector<std::vector<double>> rows) {
  ScoreTable t;
  for (std::size_t i = 0; i < rows.size(); ++i) t.tools.push_back("t" + std::to_string(i + 1));
  for (std::size_t d = 0; d < rows[0].size(); ++d) t.doc_ids.push_back("doc" + std::to_string(d));
  for (const auto& r : rows) t.scores.insert(t.scores.end(), r.begin(), r.end());
  return t;
}

Outcome majority_voting() {
  const auto same = table_of({{0.3, -0.7, 0.9, 0.0}, {0.3, -0.7, 0.9, 0.0}, {0.3, -0.7, 0.9, 0.0}});
  bool identical_ok = true;
  for (auto n : {Normalization::raw, Normalization::N1, Normalization::N3, Normalization::N5, Normalization::N10})
    for (double r : majority_agreement(same, n).rates) identical_ok = identical_ok && r == 1.0;

  // N1 buckets:   doc0          doc1             doc2
  //   t1        .9 -> 1      -.9 -> -1        .3 -> 0
  //   t2        .7 -> 1      -.6 -> -1       -.2 -> 0
  //   t3        .6 -> 1       .2 ->  0        .4 -> 0
  //   t4       -.8 -> -1      .0 ->  0        .0 -> 0
  //   t5        .1 -> 0       .8 ->  1       -.7 -> -1
  // votes:          1        tie(-1,0) -> 0       0
  const auto hand = table_of({{0.9, -0.9, 0.3}, {0.7, -0.6, -0.2}, {0.6, 0.2, 0.4}, {-0.8, 0.0, 0.0}, {0.1, 0.8, -0.7}});
  const auto r = majority_agreement(hand, Normalization::N1);
  const std::vector<double> want{2.0 / 3.0, 2.0 / 3.0, 3.0 / 3.0, 2.0 / 3.0, 0.0 / 3.0};
  const auto rx = majority_agreement(hand, Normalization::N1, true);
  const std::vector<double> want_x{2.0 / 2.0, 2.0 / 2.0, 2.0 / 2.0, 1.0 / 2.0, 0.0 / 2.0};
  const bool hand_ok = r.rates == want && r.n_ties == 1 && r.n_documents == 3 && rx.rates == want_x;
  return {identical_ok && hand_ok, fmt("identical rows %s; 5x3 table rates [%.4f %.4f %.4f %.4f %.4f] %s",
                                       identical_ok ? "all 1.0" : "NOT 1.0", r.rates[0], r.rates[1], r.rates[2],
                                       r.rates[3], r.rates[4], hand_ok ? "match" : "MISMATCH")};
}

// ---------------------------------------------------------------------------

LabeledDataset points(const std::vector<std::vector<double>>& xs, const std::vector<int>& ys) {
  LabeledDataset d;
  d.feature_names = moment_feature_names(xs[0].size());
  d.class_names = {"a", "b"};
  for (std::size_t i = 0; i < xs.size(); ++i) d.add(xs[i], ys[i]);
  return d;
}

double accuracy(const auto& model, const LabeledDataset& d) { return evaluate(model, d).accuracy; }

Outcome classifier_sanity() {
  const auto xor_data = points({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {0, 0, 1, 1});
  const double linear = accuracy(train_svm(xor_data, KernelType::linear), xor_data);
  const double rbf = accuracy(train_svm(xor_data, KernelType::rbf), xor_data);
  const auto line = points({{0}, {1}, {10}, {11}}, {0, 0, 1, 1});
  const double tree = accuracy(train_tree(line, 1), line);
  Rng rng(1010);
  std::vector<std::vector<double>> xs(60, std::vector<double>(3));
  std::vector<int> ys(60);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (auto& v : xs[i]) v = rng.uniform();
    ys[i] = static_cast<int>(rng.below(2));
  }
  const auto scattered = points(xs, ys);
  const double knn = accuracy(train_knn(scattered, 1), scattered);
  return {linear <= 0.75 && rbf == 1.0 && tree == 1.0 && knn == 1.0,
          fmt("XOR linear=%.2f rbf=%.2f; tree depth 1=%.2f; knn k=1=%.2f", linear, rbf, tree, knn)};
}

// ---------------------------------------------------------------------------

Outcome monte_carlo() {
  ClassifierSpec svm;
  svm.type = "svm";
  const auto full = fixtures::monte_carlo_cell(four_tool_table(), 100, 15, svm, 1111);
  const auto one = fixtures::monte_carlo_cell(four_tool_table(), 100, 1, svm, 1111);
  const double f15 = full.test.macro_f1, f1 = one.test.macro_f1;
  return {f15 >= 0.9 && f15 - f1 >= 0.05,
          fmt("SVM macro-F1 l=15: %.3f, l=1 (%s): %.3f", f15, one.model.feature_names[0].c_str(), f1)};
}

// ---------------------------------------------------------------------------

std::string summary_without_timing(const fs::path& dir) {
  auto j = nlohmann::json::parse(csv::read_file((dir / "summary.json").string()));
  j.erase("timing");
  return j.dump(2);
}

Outcome end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path config_path = fs::path(TOOLPRINT_SOURCE_DIR) / "configs" / "demo.json";
  const auto config = load_config(config_path);
  const fs::path base = fs::temp_directory_path() / "toolprint-acceptance";
  fs::remove_all(base);
  std::size_t cells = 0, failed = 0;
  for (const char* run : {"first", "second"}) {
    const auto bundle = run_experiment(config);
    cells = bundle.cells.size();
    failed += bundle.n_failed();
    emit_report(bundle, base / run);
  }
  const bool same = summary_without_timing(base / "first") == summary_without_timing(base / "second");
  const double secs = seconds_since(t0);
  return {same && secs < 300, fmt("demo config, %zu cells x 2 runs (%zu failed cells), summaries %s, %.1fs total",
                                  cells, failed, same ? "identical" : "DIFFER", secs)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"moment oracle equivalence", moment_oracle},
      {"mlp gradient check", gradient_check},
      {"null indistinguishability", null_indistinguishable},
      {"four-tool separability", separability},
      {"chunk-size trend", chunk_trend},
      {"normalization trend", normalization_trend},
      {"distance correlation identities", dcor_identities},
      {"f1 golden value and relabeling invariance", f1_golden},
      {"majority voting", majority_voting},
      {"classifier sanity fixtures", classifier_sanity},
      {"monte carlo mode", monte_carlo},
      {"end-to-end determinism", end_to_end},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures ? 1 : 0;
}
