// toolprint command-line front end.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toolprint.hpp"

namespace fs = std::filesystem;
using namespace toolprint;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") std::cout << text;
  else csv::write_file(out, text);
}

nlohmann::json read_json(const std::string& path) { return nlohmann::json::parse(csv::read_file(path)); }

struct ScoreArgs {
  std::string corpus, tools, mode = "text", out;
  std::size_t synthetic = 0;
  std::uint64_t seed = 0;
};

int cmd_score(const ScoreArgs& a) {
  Corpus corpus;
  if (!a.corpus.empty()) {
    corpus = load_corpus(a.corpus);
  } else if (a.synthetic) {
    SynthCorpusSpec spec;
    spec.n_docs = a.synthetic;
    corpus = generate_synthetic_corpus(spec, derive_seed(a.seed, "corpus"));
  } else {
    throw ConfigError("score: need --corpus or --synthetic");
  }
  const auto tools = tool_specs_from_json(read_json(a.tools));
  const auto table = build_score_table(corpus, tools, parse_score_mode(a.mode), a.seed);
  if (a.out.empty()) std::cout << score_table_csv(table);
  else save_score_table(table, a.out);
  return 0;
}

struct NormalizeArgs {
  std::string scores, scheme = "N3", out;
};

int cmd_normalize(const NormalizeArgs& a) {
  auto table = load_score_table(a.scores);
  const auto scheme = parse_normalization(a.scheme);
  for (auto& v : table.scores) v = normalize(v, scheme);
  if (a.out.empty()) std::cout << score_table_csv(table);
  else save_score_table(table, a.out);
  return 0;
}

struct FeaturesArgs {
  std::string scores, norm = "raw", tools, out;
  std::size_t chunk_size = 200, n_chunks = 0, oversample = 2, mc_m = 0, mc_l = kMonteCarloFeatureCount;
  std::uint64_t seed = 0;
};

int cmd_features(const FeaturesArgs& a) {
  const auto table = load_score_table(a.scores);
  const auto norm = parse_normalization(a.norm);
  const auto filter = split_list(a.tools);
  LabeledDataset data;
  nlohmann::json meta{{"norm", a.norm}, {"seed", a.seed}, {"source", a.scores}};
  if (a.mc_m) {
    data = monte_carlo_dataset(table, a.mc_m, a.mc_l, a.seed, norm, filter);
    meta["monte_carlo"] = {{"m", a.mc_m}, {"feature_subset_size", a.mc_l}};
  } else {
    const auto n = a.n_chunks ? a.n_chunks : default_chunk_count(table.n_docs(), a.chunk_size, a.oversample);
    const auto chunks = sample_chunks(table.n_docs(), a.chunk_size, n, a.seed);
    data = build_dataset(table, chunks, norm, filter);
    meta["chunk_size"] = a.chunk_size;
    meta["n_chunks"] = n;
  }
  if (a.out.empty()) std::cout << dataset_csv(data);
  else save_dataset(data, a.out, meta);
  return 0;
}

struct TrainArgs {
  std::string data, classifier = "mlp", config, out, optimizer = "adam", gamma;
  int k = 5, max_depth = 5, hidden = 50, epochs = 50, batch = 32;
  double c = 1.0, lr = 0.01;
  bool sweep = false, no_scaler = false;
  std::uint64_t seed = 0;
};

ClassifierSpec spec_from_args(const TrainArgs& a) {
  if (!a.config.empty()) return classifier_from_json(read_json(a.config));
  nlohmann::json j{{"type", a.classifier}, {"k", a.k}, {"max_depth", a.max_depth}, {"c", a.c}};
  if (!a.gamma.empty()) j["gamma"] = a.gamma == "scale" ? nlohmann::json("scale") : nlohmann::json(std::stod(a.gamma));
  auto spec = classifier_from_json(j);
  if (spec.type == "mlp" && !a.sweep) {
    spec.grid.hidden_sizes = {a.hidden};
    spec.grid.learning_rates = {a.lr};
    spec.grid.optimizers = {a.optimizer == "sgd" ? Optimizer::sgd : Optimizer::adam};
    spec.grid.epochs = {a.epochs};
    spec.grid.batch_size = a.batch;
  }
  return spec;
}

int cmd_train(const TrainArgs& a) {
  const auto data = load_dataset(a.data);
  const auto split = split_dataset(data, derive_seed(a.seed, "split"));
  auto outcome = train_classifier(spec_from_args(a), split, !a.no_scaler, a.seed);
  if (!a.out.empty()) save_model(outcome.model, a.out);
  nlohmann::json report{{"type", outcome.model.type()},
                        {"hyperparams", outcome.model.hyperparams},
                        {"n_train", split.train.size()},
                        {"n_dev", split.dev.size()},
                        {"n_test", split.test.size()},
                        {"dev", to_json(outcome.dev)},
                        {"test", to_json(outcome.test)},
                        {"leaderboard", outcome.leaderboard}};
  std::cout << report.dump(2) << "\n";
  return 0;
}

struct EvalArgs {
  std::string model, data, part = "all";
  std::uint64_t seed = 0;
};

int cmd_eval(const EvalArgs& a) {
  const auto model = load_model(a.model);
  const auto data = load_dataset(a.data);
  LabeledDataset target;
  if (a.part == "all") {
    target = data;
  } else {
    auto split = split_dataset(data, derive_seed(a.seed, "split"));
    if (a.part == "train") target = std::move(split.train);
    else if (a.part == "dev") target = std::move(split.dev);
    else if (a.part == "test") target = std::move(split.test);
    else throw ConfigError("eval: unknown split '" + a.part + "'");
  }
  if (target.dim() != model.feature_names.size())
    throw Error("eval: data has " + std::to_string(target.dim()) + " features, model expects " +
                std::to_string(model.feature_names.size()));
  std::cout << to_json(evaluate(model, target)).dump(2) << "\n";
  return 0;
}

struct TableArgs {
  std::string scores, out, svg, norm = "N3";
  bool exclude_ties = false, json = false;
};

int cmd_dcor(const TableArgs& a) {
  const auto m = dcor_matrix(load_score_table(a.scores));
  emit(a.json ? to_json(m).dump(2) + "\n" : dcor_csv(m), a.out);
  if (!a.svg.empty()) csv::write_file(a.svg, svg::heatmap(m, "Distance correlation"));
  return 0;
}

int cmd_vote(const TableArgs& a) {
  const auto r = majority_agreement(load_score_table(a.scores), parse_normalization(a.norm), a.exclude_ties);
  if (a.json) {
    emit(to_json(r).dump(2) + "\n", a.out);
  } else {
    std::map<std::string, std::vector<AgreementReport>> one{{"input", {r}}};
    emit(agreement_csv(one, r.scheme), a.out);
  }
  return 0;
}

int cmd_describe(const TableArgs& a) {
  const auto stats = describe(load_score_table(a.scores));
  if (a.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : stats) j.push_back(to_json(s));
    emit(j.dump(2) + "\n", a.out);
  } else {
    emit(describe_csv(stats), a.out);
  }
  if (!a.svg.empty()) csv::write_file(a.svg, svg::boxplot(stats, "Score distributions"));
  return 0;
}

struct RunArgs {
  std::string config, out = "report", formats = "csv,json,svg,dot";
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  bool seed_given = false;
};

int cmd_run(const RunArgs& a, bool monte_carlo) {
  ExperimentConfig config;
  std::set<std::string> formats;
  try {
    config = load_config(a.config);
    formats = parse_formats(a.formats);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (a.seed_given) config.seed = a.seed;
  if (monte_carlo) config.mode = RunMode::monte_carlo;
  const auto workers = resolve_workers(a.workers ? a.workers : config.workers);
  const auto bundle = run_experiment(config, workers);
  const auto files = emit_report(bundle, a.out, formats);
  std::cerr << "toolprint: " << bundle.cells.size() << " cells, " << bundle.n_failed() << " failed, "
            << files.size() << " files in " << a.out << "\n";
  for (const auto& c : bundle.cells)
    if (!c.ok) std::cerr << "  " << c.at.id() << ": " << c.error << "\n";
  return bundle.n_failed() ? 1 : 0;
}

struct ReportArgs {
  std::string bundle, out = "report", formats = "csv,json,svg,dot";
};

int cmd_report(const ReportArgs& a) {
  const auto files = emit_report(load_bundle(a.bundle), a.out, parse_formats(a.formats));
  for (const auto& f : files) std::cout << (fs::path(a.out) / f).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolprint: identify sentiment tools from their score distributions"};
  app.require_subcommand(1);

  ScoreArgs score;
  auto* s = app.add_subcommand("score", "score a corpus with a set of tools");
  s->add_option("--corpus", score.corpus, "JSONL corpus");
  s->add_option("--synthetic", score.synthetic, "generate a synthetic corpus with this many documents");
  s->add_option("--tools", score.tools, "JSON array of tool specs")->required();
  s->add_option("--mode", score.mode, "text | sentence_mean");
  s->add_option("--seed", score.seed);
  s->add_option("--out", score.out, "score table CSV (manifest written alongside)");

  NormalizeArgs norm;
  auto* n = app.add_subcommand("normalize", "map a score table onto a discrete scale");
  n->add_option("--scores", norm.scores)->required();
  n->add_option("--scheme", norm.scheme, "raw | N1 | N3 | N5 | N10");
  n->add_option("--out", norm.out);

  FeaturesArgs feat;
  auto* f = app.add_subcommand("features", "build a labeled moment dataset from a score table");
  f->add_option("--scores", feat.scores)->required();
  f->add_option("--chunk-size", feat.chunk_size);
  f->add_option("--n-chunks", feat.n_chunks, "default: oversample * n_docs / chunk_size");
  f->add_option("--oversample", feat.oversample);
  f->add_option("--norm", feat.norm);
  f->add_option("--tools", feat.tools, "comma-separated subset of tools");
  f->add_option("--mc-m", feat.mc_m, "Monte Carlo samples per tool (switches to Monte Carlo features)");
  f->add_option("--mc-features", feat.mc_l, "Monte Carlo feature subset size");
  f->add_option("--seed", feat.seed);
  f->add_option("--out", feat.out);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "split, train and report one classifier");
  t->add_option("--data", train.data)->required();
  t->add_option("--classifier", train.classifier, "mlp | knn | svm_linear | svm_rbf | tree");
  t->add_option("--classifier-config", train.config, "JSON classifier spec (overrides flags)");
  t->add_option("--k", train.k);
  t->add_option("--c", train.c);
  t->add_option("--gamma", train.gamma, "number or 'scale'");
  t->add_option("--max-depth", train.max_depth);
  t->add_option("--hidden", train.hidden);
  t->add_option("--lr", train.lr);
  t->add_option("--optimizer", train.optimizer, "sgd | adam");
  t->add_option("--epochs", train.epochs);
  t->add_option("--batch", train.batch);
  t->add_flag("--sweep", train.sweep, "sweep the default MLP grid");
  t->add_flag("--no-scaler", train.no_scaler);
  t->add_option("--seed", train.seed);
  t->add_option("--out", train.out, "model JSON");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "evaluate a saved model");
  e->add_option("--model", ev.model)->required();
  e->add_option("--data", ev.data)->required();
  e->add_option("--split", ev.part, "all | train | dev | test");
  e->add_option("--seed", ev.seed, "seed used at training time");

  TableArgs dc, vote, desc;
  auto* d = app.add_subcommand("dcor", "pairwise distance correlation between tools");
  d->add_option("--scores", dc.scores)->required();
  d->add_option("--out", dc.out);
  d->add_option("--svg", dc.svg);
  d->add_flag("--json", dc.json);
  auto* v = app.add_subcommand("vote", "majority-vote agreement per tool");
  v->add_option("--scores", vote.scores)->required();
  v->add_option("--norm", vote.norm);
  v->add_flag("--exclude-ties", vote.exclude_ties);
  v->add_option("--out", vote.out);
  v->add_flag("--json", vote.json);
  auto* ds = app.add_subcommand("describe", "per-tool descriptive statistics");
  ds->add_option("--scores", desc.scores)->required();
  ds->add_option("--out", desc.out);
  ds->add_option("--svg", desc.svg);
  ds->add_flag("--json", desc.json);

  RunArgs run, mc;
  auto add_run = [&](CLI::App* sub, RunArgs& r) {
    sub->add_option("--config", r.config)->required();
    auto* seed = sub->add_option("--seed", r.seed, "override the config seed");
    sub->add_option("--workers", r.workers, "default: TOOLPRINT_WORKERS or hardware threads");
    sub->add_option("--out", r.out, "output directory");
    sub->add_option("--formats", r.formats, "subset of csv,json,svg,dot");
    sub->callback([seed, &r] { r.seed_given = seed->count() > 0; });
  };
  auto* r = app.add_subcommand("run", "run an experiment grid");
  add_run(r, run);
  auto* m = app.add_subcommand("mc", "run an experiment in Monte Carlo mode");
  add_run(m, mc);

  ReportArgs rep;
  auto* rp = app.add_subcommand("report", "re-emit artifacts from a summary.json");
  rp->add_option("--bundle", rep.bundle)->required();
  rp->add_option("--out", rep.out);
  rp->add_option("--formats", rep.formats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex) == 0 ? 0 : 2;
  }

  try {
    if (*s) return cmd_score(score);
    if (*n) return cmd_normalize(norm);
    if (*f) return cmd_features(feat);
    if (*t) return cmd_train(train);
    if (*e) return cmd_eval(ev);
    if (*d) return cmd_dcor(dc);
    if (*v) return cmd_vote(vote);
    if (*ds) return cmd_describe(desc);
    if (*r) return cmd_run(run, false);
    if (*m) return cmd_run(mc, true);
    if (*rp) return cmd_report(rep);
  } catch (const ConfigError& ex) {
    std::cerr << "toolprint: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "toolprint: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
