#include "app.hpp"

#include <cstdlib>
#include <sstream>

#include <CLI/CLI.hpp>

#include "commands.hpp"
#include "neurochaos/errors.hpp"

#ifndef NEUROCHAOS_DEFAULT_DATA_DIR
#define NEUROCHAOS_DEFAULT_DATA_DIR "data/uci"
#endif

namespace neurochaos::cli {
namespace {

struct Flags {
  std::string config;
  std::string data_dir;
  std::string dataset;
  std::string fixture;
  std::string label_column;
  bool no_header = false;
  std::vector<std::size_t> train_counts;
  double train_fraction = 0.8;
  std::string normalization;
  std::vector<std::string> archs;
  std::vector<std::string> classifiers;
  std::size_t k = 3;
  double q = 0, b = 0, epsilon = 0;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::size_t cap = 0;
  std::string scaling;
  std::size_t folds = 5;
  unsigned threads = 0;
  std::string out;
  bool self_test = false;
  std::vector<double> grid_q, grid_b, grid_epsilon;
  std::size_t min_per_class = 1, max_per_class = 15, trials = 10;
  std::string map;
  double from = 0, to = 0, x0 = 0;
  std::size_t steps = 1, iterations = 1, burn_in = 0;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("-c,--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
  sub->add_option("-o,--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  sub->add_option("--data-dir", f.data_dir, "directory holding the reference CSV files");
}

void add_data(CLI::App* sub, Flags& f) {
  sub->add_option("-d,--dataset", f.dataset, "CSV file, or a reference dataset key such as iris");
  sub->add_option("--fixture", f.fixture, "reference dataset key for train counts and tuned values");
  sub->add_option("--label-column", f.label_column, "label column name (default: last column)");
  sub->add_flag("--no-header", f.no_header, "the CSV has no header row");
  sub->add_option("--train-counts", f.train_counts, "per-class training sample counts")->delimiter(',');
  sub->add_option("--train-fraction", f.train_fraction, "per-class training fraction when no counts are known");
  sub->add_option("--normalization", f.normalization, "global or train")
      ->check(CLI::IsMember({"global", "train"}));
  sub->add_option("--cap", f.cap, "iteration cap per neuron");
  sub->add_option("--scaling", f.scaling, "normalized or raw")->check(CLI::IsMember({"normalized", "raw"}));
}

void add_model(CLI::App* sub, Flags& f, bool many_archs) {
  auto* arch = sub->add_option("-a,--arch", f.archs,
                               "architecture: GLS, Logistic, HNL, RH25L75G, RH50L50G, RH75L25G or random:<p>");
  if (many_archs) arch->delimiter(',');
  sub->add_option("--q", f.q, "initial neural activity");
  sub->add_option("--b", f.b, "skew-tent parameter");
  sub->add_option("--epsilon", f.epsilon, "detection tolerance");
}

void add_classifier(CLI::App* sub, Flags& f, bool many) {
  auto* c = sub->add_option("--classifier", f.classifiers, "cosine, knn, knn:<k> or gnb");
  if (many) c->delimiter(',');
  sub->add_option("--k", f.k, "neighbours for knn")->check(CLI::PositiveNumber);
}

bool given(const CLI::App* sub, const std::string& name) {
  const auto* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

ExperimentConfig resolve(const CLI::App* sub, const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  if (given(sub, "--dataset")) c.dataset.path = f.dataset;
  if (given(sub, "--fixture")) c.dataset.fixture = f.fixture;
  if (given(sub, "--label-column")) c.dataset.label_column = f.label_column;
  if (given(sub, "--no-header")) c.dataset.has_header = !f.no_header;
  if (given(sub, "--train-counts")) c.dataset.train_counts = f.train_counts;
  if (given(sub, "--train-fraction")) c.dataset.train_fraction = f.train_fraction;
  if (given(sub, "--normalization")) {
    c.dataset.normalization = f.normalization == "train" ? NormalizationMode::TrainOnly : NormalizationMode::Global;
  }
  if (given(sub, "--arch")) {
    c.architectures.clear();
    for (const auto& name : f.archs) {
      const auto arch = parse_architecture(name);
      if (!arch) throw ConfigError("unknown architecture '" + name + "'");
      c.architectures.push_back(*arch);
    }
  }
  const int hp_flags = given(sub, "--q") + given(sub, "--b") + given(sub, "--epsilon");
  if (hp_flags > 0) {
    Hyperparams hp = c.hyperparams.value_or(Hyperparams{});
    if (hp_flags < 3 && !c.hyperparams) throw ConfigError("--q, --b and --epsilon must be given together");
    if (given(sub, "--q")) hp.q = f.q;
    if (given(sub, "--b")) hp.b = f.b;
    if (given(sub, "--epsilon")) hp.epsilon = f.epsilon;
    c.hyperparams = hp;
  }
  if (given(sub, "--classifier")) {
    c.classifiers.clear();
    for (const auto& s : f.classifiers) c.classifiers.push_back(parse_classifier(s));
  }
  if (given(sub, "--k")) {
    for (auto& s : c.classifiers) s.k = f.k;
  }
  if (given(sub, "--seed")) c.seed = f.seed;
  if (given(sub, "--seeds")) c.seeds = f.seeds;
  if (given(sub, "--cap")) c.cap = f.cap;
  if (given(sub, "--scaling")) c.scaling = f.scaling == "raw" ? FeatureScaling::Raw : FeatureScaling::Normalized;
  if (given(sub, "--folds")) c.folds = f.folds;
  if (given(sub, "--threads")) c.threads = f.threads;
  if (given(sub, "--out")) c.out = f.out;
  if (given(sub, "--self-test")) c.evaluate_on_train = f.self_test;
  if (given(sub, "--grid-q") || given(sub, "--grid-b") || given(sub, "--grid-epsilon")) {
    Grid g = c.grid.value_or(Grid::default_grid());
    if (given(sub, "--grid-q")) g.q_values = f.grid_q;
    if (given(sub, "--grid-b")) g.b_values = f.grid_b;
    if (given(sub, "--grid-epsilon")) g.epsilon_values = f.grid_epsilon;
    c.grid = g;
  }
  if (given(sub, "--min-per-class")) c.lowsample.min_per_class = f.min_per_class;
  if (given(sub, "--max-per-class")) c.lowsample.max_per_class = f.max_per_class;
  if (given(sub, "--trials")) c.lowsample.trials = f.trials;
  if (given(sub, "--map")) c.lyapunov.map = f.map == "logistic" ? MapKind::Logistic : MapKind::SkewTent;
  if (given(sub, "--from")) c.lyapunov.from = f.from;
  if (given(sub, "--to")) c.lyapunov.to = f.to;
  if (given(sub, "--steps")) c.lyapunov.steps = f.steps;
  if (given(sub, "--x0")) c.lyapunov.x0 = f.x0;
  if (given(sub, "--iterations")) c.lyapunov.iterations = f.iterations;
  if (given(sub, "--burn-in")) c.lyapunov.burn_in = f.burn_in;
  return c;
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("NEUROCHAOS_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return NEUROCHAOS_DEFAULT_DATA_DIR;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaos-based feature extraction and classification"};
  app.name("neurochaos");
  app.require_subcommand(1);
  Flags f;

  auto* tune = app.add_subcommand("tune", "grid-search (q, b, epsilon) by stratified cross-validation");
  add_common(tune, f);
  add_data(tune, f);
  add_model(tune, f, false);
  tune->add_option("--folds", f.folds, "cross-validation folds");
  tune->add_option("--grid-q", f.grid_q, "q values")->delimiter(',');
  tune->add_option("--grid-b", f.grid_b, "b values")->delimiter(',');
  tune->add_option("--grid-epsilon", f.grid_epsilon, "epsilon values")->delimiter(',');

  auto* eval = app.add_subcommand("eval", "train on the split and report test metrics");
  add_common(eval, f);
  add_data(eval, f);
  add_model(eval, f, false);
  add_classifier(eval, f, false);
  eval->add_option("--seeds", f.seeds, "number of experiment seeds (seed, seed+1, ...)");
  eval->add_flag("--self-test", f.self_test, "score on the training set");

  auto* sweep = app.add_subcommand("sweep", "evaluate several architectures and classifiers");
  add_common(sweep, f);
  add_data(sweep, f);
  add_model(sweep, f, true);
  add_classifier(sweep, f, true);
  sweep->add_option("--seeds", f.seeds, "number of experiment seeds");

  auto* low = app.add_subcommand("lowsample", "macro F1 against training samples per class");
  add_common(low, f);
  add_data(low, f);
  add_model(low, f, false);
  add_classifier(low, f, false);
  low->add_option("--min-per-class", f.min_per_class, "smallest training size per class");
  low->add_option("--max-per-class", f.max_per_class, "largest training size per class");
  low->add_option("--trials", f.trials, "random splits per size");

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponent over a parameter range");
  add_common(lyap, f);
  lyap->add_option("--map", f.map, "logistic or skew-tent")->check(CLI::IsMember({"logistic", "skew-tent"}));
  lyap->add_option("--from", f.from, "first parameter value");
  lyap->add_option("--to", f.to, "last parameter value");
  lyap->add_option("--steps", f.steps, "number of parameter values");
  lyap->add_option("--x0", f.x0, "initial state");
  lyap->add_option("--iterations", f.iterations, "iterations averaged");
  lyap->add_option("--burn-in", f.burn_in, "transient iterations discarded");

  auto* exp = app.add_subcommand("export-features", "write ChaosFEX feature matrices as CSV");
  add_common(exp, f);
  add_data(exp, f);
  add_model(exp, f, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::filesystem::path data_dir = f.data_dir.empty() ? default_data_dir() : std::filesystem::path(f.data_dir);
  try {
    ExperimentConfig config = resolve(sub, f);
    CommandResult result;
    const std::string& name = sub->get_name();
    if (name == "tune") result = run_tune(config, data_dir);
    else if (name == "eval") result = run_eval(config, data_dir);
    else if (name == "sweep") result = run_sweep(config, data_dir);
    else if (name == "lowsample") result = run_lowsample(config, data_dir);
    else if (name == "lyapunov") result = run_lyapunov(config);
    else result = run_export_features(config, data_dir);
    write_outputs(config.out, result.files);
    out << name << ": " << result.summary.dump() << "\n";
    for (const auto& [file, content] : result.files) out << "  wrote " << (config.out / file).string() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace neurochaos::cli
