#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "neurochaos/chaosfex.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/fixtures.hpp"
#include "neurochaos/format.hpp"
#include "neurochaos/metrics.hpp"
#include "neurochaos/parallel.hpp"
#include "neurochaos/rng.hpp"
#include "neurochaos/tune.hpp"

namespace neurochaos::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fixtures::DatasetInfo* fixture_for(const ExperimentConfig& config) {
  if (config.dataset.fixture.empty()) return nullptr;
  return fixtures::find_dataset(config.dataset.fixture);
}

TransformOptions transform_options(const ExperimentConfig& config) {
  TransformOptions opts;
  opts.cap = config.cap;
  opts.scaling = config.scaling;
  opts.threads = config.threads;
  return opts;
}

NeuronLayout make_layout(const Architecture& arch, std::size_t n, std::uint64_t seed) {
  return build_layout(n, arch.scheme, arch.proportion_logistic, derive_seed(seed, "layout"));
}

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw ConfigError(std::string(name) + " must be at least 1");
}

void check_common(const ExperimentConfig& config) {
  require_positive(config.seeds, "seeds");
  require_positive(config.cap, "cap");
  if (config.architectures.empty()) throw ConfigError("no architecture given");
  if (config.classifiers.empty()) throw ConfigError("no classifier given");
}

std::string join_csv(std::span<const std::string> cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct SeedRun {
  std::uint64_t seed = 0;
  NeuronLayout layout;
  SplitIndices indices;
  TransformStats stats;
  Matrix train_features;
  Matrix test_features;
  std::vector<int> train_labels;
  std::vector<int> test_labels;
};

SeedRun prepare_seed(const ExperimentConfig& config, const LoadedData& data, const Architecture& arch,
                     const Hyperparams& hp, std::uint64_t seed) {
  SeedRun run;
  run.seed = seed;
  run.layout = make_layout(arch, data.table.features.cols(), seed);
  const auto parts =
      split(data.table, data.train_counts, derive_seed(seed, "split"), config.dataset.normalization);
  run.indices = parts.indices;
  const auto opts = transform_options(config);
  run.train_features = transform(parts.train.X, run.layout, hp, opts, &run.stats);
  run.train_labels = parts.train.y;
  if (config.evaluate_on_train) {
    run.test_features = run.train_features;
    run.test_labels = run.train_labels;
  } else {
    if (parts.test.size() == 0) throw ConfigError("the test set is empty; lower the train counts");
    run.test_features = transform(parts.test.X, run.layout, hp, opts, &run.stats);
    run.test_labels = parts.test.y;
  }
  return run;
}

json score_run(const SeedRun& run, const ClassifierSpec& spec, std::size_t num_classes, unsigned threads,
               double& macro) {
  const auto predicted = fit_predict(spec, run.train_features, run.train_labels, run.test_features, threads);
  const ConfusionMatrix cm(run.test_labels, predicted, num_classes);
  macro = cm.macro_f1();
  return metrics_report(cm);
}

json run_record(const SeedRun& run) {
  return json{{"seed", run.seed},
              {"layout", run.layout},
              {"split", run.indices},
              {"traces", run.stats.traces},
              {"non_detections", run.stats.non_detections}};
}

json score_summary(std::span<const double> scores) {
  return json{{"per_seed_macro_f1", std::vector<double>(scores.begin(), scores.end())},
              {"median_macro_f1", median(std::vector<double>(scores.begin(), scores.end()))},
              {"mean_macro_f1", mean(scores)}};
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

LoadedData load_data(ExperimentConfig& config, const fs::path& data_dir) {
  auto& ds = config.dataset;
  if (ds.path.empty() && ds.fixture.empty()) throw ConfigError("no dataset given");

  // A bare reference key ("iris") names the bundled file.
  if (!ds.path.empty() && !fs::exists(ds.path) && ds.fixture.empty() &&
      fixtures::find_dataset(ds.path.string()) != nullptr) {
    ds.fixture = ds.path.string();
    ds.path.clear();
  }
  if (!ds.fixture.empty() && fixtures::find_dataset(ds.fixture) == nullptr) {
    throw ConfigError("unknown reference dataset '" + ds.fixture + "'");
  }
  if (ds.path.empty()) ds.path = data_dir / std::string(fixtures::find_dataset(ds.fixture)->file);
  if (ds.fixture.empty()) {
    for (const auto& info : fixtures::datasets()) {
      if (ds.path.filename() == fs::path(std::string(info.file))) ds.fixture = std::string(info.key);
    }
  }
  if (!fs::is_regular_file(ds.path)) throw ConfigError("dataset file not found: " + ds.path.string());

  LoadedData data;
  data.path = ds.path;
  data.table = load_csv(ds.path, CsvOptions{ds.has_header, ds.label_column});
  if (data.table.rows() == 0) throw ConfigError("dataset " + ds.path.string() + " has no rows");
  data.class_names = sorted_class_names(data.table.labels);
  const Dataset encoded = normalize(data.table);
  data.labels = encoded.y;
  data.class_counts = encoded.class_counts();

  const std::size_t k = data.class_names.size();
  if (ds.train_counts.empty()) {
    const auto* info = fixture_for(config);
    if (info != nullptr && info->train_counts.size() == k) {
      ds.train_counts = info->train_counts;
    } else {
      if (!(ds.train_fraction > 0.0 && ds.train_fraction <= 1.0)) {
        throw ConfigError("train_fraction must be in (0, 1]");
      }
      for (auto n : data.class_counts) {
        const auto t = static_cast<std::size_t>(std::floor(ds.train_fraction * static_cast<double>(n) + 0.5));
        ds.train_counts.push_back(std::clamp<std::size_t>(t, 1, n));
      }
    }
  }
  if (ds.train_counts.size() != k) {
    throw ConfigError("expected " + std::to_string(k) + " train counts, got " +
                      std::to_string(ds.train_counts.size()));
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (ds.train_counts[c] == 0 || ds.train_counts[c] > data.class_counts[c]) {
      throw ConfigError("train count " + std::to_string(ds.train_counts[c]) + " for class '" +
                        data.class_names[c] + "' must be between 1 and " + std::to_string(data.class_counts[c]));
    }
  }
  data.train_counts = ds.train_counts;
  return data;
}

Hyperparams resolve_hyperparams(const ExperimentConfig& config, const Architecture& arch) {
  if (config.hyperparams) {
    try {
      config.hyperparams->validate();
    } catch (const ParameterError& e) {
      throw ConfigError(e.what());
    }
    return *config.hyperparams;
  }
  if (arch.scheme == LayoutScheme::RandomHeterogeneous && !config.dataset.fixture.empty()) {
    if (auto hp = fixtures::find_tuned(arch.proportion_logistic, config.dataset.fixture)) return *hp;
  }
  throw ConfigError("no hyperparameters for architecture " + architecture_name(arch) +
                    "; pass --q, --b and --epsilon or a hyperparams block");
}

std::vector<Label> fit_predict(const ClassifierSpec& spec, const Matrix& train, std::span<const Label> train_labels,
                               const Matrix& test, unsigned threads) {
  switch (spec.kind) {
    case ClassifierKind::Cosine: return predict_cosine(fit_cosine(train, train_labels), test, threads);
    case ClassifierKind::Knn:
      if (spec.k > train.rows()) {
        throw ConfigError("k = " + std::to_string(spec.k) + " exceeds the " + std::to_string(train.rows()) +
                          " training samples");
      }
      return fit_predict_knn(train, train_labels, test, spec.k);
    case ClassifierKind::Gnb: return fit_predict_gnb(train, train_labels, test);
  }
  throw ConfigError("unknown classifier");
}

CommandResult run_tune(ExperimentConfig config, const fs::path& data_dir) {
  check_common(config);
  if (config.folds < 2) throw ConfigError("folds must be at least 2");
  const LoadedData data = load_data(config, data_dir);
  const Grid grid = config.grid ? *config.grid : Grid::default_grid();
  try {
    grid.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("invalid grid: ") + e.what());
  }
  const Architecture arch = config.architectures.front();
  const NeuronLayout layout = make_layout(arch, data.table.features.cols(), config.seed);
  const auto parts =
      split(data.table, data.train_counts, derive_seed(config.seed, "split"), config.dataset.normalization);
  for (auto n : parts.train.class_counts()) {
    if (n < config.folds) {
      throw ConfigError("a class has " + std::to_string(n) + " training samples, fewer than " +
                        std::to_string(config.folds) + " folds");
    }
  }

  TuneOptions opts;
  opts.folds = config.folds;
  opts.cap = config.cap;
  opts.scaling = config.scaling;
  opts.threads = config.threads;
  opts.seed = derive_seed(config.seed, "folds");
  const TuneResult result = grid_search(parts.train.X, parts.train.y, layout, grid, opts);

  std::ostringstream grid_csv;
  write_grid_csv(grid_csv, result);
  const json tuned{{"command", "tune"},
                   {"config", config_to_json(config)},
                   {"architecture", architecture_name(arch)},
                   {"layout", layout},
                   {"split", parts.indices},
                   {"grid_points", grid.size()},
                   {"best", result.best},
                   {"best_cv_macro_f1", result.best_cv_macro_f1}};
  CommandResult out;
  out.files["tuned.json"] = dump(tuned);
  out.files["grid.csv"] = grid_csv.str();
  out.summary = json{{"best", result.best}, {"best_cv_macro_f1", result.best_cv_macro_f1}};
  return out;
}

CommandResult run_eval(ExperimentConfig config, const fs::path& data_dir) {
  check_common(config);
  const LoadedData data = load_data(config, data_dir);
  const Architecture arch = config.architectures.front();
  const ClassifierSpec spec = config.classifiers.front();
  const Hyperparams hp = resolve_hyperparams(config, arch);
  config.hyperparams = hp;

  json runs = json::array();
  std::vector<double> scores;
  for (std::size_t s = 0; s < config.seeds; ++s) {
    const SeedRun run = prepare_seed(config, data, arch, hp, config.seed + s);
    double macro = 0.0;
    json record = run_record(run);
    record["metrics"] = score_run(run, spec, data.class_names.size(), config.threads, macro);
    runs.push_back(std::move(record));
    scores.push_back(macro);
  }
  json report{{"command", "eval"},
              {"config", config_to_json(config)},
              {"architecture", architecture_name(arch)},
              {"classifier", classifier_name(spec)},
              {"hyperparams", hp},
              {"class_names", data.class_names},
              {"runs", runs}};
  report.update(score_summary(scores));
  CommandResult out;
  out.files["metrics.json"] = dump(report);
  out.summary = score_summary(scores);
  return out;
}

CommandResult run_sweep(ExperimentConfig config, const fs::path& data_dir) {
  check_common(config);
  const LoadedData data = load_data(config, data_dir);
  std::vector<Hyperparams> hps;
  for (const auto& arch : config.architectures) hps.push_back(resolve_hyperparams(config, arch));

  std::vector<std::string> header{"architecture", "classifier", "q", "b", "epsilon", "median_macro_f1",
                                  "mean_macro_f1"};
  for (std::size_t s = 0; s < config.seeds; ++s) header.push_back("seed" + std::to_string(config.seed + s));
  std::string csv = join_csv(header);
  json rows = json::array();

  for (std::size_t a = 0; a < config.architectures.size(); ++a) {
    const auto& arch = config.architectures[a];
    std::vector<std::vector<double>> scores(config.classifiers.size());
    json seed_records = json::array();
    for (std::size_t s = 0; s < config.seeds; ++s) {
      const SeedRun run = prepare_seed(config, data, arch, hps[a], config.seed + s);
      seed_records.push_back(run_record(run));
      for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
        double macro = 0.0;
        score_run(run, config.classifiers[c], data.class_names.size(), config.threads, macro);
        scores[c].push_back(macro);
      }
    }
    for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
      const auto summary = score_summary(scores[c]);
      std::vector<std::string> cells{architecture_name(arch),
                                     classifier_name(config.classifiers[c]),
                                     format_double(hps[a].q),
                                     format_double(hps[a].b),
                                     format_double(hps[a].epsilon),
                                     format_double(summary["median_macro_f1"].get<double>()),
                                     format_double(summary["mean_macro_f1"].get<double>())};
      for (double v : scores[c]) cells.push_back(format_double(v));
      csv += join_csv(cells);
      json row{{"architecture", architecture_name(arch)},
               {"classifier", classifier_name(config.classifiers[c])},
               {"hyperparams", hps[a]},
               {"runs", seed_records}};
      row.update(summary);
      rows.push_back(std::move(row));
    }
  }
  CommandResult out;
  out.files["sweep.csv"] = csv;
  out.files["sweep.json"] = dump(json{{"command", "sweep"}, {"config", config_to_json(config)}, {"results", rows}});
  out.summary = json{{"rows", rows.size()}};
  return out;
}

CommandResult run_lowsample(ExperimentConfig config, const fs::path& data_dir) {
  check_common(config);
  const auto& ls = config.lowsample;
  require_positive(ls.min_per_class, "min_per_class");
  require_positive(ls.trials, "trials");
  if (ls.max_per_class < ls.min_per_class) throw ConfigError("max_per_class is below min_per_class");
  const LoadedData data = load_data(config, data_dir);
  const std::size_t smallest = *std::min_element(data.class_counts.begin(), data.class_counts.end());
  if (ls.max_per_class + 1 > smallest) {
    throw ConfigError("max_per_class " + std::to_string(ls.max_per_class) +
                      " leaves no test sample in the smallest class (" + std::to_string(smallest) + " samples)");
  }
  const Architecture arch = config.architectures.front();
  const ClassifierSpec spec = config.classifiers.front();
  const Hyperparams hp = resolve_hyperparams(config, arch);
  config.hyperparams = hp;

  // Features of a sample do not depend on which split it lands in, so the whole
  // (globally normalized) dataset is transformed once.
  const Dataset all = normalize(data.table);
  const NeuronLayout layout = make_layout(arch, all.num_features(), config.seed);
  TransformStats stats;
  const Matrix features = transform(all.X, layout, hp, transform_options(config), &stats);

  std::string csv = "per_class,mean_f1,std\n";
  json sizes = json::array();
  for (std::size_t m = ls.min_per_class; m <= ls.max_per_class; ++m) {
    const auto splits = lowsample_splits(all.y, m, ls.trials, derive_seed(config.seed, "lowsample", m));
    std::vector<double> scores;
    for (const auto& sp : splits) {
      const Matrix train = features.select_rows(sp.train);
      const Matrix test = features.select_rows(sp.test);
      const auto ytrain = select(std::span<const int>(all.y), sp.train);
      const auto ytest = select(std::span<const int>(all.y), sp.test);
      const auto predicted = fit_predict(spec, train, ytrain, test, config.threads);
      scores.push_back(macro_f1(ytest, predicted, all.num_classes()));
    }
    csv += format_double(static_cast<double>(m)) + "," + format_double(mean(scores)) + "," +
           format_double(stddev(scores)) + "\n";
    sizes.push_back(json{{"per_class", m}, {"mean_f1", mean(scores)}, {"std", stddev(scores)}, {"trials", scores}});
  }
  CommandResult out;
  out.files["lowsample.csv"] = csv;
  out.files["lowsample.json"] = dump(json{{"command", "lowsample"},
                                          {"config", config_to_json(config)},
                                          {"architecture", architecture_name(arch)},
                                          {"classifier", classifier_name(spec)},
                                          {"layout", layout},
                                          {"non_detections", stats.non_detections},
                                          {"results", sizes}});
  out.summary = json{{"sizes", sizes.size()}};
  return out;
}

CommandResult run_lyapunov(ExperimentConfig config) {
  const auto& ly = config.lyapunov;
  require_positive(ly.steps, "steps");
  require_positive(ly.iterations, "iterations");
  if (ly.steps > 1 && !(ly.to > ly.from)) throw ConfigError("lyapunov range needs from < to");
  if (!(ly.x0 > 0.0 && ly.x0 < 1.0)) throw ConfigError("x0 must lie in (0, 1)");

  std::vector<double> params(ly.steps);
  for (std::size_t i = 0; i < ly.steps; ++i) {
    params[i] = ly.steps == 1 ? ly.from
                              : ly.from + (ly.to - ly.from) * static_cast<double>(i) / static_cast<double>(ly.steps - 1);
  }
  std::vector<ChaoticMap> maps;
  try {
    for (double p : params) {
      maps.push_back(ly.map == MapKind::Logistic ? ChaoticMap::logistic(p) : ChaoticMap::skew_tent(p));
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  std::vector<LyapunovEstimate> estimates(params.size());
  parallel_for(params.size(), config.threads, [&](std::size_t i) {
    estimates[i] = estimate_lyapunov(maps[i], ly.x0, ly.iterations, ly.burn_in);
  });

  std::string csv = "parameter,lambda\n";
  json points = json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    csv += format_double(params[i]) + "," + format_double(estimates[i].exponent) + "\n";
    points.push_back(json{{"parameter", params[i]},
                          {"lambda", estimates[i].exponent},
                          {"skipped_points", estimates[i].skipped_points}});
  }
  CommandResult out;
  out.files["lyapunov.csv"] = csv;
  out.files["lyapunov.json"] =
      dump(json{{"command", "lyapunov"}, {"config", config_to_json(config)}, {"points", points}});
  out.summary = json{{"points", points.size()}};
  return out;
}

CommandResult run_export_features(ExperimentConfig config, const fs::path& data_dir) {
  check_common(config);
  const LoadedData data = load_data(config, data_dir);
  const Architecture arch = config.architectures.front();
  const Hyperparams hp = resolve_hyperparams(config, arch);
  config.hyperparams = hp;

  const NeuronLayout layout = make_layout(arch, data.table.features.cols(), config.seed);
  const auto parts =
      split(data.table, data.train_counts, derive_seed(config.seed, "split"), config.dataset.normalization);
  const auto opts = transform_options(config);
  TransformStats stats;
  CommandResult out;
  std::ostringstream train_csv;
  write_feature_csv(train_csv, transform(parts.train.X, layout, hp, opts, &stats), parts.train.y);
  out.files["train_features.csv"] = train_csv.str();
  if (parts.test.size() > 0) {
    std::ostringstream test_csv;
    write_feature_csv(test_csv, transform(parts.test.X, layout, hp, opts, &stats), parts.test.y);
    out.files["test_features.csv"] = test_csv.str();
  }
  out.files["provenance.json"] = dump(json{{"command", "export-features"},
                                           {"config", config_to_json(config)},
                                           {"architecture", architecture_name(arch)},
                                           {"hyperparams", hp},
                                           {"class_names", data.class_names},
                                           {"layout", layout},
                                           {"split", parts.indices},
                                           {"non_detections", stats.non_detections}});
  out.summary = json{{"train_rows", parts.train.size()}, {"test_rows", parts.test.size()}};
  return out;
}

void write_outputs(const fs::path& dir, const OutputFiles& files) {
  fs::create_directories(dir);
  for (const auto& [name, content] : files) {
    const fs::path target = dir / name;
    fs::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw Error("cannot write " + tmp.string());
      f << content;
      if (!f.flush()) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
  }
}

}  // namespace neurochaos::cli
