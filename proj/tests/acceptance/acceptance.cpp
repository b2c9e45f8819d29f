// Acceptance runner: one PASS/FAIL line per criterion. Exit status is 0 unless
// --strict is given and something failed, or the runner itself breaks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "neurochaos/chaos.hpp"
#include "neurochaos/chaosfex.hpp"
#include "neurochaos/dataio.hpp"
#include "neurochaos/fixtures.hpp"
#include "neurochaos/format.hpp"
#include "neurochaos/layer.hpp"
#include "neurochaos/tune.hpp"

namespace fs = std::filesystem;
using namespace neurochaos;
using cli::ExperimentConfig;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const fs::path kDataDir = fs::path(NEUROCHAOS_TEST_DATA_DIR) / "uci";

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

// Median macro F1 of RH25L75G + cosine with the stored tuned values, over seeds 42..51.
Outcome reproduce(const std::string& key, double lo, double hi, double budget_s) {
  ExperimentConfig config;
  config.dataset.fixture = key;
  config.architectures = {*parse_architecture("RH25L75G")};
  config.seeds = 10;
  config.scaling = FeatureScaling::Raw;
  const auto start = std::chrono::steady_clock::now();
  const auto result = cli::run_eval(config, kDataDir);
  const double elapsed = seconds_since(start);
  const double median = result.summary.at("median_macro_f1").get<double>();
  const bool ok = median >= lo && median <= hi && elapsed < budget_s;
  std::string seeds;
  for (const auto& v : result.summary.at("per_seed_macro_f1")) seeds += (seeds.empty() ? "" : " ") + fmt(v, 3);
  return {ok, "median macro F1 " + fmt(median) + " (target [" + fmt(lo, 2) + ", " + fmt(hi, 2) + "]), " +
                  fmt(elapsed, 2) + " s (budget " + fmt(budget_s, 0) + " s); seeds: " + seeds};
}

Outcome homogeneous_limits() {
  std::vector<std::string> failures;
  std::size_t checked = 0;
  for (const auto* info : fixtures::tabular_datasets()) {
    const std::string key(info->key);
    const fs::path path = kDataDir / std::string(info->file);
    if (!fs::exists(path)) {
      failures.push_back(key + ": data file not available");
      continue;
    }
    ExperimentConfig config;
    config.dataset.fixture = key;
    config.architectures = {*parse_architecture("GLS"), *parse_architecture("random:0"),
                            *parse_architecture("Logistic"), *parse_architecture("random:1")};
    config.classifiers = {cli::parse_classifier("cosine"), cli::parse_classifier("knn:3"),
                          cli::parse_classifier("gnb")};
    config.hyperparams = fixtures::find_tuned(0.25, key);
    config.seeds = 2;
    const auto sweep = cli::run_sweep(config, kDataDir);
    const auto rows = nlohmann::json::parse(sweep.files.at("sweep.json")).at("results");
    const std::size_t k = config.classifiers.size();
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t pair : {0u, 2u}) {
        const auto& a = rows[pair * k + c];
        const auto& b = rows[(pair + 1) * k + c];
        if (a.at("per_seed_macro_f1") != b.at("per_seed_macro_f1")) {
          failures.push_back(key + ": " + a.at("architecture").get<std::string>() + " vs " +
                             b.at("architecture").get<std::string>() + " differ");
        }
      }
    }
    // feature matrices themselves, bit for bit
    const auto data = normalize(load_csv(path));
    const auto hp = *config.hyperparams;
    const std::size_t n = data.num_features();
    const auto gls = transform(data.X, build_layout(n, LayoutScheme::HomogeneousGLS), hp);
    const auto logi = transform(data.X, build_layout(n, LayoutScheme::HomogeneousLogistic), hp);
    for (std::uint64_t seed : {0u, 1u, 42u}) {
      if (transform(data.X, build_layout(n, LayoutScheme::RandomHeterogeneous, 0.0, seed), hp) != gls ||
          transform(data.X, build_layout(n, LayoutScheme::RandomHeterogeneous, 1.0, seed), hp) != logi) {
        failures.push_back(key + ": feature matrices differ at layout seed " + std::to_string(seed));
      }
    }
    ++checked;
  }
  std::string detail = std::to_string(checked) + "/8 datasets bit-identical";
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty() && checked == 8, detail};
}

Outcome lyapunov_values() {
  const auto start = std::chrono::steady_clock::now();
  struct Case {
    std::string name;
    ChaoticMap map;
    double expected;
  };
  auto closed = [](double b) { return -b * std::log(b) - (1 - b) * std::log(1 - b); };
  const std::vector<Case> cases{{"logistic r=4", ChaoticMap::logistic(4.0), std::log(2.0)},
                                {"skew-tent b=0.5", ChaoticMap::skew_tent(0.5), std::log(2.0)},
                                {"skew-tent b=0.1", ChaoticMap::skew_tent(0.1), closed(0.1)},
                                {"skew-tent b=0.3", ChaoticMap::skew_tent(0.3), closed(0.3)},
                                {"skew-tent b=0.7", ChaoticMap::skew_tent(0.7), closed(0.7)}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const double v = lyapunov(c.map, 0.01, 1000000, 1000);
    ok = ok && std::fabs(v - c.expected) <= 0.01;
    detail += c.name + " " + fmt(v) + " vs " + fmt(c.expected) + "; ";
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 5.0;
  return {ok, detail + fmt(elapsed, 2) + " s (budget 5 s)"};
}

Outcome property_suites() {
  const std::string filter =
      "Transform.ShapeLawOnRandomShapes:Transform.FeaturesBoundedOnRandomTraces:Cosine.ScaleInvariance:"
      "Knn.BruteForceOracle:Gnb.DensityProductOracle:Features.EntropyEndpoints:Folds.*:"
      "CliTest.EveryCommandIsByteIdenticalOnRerun";
  const std::string cmd = std::string("\"") + NEUROCHAOS_UNIT_TEST_BIN + "\" --gtest_filter=" + filter +
                          " --gtest_brief=1 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return {status == 0, status == 0 ? "unit property suites green" : "unit property suites failed (run the unit test binary)"};
}

Outcome grid_reachability() {
  const auto grid = Grid::default_grid();
  std::size_t hit = 0;
  std::string missing;
  for (const auto& e : fixtures::tuned_hyperparams()) {
    if (grid.contains(e.hp)) {
      ++hit;
    } else {
      missing += " " + std::string(e.dataset);
    }
  }
  const std::size_t total = fixtures::tuned_hyperparams().size();
  return {hit == total && total == 24, std::to_string(hit) + "/" + std::to_string(total) +
                                           " tuned triples on the default grid (" + std::to_string(grid.size()) +
                                           " points)" + (missing.empty() ? "" : "; missing:" + missing)};
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Outcome lowsample_curve(const fs::path& scratch) {
  // Hyperparameters come from a coarse tuning run on an independent draw; the
  // curve is measured on a second draw.
  auto write_draw = [&](const std::string& name, std::uint64_t seed) {
    const fs::path path = scratch / name;
    std::ofstream f(path);
    write_csv(f, make_gaussian_classes({2, 100, 8, 1.0}, seed));
    return path;
  };
  ExperimentConfig tune_config;
  tune_config.dataset.path = write_draw("gaussian_tune.csv", 1);
  tune_config.architectures = {*parse_architecture("RH25L75G")};
  tune_config.grid = Grid{{0.05, 0.15, 0.25, 0.35, 0.45}, {0.1, 0.2, 0.3, 0.4, 0.49}, {0.01, 0.05, 0.1, 0.2, 0.3}};
  const auto tuned = cli::run_tune(tune_config, kDataDir);

  ExperimentConfig config;
  config.dataset.path = write_draw("gaussian_eval.csv", 2);
  config.architectures = tune_config.architectures;
  config.hyperparams = tuned.summary.at("best").get<Hyperparams>();
  config.lowsample = {1, 15, 10};
  const auto result = cli::run_lowsample(config, kDataDir);
  const auto rows = nlohmann::json::parse(result.files.at("lowsample.json")).at("results");
  std::vector<double> sizes, means;
  for (const auto& r : rows) {
    sizes.push_back(r.at("per_class").get<double>());
    means.push_back(r.at("mean_f1").get<double>());
  }
  const double rho = spearman(sizes, means);
  const auto& hp = *config.hyperparams;
  return {rho > 0.7, "Spearman rho " + fmt(rho, 3) + " over sizes 1..15 (mean F1 " + fmt(means.front(), 3) +
                         " -> " + fmt(means.back(), 3) + "; q=" + format_double(hp.q) + " b=" +
                         format_double(hp.b) + " epsilon=" + format_double(hp.epsilon) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::string(argv[1]) == "--strict";
  const fs::path scratch = fs::temp_directory_path() / "neurochaos-acceptance";
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"iris-reproduction", [] { return reproduce("iris", 0.95, 1.0, 10); }},
      {"haberman-reproduction", [] { return reproduce("haberman", 0.63, 0.83, 30); }},
      {"breast-cancer-reproduction", [] { return reproduce("breast_cancer_wisconsin", 0.75, 0.95, 60); }},
      {"homogeneous-limits", homogeneous_limits},
      {"lyapunov", lyapunov_values},
      {"property-suites", property_suites},
      {"tuning-reachability", grid_reachability},
      {"lowsample-curve", [&] { return lowsample_curve(scratch); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  fs::remove_all(scratch);
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return strict && failed ? 1 : 0;
}
