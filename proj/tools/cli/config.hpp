#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "neurochaos/chaos.hpp"
#include "neurochaos/chaosfex.hpp"
#include "neurochaos/dataio.hpp"
#include "neurochaos/layer.hpp"
#include "neurochaos/tune.hpp"

namespace neurochaos::cli {

// Invalid configuration or usage; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ClassifierKind { Cosine, Knn, Gnb };

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::Cosine;
  std::size_t k = 3;  // knn only

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

// "cosine", "gnb", "knn" or "knn:<k>".
ClassifierSpec parse_classifier(const std::string& text);
std::string classifier_name(const ClassifierSpec& spec);

struct DatasetConfig {
  std::filesystem::path path;
  std::string fixture;  // key of a reference dataset (train counts, tuned hyperparameters)
  bool has_header = true;
  std::string label_column;
  std::vector<std::size_t> train_counts;  // empty: fixture counts, else train_fraction per class
  double train_fraction = 0.8;
  NormalizationMode normalization = NormalizationMode::Global;
};

struct LowsampleConfig {
  std::size_t min_per_class = 1;
  std::size_t max_per_class = 15;
  std::size_t trials = 10;
};

struct LyapunovConfig {
  MapKind map = MapKind::Logistic;
  double from = 3.5;
  double to = 4.0;
  std::size_t steps = 51;
  double x0 = 0.01;
  std::size_t iterations = 1000000;
  std::size_t burn_in = 1000;
};

struct ExperimentConfig {
  DatasetConfig dataset;
  std::vector<Architecture> architectures{Architecture{}};
  std::optional<Hyperparams> hyperparams;
  std::optional<Grid> grid;  // tune: default grid when absent
  std::vector<ClassifierSpec> classifiers{ClassifierSpec{}};
  std::uint64_t seed = 42;
  std::size_t seeds = 1;
  std::size_t cap = kDefaultIterationCap;
  FeatureScaling scaling = FeatureScaling::Normalized;
  std::size_t folds = 5;
  bool evaluate_on_train = false;
  LowsampleConfig lowsample;
  LyapunovConfig lyapunov;
  std::filesystem::path out = "neurochaos-out";
  unsigned threads = 0;  // not part of the resolved config: results do not depend on it
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
// Resolved configuration as embedded in every report.
nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace neurochaos::cli
