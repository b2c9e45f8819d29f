#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "neurochaos/classify.hpp"
#include "neurochaos/dataio.hpp"
#include "neurochaos/matrix.hpp"

namespace neurochaos::cli {

// Files produced by a command, keyed by file name relative to the output directory.
using OutputFiles = std::map<std::string, std::string>;

struct CommandResult {
  OutputFiles files;
  nlohmann::json summary;  // short machine-readable digest, also printed by the CLI
};

struct LoadedData {
  std::filesystem::path path;
  RawTable table;
  std::vector<std::string> class_names;
  std::vector<int> labels;  // encoded, 0..K-1
  std::vector<std::size_t> class_counts;
  std::vector<std::size_t> train_counts;
};

// Resolves the dataset path (a file, or a reference dataset key looked up under
// data_dir), loads it and fixes the per-class train counts. Throws ConfigError
// for a missing file or infeasible counts.
LoadedData load_data(ExperimentConfig& config, const std::filesystem::path& data_dir);

// Explicit hyperparameters, or the tuned values stored for the dataset and
// architecture. Throws ConfigError if neither is available.
Hyperparams resolve_hyperparams(const ExperimentConfig& config, const Architecture& arch);

std::vector<Label> fit_predict(const ClassifierSpec& spec, const Matrix& train,
                               std::span<const Label> train_labels, const Matrix& test, unsigned threads);

CommandResult run_tune(ExperimentConfig config, const std::filesystem::path& data_dir);
CommandResult run_eval(ExperimentConfig config, const std::filesystem::path& data_dir);
CommandResult run_sweep(ExperimentConfig config, const std::filesystem::path& data_dir);
CommandResult run_lowsample(ExperimentConfig config, const std::filesystem::path& data_dir);
CommandResult run_lyapunov(ExperimentConfig config);
CommandResult run_export_features(ExperimentConfig config, const std::filesystem::path& data_dir);

// Writes every file through a temporary sibling and a rename.
void write_outputs(const std::filesystem::path& dir, const OutputFiles& files);

double median(std::vector<double> values);
double mean(std::span<const double> values);
// Sample standard deviation; 0 for fewer than two values.
double stddev(std::span<const double> values);

}  // namespace neurochaos::cli
