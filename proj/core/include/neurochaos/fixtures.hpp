#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neurochaos/chaos.hpp"
#include "neurochaos/layer.hpp"

namespace neurochaos::fixtures {

// Reference benchmark datasets with their reference per-class train/test counts.
struct DatasetInfo {
  std::string_view key;   // short name used on the command line
  std::string_view name;  // display name
  std::string_view file;  // CSV file name under the data directory
  std::vector<std::size_t> train_counts;
  std::vector<std::size_t> test_counts;
};

std::span<const DatasetInfo> datasets();
// The eight tabular benchmark sets (everything except the audio set).
std::vector<const DatasetInfo*> tabular_datasets();
const DatasetInfo* find_dataset(std::string_view key);

// Tuned (q, b, epsilon) for the cosine classifier, per random heterogeneous
// architecture (logistic share 0.25, 0.5 or 0.75) and dataset key.
struct TunedEntry {
  double proportion_logistic;
  std::string_view dataset;
  Hyperparams hp;
};

std::span<const TunedEntry> tuned_hyperparams();
std::optional<Hyperparams> find_tuned(double proportion_logistic, std::string_view dataset);

// Reference cosine-classifier macro F1 per architecture and dataset.
struct ReportedScore {
  double proportion_logistic;
  std::string_view dataset;
  double macro_f1;
};

std::span<const ReportedScore> reported_cosine_f1();

}  // namespace neurochaos::fixtures
