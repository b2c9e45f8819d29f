#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "neurochaos/matrix.hpp"

namespace neurochaos {

struct CsvOptions {
  bool has_header = true;
  // Name of the label column; empty selects the last column.
  std::string label_column;
};

// Parsed CSV: numeric feature columns plus the label column kept as text.
struct RawTable {
  std::vector<std::string> feature_names;
  std::string label_name;
  Matrix features;
  std::vector<std::string> labels;

  std::size_t rows() const noexcept { return labels.size(); }
};

// Throws ParseError (with the 1-based line number) for an empty file, ragged rows,
// missing values ("", "?", "NA", "NaN") and non-numeric feature cells.
RawTable parse_csv(std::istream& in, const CsvOptions& options = {});
RawTable load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
void write_csv(std::ostream& out, const RawTable& table);

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

// A normalized dataset: features in [0, 1], labels 0..K-1.
struct Dataset {
  Matrix X;
  std::vector<int> y;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::vector<ColumnRange> normalization;

  std::size_t size() const noexcept { return y.size(); }
  std::size_t num_features() const noexcept { return X.cols(); }
  std::size_t num_classes() const noexcept { return class_names.size(); }
  std::vector<std::size_t> class_counts() const;
};

std::vector<ColumnRange> fit_normalization(const Matrix& raw);
// Min-max scales each column; constant columns map to 0. With clamp, values outside
// the fitted range are clipped into [0, 1].
Matrix apply_normalization(const Matrix& raw, std::span<const ColumnRange> ranges, bool clamp = false);
Matrix denormalize(const Matrix& normalized, std::span<const ColumnRange> ranges);

// Class names in label order: numeric names sorted by value, otherwise lexicographically.
std::vector<std::string> sorted_class_names(std::span<const std::string> labels);

// Global min-max normalization and label encoding. Throws SplitError on an empty table.
Dataset normalize(const RawTable& table);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per-class seeded shuffle; the first train_counts[c] indices of class c go to
// train, the rest to test. Both index lists are returned in ascending order.
SplitIndices split_indices(std::span<const int> labels, std::span<const std::size_t> train_counts,
                           std::uint64_t seed);

Dataset subset(const Dataset& data, std::span<const std::size_t> indices);

enum class NormalizationMode {
  Global,     // min-max over the whole dataset before splitting
  TrainOnly,  // fit on the training rows; test rows reuse those ranges (clipped)
};

struct TrainTestSplit {
  Dataset train;
  Dataset test;
  SplitIndices indices;
};

TrainTestSplit split(const Dataset& data, std::span<const std::size_t> train_counts, std::uint64_t seed);
TrainTestSplit split(const RawTable& table, std::span<const std::size_t> train_counts,
                     std::uint64_t seed, NormalizationMode mode);

// `trials` independent splits with `per_class` training samples from each class.
std::vector<SplitIndices> lowsample_splits(std::span<const int> labels, std::size_t per_class,
                                           std::size_t trials, std::uint64_t seed);

// Stable hex digest of split indices, for provenance records.
std::string split_digest(const SplitIndices& indices);
void to_json(nlohmann::json& j, const SplitIndices& indices);

struct GaussianClassesSpec {
  std::size_t classes = 2;
  std::size_t per_class = 100;
  std::size_t features = 8;
  // Distance between consecutive class means along every axis, in units of the
  // (unit) standard deviation.
  double separation = 1.0;
};

// Seeded isotropic Gaussian classes; class c is centred at c*separation on every axis.
RawTable make_gaussian_classes(const GaussianClassesSpec& spec, std::uint64_t seed);

}  // namespace neurochaos
