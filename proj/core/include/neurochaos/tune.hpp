#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "neurochaos/chaos.hpp"
#include "neurochaos/chaosfex.hpp"
#include "neurochaos/layer.hpp"
#include "neurochaos/matrix.hpp"

namespace neurochaos {

// Cartesian grid over (q, b, epsilon). Points are enumerated q-major, then b,
// then epsilon.
struct Grid {
  std::vector<double> q_values;
  std::vector<double> b_values;
  std::vector<double> epsilon_values;

  // Throws ParameterError unless every axis is non-empty, strictly ascending and
  // strictly inside (0, 1).
  void validate() const;
  std::size_t size() const noexcept { return q_values.size() * b_values.size() * epsilon_values.size(); }
  Hyperparams at(std::size_t index) const;
  bool contains(const Hyperparams& hp) const;

  static Grid single(const Hyperparams& hp);
  // Uniform lattice q in {0.01..0.50}, b in {0.01..0.49}, epsilon in
  // {0.001, 0.011, ..., 0.301}, plus every fixture tuned value on each axis.
  static Grid default_grid();

  friend bool operator==(const Grid&, const Grid&) = default;
};

void to_json(nlohmann::json& j, const Grid& grid);
void from_json(const nlohmann::json& j, Grid& grid);

// k stratified folds: within each class the shuffled samples are dealt round-robin,
// continuing from where the previous class stopped, so per-class fold sizes differ
// by at most one. Each fold is sorted ascending. Throws StratificationError if a
// class has fewer than k samples.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed);

struct GridEntry {
  Hyperparams hp;
  double mean_macro_f1 = 0.0;
  std::vector<double> fold_scores;
};

struct TuneResult {
  Hyperparams best;
  double best_cv_macro_f1 = 0.0;
  std::vector<GridEntry> table;  // grid order
};

struct TuneOptions {
  std::size_t folds = 5;
  std::size_t cap = kDefaultIterationCap;
  FeatureScaling scaling = FeatureScaling::Normalized;
  unsigned threads = 1;
  std::uint64_t seed = 0;  // fold shuffling seed
};

// True if a should be preferred over b: higher mean macro F1, then smaller
// epsilon, smaller q, smaller b.
bool preferred(const GridEntry& a, const GridEntry& b);

// Cross-validated macro F1 of the cosine classifier for every grid point.
TuneResult grid_search(const Matrix& X, std::span<const int> y, const NeuronLayout& layout,
                       const Grid& grid, const TuneOptions& options = {});

// Cross-validated score of a single point, using precomputed folds.
GridEntry evaluate_point(const Matrix& X, std::span<const int> y, std::size_t num_classes,
                         const NeuronLayout& layout, const Hyperparams& hp,
                         const std::vector<std::vector<std::size_t>>& folds, const TuneOptions& options);

// One row per grid point: q,b,epsilon,mean_macro_f1,fold1..foldk
void write_grid_csv(std::ostream& out, const TuneResult& result);

}  // namespace neurochaos
