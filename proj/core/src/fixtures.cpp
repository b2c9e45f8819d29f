#include "neurochaos/fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace neurochaos::fixtures {

std::span<const DatasetInfo> datasets() {
  static const std::vector<DatasetInfo> kDatasets = {
      {"iris", "Iris", "iris.csv", {40, 41, 39}, {10, 9, 11}},
      {"ionosphere", "Ionosphere", "ionosphere.csv", {98, 182}, {28, 43}},
      {"wine", "Wine", "wine.csv", {45, 57, 40}, {14, 14, 8}},
      {"banknote", "Bank Note Authentication", "banknote.csv", {614, 483}, {148, 127}},
      {"haberman", "Haberman's Survival", "haberman.csv", {181, 63}, {44, 18}},
      {"breast_cancer_wisconsin", "Breast Cancer Wisconsin", "breast_cancer_wisconsin.csv", {367, 193}, {91, 48}},
      {"heart", "Statlog (Heart)", "heart.csv", {117, 99}, {33, 21}},
      {"seeds", "Seeds", "seeds.csv", {59, 56, 53}, {59, 56, 53}},
      {"fsdd", "Free Spoken Digit Dataset (Jackson)", "fsdd.csv",
       {40, 35, 44, 42, 38, 34, 37, 44, 33, 37}, {10, 15, 6, 8, 8, 7, 13, 6, 10, 13}},
  };
  return kDatasets;
}

std::vector<const DatasetInfo*> tabular_datasets() {
  std::vector<const DatasetInfo*> out;
  for (const auto& d : datasets()) {
    if (d.key != "fsdd") out.push_back(&d);
  }
  return out;
}

const DatasetInfo* find_dataset(std::string_view key) {
  for (const auto& d : datasets()) {
    if (d.key == key) return &d;
  }
  return nullptr;
}

std::span<const TunedEntry> tuned_hyperparams() {
  static const std::vector<TunedEntry> kTuned = {
      {0.25, "iris", {0.062, 0.185, 0.298}},
      {0.25, "ionosphere", {0.010, 0.409, 0.051}},
      {0.25, "wine", {0.460, 0.469, 0.141}},
      {0.25, "banknote", {0.360, 0.419, 0.121}},
      {0.25, "haberman", {0.050, 0.269, 0.031}},
      {0.25, "breast_cancer_wisconsin", {0.170, 0.460, 0.050}},
      {0.25, "heart", {0.470, 0.489, 0.030}},
      {0.25, "seeds", {0.050, 0.189, 0.161}},

      {0.50, "iris", {0.050, 0.359, 0.221}},
      {0.50, "ionosphere", {0.099, 0.479, 0.061}},
      {0.50, "wine", {0.460, 0.469, 0.131}},
      {0.50, "banknote", {0.090, 0.289, 0.041}},
      {0.50, "haberman", {0.140, 0.489, 0.021}},
      {0.50, "breast_cancer_wisconsin", {0.069, 0.139, 0.041}},
      {0.50, "heart", {0.180, 0.169, 0.011}},
      {0.50, "seeds", {0.050, 0.139, 0.151}},

      {0.75, "iris", {0.15, 0.299, 0.231}},
      {0.75, "ionosphere", {0.02, 0.219, 0.809}},
      {0.75, "wine", {0.47, 0.479, 0.131}},
      {0.75, "banknote", {0.01, 0.259, 0.071}},
      {0.75, "haberman", {0.23, 0.1, 0.011}},
      {0.75, "breast_cancer_wisconsin", {0.14, 0.489, 0.021}},
      {0.75, "heart", {0.13, 0.1, 0.051}},
      {0.75, "seeds", {0.05, 0.189, 0.151}},
  };
  return kTuned;
}

std::optional<Hyperparams> find_tuned(double proportion_logistic, std::string_view dataset) {
  for (const auto& e : tuned_hyperparams()) {
    if (std::abs(e.proportion_logistic - proportion_logistic) < 1e-9 && e.dataset == dataset) return e.hp;
  }
  return std::nullopt;
}

std::span<const ReportedScore> reported_cosine_f1() {
  static const std::vector<ReportedScore> kScores = {
      {0.25, "iris", 1.0}, {0.25, "ionosphere", 0.6}, {0.25, "wine", 0.6},
      {0.25, "banknote", 0.75}, {0.25, "haberman", 0.73}, {0.25, "breast_cancer_wisconsin", 0.85},
      {0.25, "heart", 0.77}, {0.25, "seeds", 0.81},
      {0.50, "iris", 1.0}, {0.50, "ionosphere", 0.58}, {0.50, "wine", 0.59},
      {0.50, "banknote", 0.59}, {0.50, "haberman", 0.68}, {0.50, "breast_cancer_wisconsin", 0.77},
      {0.50, "heart", 0.78}, {0.50, "seeds", 0.72},
      {0.75, "iris", 1.0}, {0.75, "ionosphere", 0.71}, {0.75, "wine", 0.63},
      {0.75, "banknote", 0.65}, {0.75, "haberman", 0.6}, {0.75, "breast_cancer_wisconsin", 0.79},
      {0.75, "heart", 0.65}, {0.75, "seeds", 0.78},
  };
  return kScores;
}

}  // namespace neurochaos::fixtures
