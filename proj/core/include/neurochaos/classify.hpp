#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "neurochaos/matrix.hpp"

namespace neurochaos {

using Label = int;

// Number of classes implied by 0-based contiguous labels. Throws TrainingError for
// negative labels or a label with no samples.
std::size_t count_classes(std::span<const Label> labels);

// Mean-representation model: one mean feature vector per class.
struct ClassModel {
  std::vector<Label> class_labels;
  std::vector<std::vector<double>> mean_vectors;

  std::size_t dimension() const noexcept {
    return mean_vectors.empty() ? 0 : mean_vectors.front().size();
  }

  friend bool operator==(const ClassModel&, const ClassModel&) = default;
};

ClassModel fit_cosine(const Matrix& features, std::span<const Label> labels);

// Cosine similarity, defined as 0 when either vector is all zeros.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Class with the highest cosine similarity to row; ties go to the lowest class index.
Label predict_cosine(const ClassModel& model, std::span<const double> row);
std::vector<Label> predict_cosine(const ClassModel& model, const Matrix& rows, unsigned threads = 1);

void to_json(nlohmann::json& j, const ClassModel& model);
void from_json(const nlohmann::json& j, ClassModel& model);

// k-nearest neighbours under Euclidean distance. Distance ties favour the lower
// training row index, vote ties the lower class label.
struct KnnModel {
  Matrix train;
  std::vector<Label> labels;
  std::size_t k = 1;
  std::size_t num_classes = 0;
};

KnnModel fit_knn(const Matrix& train, std::span<const Label> labels, std::size_t k);
Label predict_knn(const KnnModel& model, std::span<const double> row);
std::vector<Label> fit_predict_knn(const Matrix& train, std::span<const Label> labels,
                                   const Matrix& test, std::size_t k);

inline constexpr double kGnbVarianceFloor = 1e-9;

// Gaussian naive Bayes with per-class priors, means and (floored) population variances.
struct GnbModel {
  std::vector<double> log_priors;
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> variances;

  std::size_t num_classes() const noexcept { return log_priors.size(); }
};

GnbModel fit_gnb(const Matrix& train, std::span<const Label> labels);
// Unnormalized log posterior per class: log prior + sum_j log N(x_j; mean, var).
std::vector<double> gnb_log_posteriors(const GnbModel& model, std::span<const double> row);
Label predict_gnb(const GnbModel& model, std::span<const double> row);
std::vector<Label> fit_predict_gnb(const Matrix& train, std::span<const Label> labels,
                                   const Matrix& test);

}  // namespace neurochaos
