#include "neurochaos/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "neurochaos/errors.hpp"
#include "neurochaos/parallel.hpp"

namespace neurochaos {
namespace {

void require_rows_match(const Matrix& m, std::span<const Label> labels) {
  if (m.rows() != labels.size()) {
    throw DimensionError("feature rows (" + std::to_string(m.rows()) + ") and labels (" +
                         std::to_string(labels.size()) + ") differ");
  }
  if (m.rows() == 0) throw TrainingError("no training samples");
}

std::size_t argmax_lowest(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return best;
}

}  // namespace

std::size_t count_classes(std::span<const Label> labels) {
  if (labels.empty()) throw TrainingError("no labels");
  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  if (*lo < 0) throw TrainingError("labels must be non-negative");
  const auto k = static_cast<std::size_t>(*hi) + 1;
  std::vector<std::size_t> counts(k, 0);
  for (auto l : labels) ++counts[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) throw TrainingError("class " + std::to_string(c) + " has no samples");
  }
  return k;
}

ClassModel fit_cosine(const Matrix& features, std::span<const Label> labels) {
  require_rows_match(features, labels);
  const std::size_t k = count_classes(labels);
  const std::size_t d = features.cols();

  ClassModel model;
  model.class_labels.resize(k);
  std::iota(model.class_labels.begin(), model.class_labels.end(), 0);
  model.mean_vectors.assign(k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    const auto row = features.row(i);
    for (std::size_t j = 0; j < d; ++j) model.mean_vectors[c][j] += row[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (double& v : model.mean_vectors[c]) v /= static_cast<double>(counts[c]);
  }
  return model;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("cosine similarity of vectors of unequal length");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

Label predict_cosine(const ClassModel& model, std::span<const double> row) {
  if (model.mean_vectors.empty()) throw TrainingError("model has no classes");
  if (row.size() != model.dimension()) {
    throw DimensionError("query length " + std::to_string(row.size()) + " does not match model " +
                         std::to_string(model.dimension()));
  }
  std::vector<double> scores(model.mean_vectors.size());
  for (std::size_t c = 0; c < scores.size(); ++c) {
    scores[c] = cosine_similarity(row, model.mean_vectors[c]);
  }
  return model.class_labels[argmax_lowest(scores)];
}

std::vector<Label> predict_cosine(const ClassModel& model, const Matrix& rows, unsigned threads) {
  std::vector<Label> out(rows.rows());
  parallel_for(rows.rows(), threads, [&](std::size_t i) { out[i] = predict_cosine(model, rows.row(i)); });
  return out;
}

void to_json(nlohmann::json& j, const ClassModel& model) {
  j = nlohmann::json{{"labels", model.class_labels}, {"mean_vectors", model.mean_vectors}};
}

void from_json(const nlohmann::json& j, ClassModel& model) {
  j.at("labels").get_to(model.class_labels);
  j.at("mean_vectors").get_to(model.mean_vectors);
  if (model.class_labels.size() != model.mean_vectors.size()) {
    throw DimensionError("labels and mean_vectors differ in length");
  }
  for (const auto& v : model.mean_vectors) {
    if (v.size() != model.dimension()) throw DimensionError("mean vectors differ in length");
  }
}

KnnModel fit_knn(const Matrix& train, std::span<const Label> labels, std::size_t k) {
  require_rows_match(train, labels);
  if (k == 0 || k > train.rows()) {
    throw ParameterError("k must lie in [1, " + std::to_string(train.rows()) + "], got " +
                         std::to_string(k));
  }
  KnnModel model;
  model.train = train;
  model.labels.assign(labels.begin(), labels.end());
  model.k = k;
  model.num_classes = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
  return model;
}

Label predict_knn(const KnnModel& model, std::span<const double> row) {
  if (row.size() != model.train.cols()) throw DimensionError("query length does not match training data");
  const std::size_t n = model.train.rows();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = model.train.row(i);
    double d2 = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double diff = row[j] - t[j];
      d2 += diff * diff;
    }
    dist[i] = {d2, i};
  }
  // Pairs compare by distance then row index.
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(model.k), dist.end());
  std::vector<std::size_t> votes(model.num_classes, 0);
  for (std::size_t i = 0; i < model.k; ++i) ++votes[static_cast<std::size_t>(model.labels[dist[i].second])];
  const auto best = std::max_element(votes.begin(), votes.end());  // first maximum = lowest label
  return static_cast<Label>(best - votes.begin());
}

std::vector<Label> fit_predict_knn(const Matrix& train, std::span<const Label> labels,
                                   const Matrix& test, std::size_t k) {
  const KnnModel model = fit_knn(train, labels, k);
  std::vector<Label> out(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) out[i] = predict_knn(model, test.row(i));
  return out;
}

GnbModel fit_gnb(const Matrix& train, std::span<const Label> labels) {
  require_rows_match(train, labels);
  const std::size_t k = count_classes(labels);
  const std::size_t d = train.cols();

  GnbModel model;
  model.means.assign(k, std::vector<double>(d, 0.0));
  model.variances.assign(k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < train.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    const auto row = train.row(i);
    for (std::size_t j = 0; j < d; ++j) model.means[c][j] += row[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (double& m : model.means[c]) m /= static_cast<double>(counts[c]);
  }
  for (std::size_t i = 0; i < train.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    const auto row = train.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = row[j] - model.means[c][j];
      model.variances[c][j] += diff * diff;
    }
  }
  model.log_priors.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (double& v : model.variances[c]) {
      v = std::max(v / static_cast<double>(counts[c]), kGnbVarianceFloor);
    }
    model.log_priors[c] =
        std::log(static_cast<double>(counts[c]) / static_cast<double>(train.rows()));
  }
  return model;
}

std::vector<double> gnb_log_posteriors(const GnbModel& model, std::span<const double> row) {
  std::vector<double> out(model.num_classes());
  for (std::size_t c = 0; c < out.size(); ++c) {
    if (row.size() != model.means[c].size()) throw DimensionError("query length does not match model");
    double lp = model.log_priors[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double var = model.variances[c][j];
      const double diff = row[j] - model.means[c][j];
      lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
    }
    out[c] = lp;
  }
  return out;
}

Label predict_gnb(const GnbModel& model, std::span<const double> row) {
  const auto scores = gnb_log_posteriors(model, row);
  return static_cast<Label>(argmax_lowest(scores));
}

std::vector<Label> fit_predict_gnb(const Matrix& train, std::span<const Label> labels,
                                   const Matrix& test) {
  const GnbModel model = fit_gnb(train, labels);
  std::vector<Label> out(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) out[i] = predict_gnb(model, test.row(i));
  return out;
}

}  // namespace neurochaos
