#include "neurochaos/metrics.hpp"

#include <string>

#include "neurochaos/errors.hpp"

namespace neurochaos {
namespace {

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

void require_same_length(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw DimensionError("truth has " + std::to_string(truth.size()) + " labels, predictions " +
                         std::to_string(predicted.size()));
  }
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::span<const int> truth, std::span<const int> predicted,
                                 std::size_t num_classes)
    : counts_(num_classes, std::vector<std::size_t>(num_classes, 0)), total_(truth.size()) {
  require_same_length(truth, predicted);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = truth[i];
    const auto p = predicted[i];
    if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= num_classes ||
        static_cast<std::size_t>(p) >= num_classes) {
      throw ParameterError("label outside [0, " + std::to_string(num_classes) + ")");
    }
    ++counts_[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
  }
}

std::size_t ConfusionMatrix::true_positives(std::size_t c) const { return counts_.at(c).at(c); }

std::size_t ConfusionMatrix::false_positives(std::size_t c) const {
  std::size_t fp = 0;
  for (std::size_t t = 0; t < counts_.size(); ++t) {
    if (t != c) fp += counts_[t].at(c);
  }
  return fp;
}

std::size_t ConfusionMatrix::false_negatives(std::size_t c) const {
  std::size_t fn = 0;
  for (std::size_t p = 0; p < counts_.size(); ++p) {
    if (p != c) fn += counts_.at(c)[p];
  }
  return fn;
}

std::size_t ConfusionMatrix::true_negatives(std::size_t c) const {
  return total_ - true_positives(c) - false_positives(c) - false_negatives(c);
}

double ConfusionMatrix::precision(std::size_t c) const {
  const auto tp = static_cast<double>(true_positives(c));
  return safe_ratio(tp, tp + static_cast<double>(false_positives(c)));
}

double ConfusionMatrix::recall(std::size_t c) const {
  const auto tp = static_cast<double>(true_positives(c));
  return safe_ratio(tp, tp + static_cast<double>(false_negatives(c)));
}

double ConfusionMatrix::f1(std::size_t c) const {
  const double p = precision(c);
  const double r = recall(c);
  return safe_ratio(2.0 * p * r, p + r);
}

double ConfusionMatrix::accuracy() const {
  std::size_t correct = 0;
  for (std::size_t c = 0; c < counts_.size(); ++c) correct += counts_[c][c];
  return safe_ratio(static_cast<double>(correct), static_cast<double>(total_));
}

double ConfusionMatrix::macro_f1() const {
  if (counts_.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < counts_.size(); ++c) sum += f1(c);
  return sum / static_cast<double>(counts_.size());
}

double macro_f1(std::span<const int> truth, std::span<const int> predicted, std::size_t num_classes) {
  return ConfusionMatrix(truth, predicted, num_classes).macro_f1();
}

double accuracy(std::span<const int> truth, std::span<const int> predicted) {
  require_same_length(truth, predicted);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == predicted[i] ? 1 : 0;
  return safe_ratio(static_cast<double>(correct), static_cast<double>(truth.size()));
}

nlohmann::json metrics_report(const ConfusionMatrix& cm) {
  nlohmann::json precision = nlohmann::json::array();
  nlohmann::json recall = nlohmann::json::array();
  nlohmann::json f1 = nlohmann::json::array();
  for (std::size_t c = 0; c < cm.num_classes(); ++c) {
    precision.push_back(cm.precision(c));
    recall.push_back(cm.recall(c));
    f1.push_back(cm.f1(c));
  }
  return nlohmann::json{
      {"accuracy", cm.accuracy()},
      {"per_class", {{"precision", precision}, {"recall", recall}, {"f1", f1}}},
      {"macro_f1", cm.macro_f1()},
      {"confusion_matrix", cm.counts()},
  };
}

}  // namespace neurochaos
