#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace neurochaos {

// Square confusion matrix; counts[t][p] is the number of samples of true class t
// predicted as p.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::span<const int> truth, std::span<const int> predicted, std::size_t num_classes);

  std::size_t num_classes() const noexcept { return counts_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t operator()(std::size_t truth, std::size_t predicted) const { return counts_[truth][predicted]; }
  const std::vector<std::vector<std::size_t>>& counts() const noexcept { return counts_; }

  // One-vs-rest counts for class c.
  std::size_t true_positives(std::size_t c) const;
  std::size_t false_positives(std::size_t c) const;
  std::size_t false_negatives(std::size_t c) const;
  std::size_t true_negatives(std::size_t c) const;

  // 0/0 is taken as 0 throughout.
  double precision(std::size_t c) const;
  double recall(std::size_t c) const;
  double f1(std::size_t c) const;

  double accuracy() const;
  double macro_f1() const;

 private:
  std::vector<std::vector<std::size_t>> counts_;
  std::size_t total_ = 0;
};

double macro_f1(std::span<const int> truth, std::span<const int> predicted, std::size_t num_classes);
double accuracy(std::span<const int> truth, std::span<const int> predicted);

// {accuracy, per_class:{precision:[...], recall:[...], f1:[...]}, macro_f1, confusion_matrix}
nlohmann::json metrics_report(const ConfusionMatrix& cm);

}  // namespace neurochaos
