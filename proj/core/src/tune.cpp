#include "neurochaos/tune.hpp"

#include <algorithm>
#include <string>

#include "neurochaos/classify.hpp"
#include "neurochaos/errors.hpp"
#include "neurochaos/fixtures.hpp"
#include "neurochaos/format.hpp"
#include "neurochaos/metrics.hpp"
#include "neurochaos/parallel.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos {
namespace {

void validate_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ParameterError(std::string("grid axis ") + name + " is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!(axis[i] > 0.0 && axis[i] < 1.0)) {
      throw ParameterError(std::string("grid axis ") + name + " has a value outside (0, 1)");
    }
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw ParameterError(std::string("grid axis ") + name + " is not strictly ascending");
    }
  }
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

void Grid::validate() const {
  validate_axis(q_values, "q");
  validate_axis(b_values, "b");
  validate_axis(epsilon_values, "epsilon");
}

Hyperparams Grid::at(std::size_t index) const {
  const std::size_t ne = epsilon_values.size();
  const std::size_t nb = b_values.size();
  return Hyperparams{q_values.at(index / (nb * ne)), b_values.at((index / ne) % nb),
                     epsilon_values.at(index % ne)};
}

bool Grid::contains(const Hyperparams& hp) const {
  auto has = [](const std::vector<double>& axis, double v) {
    return std::find(axis.begin(), axis.end(), v) != axis.end();
  };
  return has(q_values, hp.q) && has(b_values, hp.b) && has(epsilon_values, hp.epsilon);
}

Grid Grid::single(const Hyperparams& hp) { return Grid{{hp.q}, {hp.b}, {hp.epsilon}}; }

Grid Grid::default_grid() {
  Grid g;
  for (int i = 1; i <= 50; ++i) g.q_values.push_back(i / 100.0);
  for (int i = 1; i <= 49; ++i) g.b_values.push_back(i / 100.0);
  for (int i = 0; i <= 30; ++i) g.epsilon_values.push_back((1 + 10 * i) / 1000.0);
  for (const auto& e : fixtures::tuned_hyperparams()) {
    g.q_values.push_back(e.hp.q);
    g.b_values.push_back(e.hp.b);
    g.epsilon_values.push_back(e.hp.epsilon);
  }
  g.q_values = sorted_unique(std::move(g.q_values));
  g.b_values = sorted_unique(std::move(g.b_values));
  g.epsilon_values = sorted_unique(std::move(g.epsilon_values));
  return g;
}

void to_json(nlohmann::json& j, const Grid& grid) {
  j = nlohmann::json{{"q", grid.q_values}, {"b", grid.b_values}, {"epsilon", grid.epsilon_values}};
}

void from_json(const nlohmann::json& j, Grid& grid) {
  j.at("q").get_to(grid.q_values);
  j.at("b").get_to(grid.b_values);
  j.at("epsilon").get_to(grid.epsilon_values);
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw ParameterError("cross-validation needs at least 2 folds");
  if (labels.empty()) throw StratificationError("no samples to fold");

  std::vector<std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw StratificationError("negative label");
    const auto c = static_cast<std::size_t>(labels[i]);
    if (c >= by_class.size()) by_class.resize(c + 1);
    by_class[c].push_back(i);
  }

  std::vector<std::vector<std::size_t>> folds(k);
  Rng rng(seed);
  std::size_t next_fold = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < k) {
      throw StratificationError("class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                                " samples, fewer than " + std::to_string(k) + " folds");
    }
    rng.shuffle(std::span<std::size_t>(members));
    for (auto idx : members) {
      folds[next_fold].push_back(idx);
      next_fold = (next_fold + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

bool preferred(const GridEntry& a, const GridEntry& b) {
  if (a.mean_macro_f1 != b.mean_macro_f1) return a.mean_macro_f1 > b.mean_macro_f1;
  if (a.hp.epsilon != b.hp.epsilon) return a.hp.epsilon < b.hp.epsilon;
  if (a.hp.q != b.hp.q) return a.hp.q < b.hp.q;
  return a.hp.b < b.hp.b;
}

GridEntry evaluate_point(const Matrix& X, std::span<const int> y, std::size_t num_classes,
                         const NeuronLayout& layout, const Hyperparams& hp,
                         const std::vector<std::vector<std::size_t>>& folds, const TuneOptions& options) {
  TransformOptions topt;
  topt.cap = options.cap;
  topt.scaling = options.scaling;
  topt.threads = 1;
  const FeatureMatrix features = transform(X, layout, hp, topt);

  GridEntry entry;
  entry.hp = hp;
  std::vector<char> in_fold(X.rows());
  for (const auto& fold : folds) {
    std::fill(in_fold.begin(), in_fold.end(), 0);
    for (auto i : fold) in_fold[i] = 1;
    std::vector<std::size_t> train_idx;
    train_idx.reserve(X.rows() - fold.size());
    for (std::size_t i = 0; i < X.rows(); ++i) {
      if (!in_fold[i]) train_idx.push_back(i);
    }
    const auto train_labels = select(y, std::span<const std::size_t>(train_idx));
    const auto test_labels = select(y, std::span<const std::size_t>(fold));
    const ClassModel model = fit_cosine(features.select_rows(train_idx), train_labels);
    const auto predicted = predict_cosine(model, features.select_rows(fold));
    entry.fold_scores.push_back(macro_f1(test_labels, predicted, num_classes));
  }
  double sum = 0.0;
  for (double s : entry.fold_scores) sum += s;
  entry.mean_macro_f1 = sum / static_cast<double>(entry.fold_scores.size());
  return entry;
}

TuneResult grid_search(const Matrix& X, std::span<const int> y, const NeuronLayout& layout,
                       const Grid& grid, const TuneOptions& options) {
  grid.validate();
  if (X.rows() != y.size()) throw DimensionError("feature rows and labels differ");
  const std::size_t num_classes = count_classes(y);
  const auto folds = stratified_folds(y, options.folds, options.seed);

  TuneResult result;
  result.table.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    result.table[i] = evaluate_point(X, y, num_classes, layout, grid.at(i), folds, options);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.table.size(); ++i) {
    if (preferred(result.table[i], result.table[best])) best = i;
  }
  result.best = result.table[best].hp;
  result.best_cv_macro_f1 = result.table[best].mean_macro_f1;
  return result;
}

void write_grid_csv(std::ostream& out, const TuneResult& result) {
  const std::size_t k = result.table.empty() ? 0 : result.table.front().fold_scores.size();
  out << "q,b,epsilon,mean_macro_f1";
  for (std::size_t f = 0; f < k; ++f) out << ",fold" << (f + 1);
  out << '\n';
  for (const auto& e : result.table) {
    out << format_double(e.hp.q) << ',' << format_double(e.hp.b) << ',' << format_double(e.hp.epsilon) << ','
        << format_double(e.mean_macro_f1);
    for (double s : e.fold_scores) out << ',' << format_double(s);
    out << '\n';
  }
}

}  // namespace neurochaos
