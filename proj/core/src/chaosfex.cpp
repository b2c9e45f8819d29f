#include "neurochaos/chaosfex.hpp"

#include <atomic>
#include <cmath>

#include "neurochaos/errors.hpp"
#include "neurochaos/format.hpp"
#include "neurochaos/parallel.hpp"

namespace neurochaos {

double firing_rate(std::span<const double> trace, double b) {
  if (trace.empty()) throw DimensionError("trace must be non-empty");
  std::size_t above = 0;
  for (double c : trace) above += c >= b ? 1 : 0;
  return static_cast<double>(above) / static_cast<double>(trace.size());
}

double energy(std::span<const double> trace) {
  if (trace.empty()) throw DimensionError("trace must be non-empty");
  double e = 0.0;
  for (double c : trace) e += c * c;
  return e;
}

double binary_entropy(std::size_t ones, std::size_t length) {
  if (length == 0 || ones == 0 || ones == length) return 0.0;
  const double p1 = static_cast<double>(ones) / static_cast<double>(length);
  const double p0 = 1.0 - p1;
  return -(p0 * std::log2(p0) + p1 * std::log2(p1));
}

double entropy(std::span<const double> trace, double b) {
  if (trace.empty()) throw DimensionError("trace must be non-empty");
  std::size_t ones = 0;
  for (double c : trace) ones += c >= b ? 1 : 0;
  return binary_entropy(ones, trace.size());
}

NeuronFeatures neuron_features(NeuronKind kind, double stimulus, const Hyperparams& hp,
                               const TransformOptions& options) {
  const ChaoticMap map = neuron_map(kind, hp);
  const TraceSummary s = summarize_trace(map, hp.q, stimulus, hp.epsilon, hp.b, options.cap);
  const auto length = static_cast<double>(s.firing_time);

  NeuronFeatures f;
  f.detected = s.detected;
  f.firing_rate = static_cast<double>(s.above_threshold) / length;
  f.entropy = binary_entropy(s.above_threshold, s.firing_time);
  if (options.scaling == FeatureScaling::Normalized) {
    f.firing_time = length / static_cast<double>(options.cap);
    f.energy = s.energy / length;
  } else {
    f.firing_time = length;
    f.energy = s.energy;
  }
  return f;
}

FeatureMatrix transform(const Matrix& X, const NeuronLayout& layout, const Hyperparams& hp,
                        const TransformOptions& options, TransformStats* stats) {
  hp.validate();
  if (options.cap == 0) throw ParameterError("iteration cap must be at least 1");
  if (X.cols() != layout.size()) {
    throw DimensionError("input has " + std::to_string(X.cols()) + " features but the layout has " +
                         std::to_string(layout.size()) + " neurons");
  }
  for (double v : X.data()) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("input must be normalized to [0, 1]");
  }

  const std::size_t n = layout.size();
  FeatureMatrix out(X.rows(), n * kFeaturesPerNeuron);
  std::atomic<std::size_t> misses{0};

  parallel_for(X.rows(), options.threads, [&](std::size_t i) {
    std::size_t local_misses = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const NeuronFeatures f = neuron_features(layout.kinds[j], X(i, j), hp, options);
      out(i, feature_column(j, Feature::FiringTime)) = f.firing_time;
      out(i, feature_column(j, Feature::FiringRate)) = f.firing_rate;
      out(i, feature_column(j, Feature::Energy)) = f.energy;
      out(i, feature_column(j, Feature::Entropy)) = f.entropy;
      if (!f.detected) ++local_misses;
    }
    misses.fetch_add(local_misses, std::memory_order_relaxed);
  });

  if (stats) {
    stats->traces += X.rows() * n;
    stats->non_detections += misses.load();
  }
  return out;
}

std::vector<std::string> feature_csv_header(std::size_t neurons) {
  static constexpr const char* kNames[] = {"time", "rate", "energy", "entropy"};
  std::vector<std::string> header;
  header.reserve(neurons * kFeaturesPerNeuron);
  for (std::size_t j = 0; j < neurons; ++j) {
    for (const char* name : kNames) header.push_back("f" + std::to_string(j) + "_" + name);
  }
  return header;
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& features, std::span<const int> labels) {
  if (features.cols() % kFeaturesPerNeuron != 0) {
    throw DimensionError("feature matrix width is not a multiple of 4");
  }
  if (!labels.empty() && labels.size() != features.rows()) {
    throw DimensionError("label count does not match feature rows");
  }
  const auto header = feature_csv_header(features.cols() / kFeaturesPerNeuron);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  if (!labels.empty()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < features.rows(); ++i) {
    const auto row = features.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    if (!labels.empty()) out << ',' << labels[i];
    out << '\n';
  }
}

}  // namespace neurochaos
