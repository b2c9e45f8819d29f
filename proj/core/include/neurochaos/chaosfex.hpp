#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "neurochaos/chaos.hpp"
#include "neurochaos/layer.hpp"
#include "neurochaos/matrix.hpp"

namespace neurochaos {

// m x 4n ChaosFEX features. Input feature j owns columns [4j, 4j+4) holding
// (firing time, firing rate, energy, entropy) in that order.
using FeatureMatrix = Matrix;

enum class Feature : std::size_t { FiringTime = 0, FiringRate = 1, Energy = 2, Entropy = 3 };
inline constexpr std::size_t kFeaturesPerNeuron = 4;

constexpr std::size_t feature_column(std::size_t neuron, Feature f) {
  return neuron * kFeaturesPerNeuron + static_cast<std::size_t>(f);
}

// Fraction of trace values at or above the threshold b.
double firing_rate(std::span<const double> trace, double b);
inline double firing_rate(const NeuralTrace& t, double b) { return firing_rate(t.values, b); }

// Sum of squared trace values.
double energy(std::span<const double> trace);
inline double energy(const NeuralTrace& t) { return energy(t.values); }

// Shannon entropy (bits) of the trace binarized at threshold b.
double entropy(std::span<const double> trace, double b);
inline double entropy(const NeuralTrace& t, double b) { return entropy(t.values, b); }

// Binary entropy of a two-symbol sequence with `ones` ones out of `length`.
double binary_entropy(std::size_t ones, std::size_t length);

enum class FeatureScaling {
  // firing time / cap and energy / firing time, so every feature lies in [0, 1]
  Normalized,
  // raw iteration count and raw energy
  Raw,
};

struct TransformOptions {
  std::size_t cap = kDefaultIterationCap;
  FeatureScaling scaling = FeatureScaling::Normalized;
  unsigned threads = 1;  // 0 = all hardware threads
};

struct TransformStats {
  std::size_t traces = 0;
  std::size_t non_detections = 0;  // traces truncated at the cap
};

// The four features of one neuron for one stimulus.
struct NeuronFeatures {
  double firing_time = 0.0;
  double firing_rate = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  bool detected = false;
};

NeuronFeatures neuron_features(NeuronKind kind, double stimulus, const Hyperparams& hp,
                               const TransformOptions& options = {});

// Transforms an m x n matrix normalized to [0, 1] into m x 4n ChaosFEX features.
// Throws DimensionError if X.cols() != layout.size() and DomainError if any entry
// lies outside [0, 1].
FeatureMatrix transform(const Matrix& X, const NeuronLayout& layout, const Hyperparams& hp,
                        const TransformOptions& options = {}, TransformStats* stats = nullptr);

std::vector<std::string> feature_csv_header(std::size_t neurons);

// Writes features as CSV with header f<j>_<time|rate|energy|entropy>. If labels is
// non-empty a trailing "label" column is added.
void write_feature_csv(std::ostream& out, const FeatureMatrix& features,
                       std::span<const int> labels = {});

}  // namespace neurochaos
