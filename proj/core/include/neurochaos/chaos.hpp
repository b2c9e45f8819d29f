#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace neurochaos {

enum class MapKind { SkewTent, Logistic };

// Largest value an iterate may take. Images equal to 1.0 are pulled back here so
// that every trajectory stays on [0, 1).
inline constexpr double kMaxState = 1.0 - 0x1.0p-52;

// A one-dimensional chaotic map on [0, 1).
//
// SkewTent (the GLS neuron) with branch point `skew` in (0, 1):
//   z / skew            for 0 <= z < skew
//   (1 - z)/(1 - skew)  for skew <= z < 1
// Logistic with bifurcation parameter r in (0, 4]:
//   r x (1 - x)
class ChaoticMap {
 public:
  static ChaoticMap skew_tent(double skew);
  static ChaoticMap logistic(double r = 4.0);

  MapKind kind() const noexcept { return kind_; }
  // Skew for SkewTent, r for Logistic.
  double parameter() const noexcept { return parameter_; }

  // One iteration. No range check on `state`; see map_step for the checked form.
  double operator()(double state) const noexcept {
    double next;
    if (kind_ == MapKind::SkewTent) {
      next = state < parameter_ ? state / parameter_ : (1.0 - state) / (1.0 - parameter_);
    } else {
      next = parameter_ * state * (1.0 - state);
    }
    return next < 1.0 ? next : kMaxState;
  }

  // |G'(x)|, or 0 where the map is not differentiable (skew-tent branch point).
  double abs_derivative(double state) const noexcept;

  friend bool operator==(const ChaoticMap&, const ChaoticMap&) = default;

 private:
  ChaoticMap(MapKind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  MapKind kind_;
  double parameter_;
};

std::string_view to_string(MapKind kind);

// Checked single step: throws DomainError if state is outside [0, 1).
double map_step(const ChaoticMap& map, double state);

// The tunable triple of a neurochaos layer.
struct Hyperparams {
  double q = 0.0;        // initial neural activity
  double b = 0.0;        // discrimination threshold (and skew-tent branch point)
  double epsilon = 0.0;  // radius of the stopping neighbourhood around the stimulus

  // Throws ParameterError unless all three lie strictly inside (0, 1).
  void validate() const;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

void to_json(nlohmann::json& j, const Hyperparams& hp);
void from_json(const nlohmann::json& j, Hyperparams& hp);

inline constexpr std::size_t kDefaultIterationCap = 10000;

// One neuron's trajectory for one stimulus.
struct NeuralTrace {
  std::vector<double> values;  // values[0] == q
  std::size_t firing_time = 0;  // == values.size()
  bool detected = false;
};

// Iterates `map` from q until an iterate lies strictly within epsilon of the
// stimulus, or until the trace holds `cap` values.
NeuralTrace generate_trace(const ChaoticMap& map, double q, double stimulus, double epsilon,
                           std::size_t cap = kDefaultIterationCap);

// Streaming summary of the same trajectory, without materializing it.
struct TraceSummary {
  std::size_t firing_time = 0;
  std::size_t above_threshold = 0;  // iterates c with c >= threshold
  double energy = 0.0;              // sum of c^2
  bool detected = false;
};

TraceSummary summarize_trace(const ChaoticMap& map, double q, double stimulus, double epsilon,
                             double threshold, std::size_t cap = kDefaultIterationCap);

struct LyapunovEstimate {
  double exponent = 0.0;
  std::size_t terms = 0;           // number of ln|G'| terms averaged
  std::size_t skipped_points = 0;  // iterates dropped at non-differentiable / critical points
};

// Averages ln|G'(x_j)| over `iterations` iterates taken after discarding `burn_in`.
// Iterates where the derivative is zero or undefined are skipped and replaced by
// one extra iterate each.
LyapunovEstimate estimate_lyapunov(const ChaoticMap& map, double x0, std::size_t iterations,
                                   std::size_t burn_in = 0);

inline double lyapunov(const ChaoticMap& map, double x0, std::size_t iterations,
                       std::size_t burn_in = 0) {
  return estimate_lyapunov(map, x0, iterations, burn_in).exponent;
}

}  // namespace neurochaos
