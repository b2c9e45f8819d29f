#include "neurochaos/chaos.hpp"

#include <cmath>
#include <string>

#include "neurochaos/errors.hpp"

namespace neurochaos {
namespace {

void require_stimulus_args(double q, double stimulus, double epsilon, std::size_t cap) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("initial activity q must lie in (0, 1)");
  if (!(stimulus >= 0.0 && stimulus <= 1.0)) {
    throw DomainError("stimulus must be normalized to [0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (cap == 0) throw ParameterError("iteration cap must be at least 1");
}

}  // namespace

ChaoticMap ChaoticMap::skew_tent(double skew) {
  if (!(skew > 0.0 && skew < 1.0)) {
    throw ParameterError("skew-tent branch point must lie in (0, 1), got " + std::to_string(skew));
  }
  return ChaoticMap(MapKind::SkewTent, skew);
}

ChaoticMap ChaoticMap::logistic(double r) {
  if (!(r > 0.0 && r <= 4.0)) {
    throw ParameterError("logistic parameter r must lie in (0, 4], got " + std::to_string(r));
  }
  return ChaoticMap(MapKind::Logistic, r);
}

double ChaoticMap::abs_derivative(double state) const noexcept {
  if (kind_ == MapKind::SkewTent) {
    if (state == parameter_) return 0.0;
    return state < parameter_ ? 1.0 / parameter_ : 1.0 / (1.0 - parameter_);
  }
  return std::abs(parameter_ * (1.0 - 2.0 * state));
}

std::string_view to_string(MapKind kind) {
  return kind == MapKind::SkewTent ? "skew-tent" : "logistic";
}

double map_step(const ChaoticMap& map, double state) {
  if (!(state >= 0.0 && state < 1.0)) throw DomainError("map state must lie in [0, 1)");
  return map(state);
}

void Hyperparams::validate() const {
  auto inside = [](double v) { return v > 0.0 && v < 1.0; };
  if (!inside(q)) throw ParameterError("q must lie in (0, 1)");
  if (!inside(b)) throw ParameterError("b must lie in (0, 1)");
  if (!inside(epsilon)) throw ParameterError("epsilon must lie in (0, 1)");
}

void to_json(nlohmann::json& j, const Hyperparams& hp) {
  j = nlohmann::json{{"q", hp.q}, {"b", hp.b}, {"epsilon", hp.epsilon}};
}

void from_json(const nlohmann::json& j, Hyperparams& hp) {
  hp.q = j.at("q").get<double>();
  hp.b = j.at("b").get<double>();
  hp.epsilon = j.at("epsilon").get<double>();
}

NeuralTrace generate_trace(const ChaoticMap& map, double q, double stimulus, double epsilon,
                           std::size_t cap) {
  require_stimulus_args(q, stimulus, epsilon, cap);
  NeuralTrace trace;
  double c = q;
  trace.values.push_back(c);
  while (true) {
    if (std::abs(c - stimulus) < epsilon) {
      trace.detected = true;
      break;
    }
    if (trace.values.size() == cap) break;
    c = map(c);
    trace.values.push_back(c);
  }
  trace.firing_time = trace.values.size();
  return trace;
}

TraceSummary summarize_trace(const ChaoticMap& map, double q, double stimulus, double epsilon,
                             double threshold, std::size_t cap) {
  require_stimulus_args(q, stimulus, epsilon, cap);
  TraceSummary s;
  double c = q;
  while (true) {
    ++s.firing_time;
    s.energy += c * c;
    if (c >= threshold) ++s.above_threshold;
    if (std::abs(c - stimulus) < epsilon) {
      s.detected = true;
      break;
    }
    if (s.firing_time == cap) break;
    c = map(c);
  }
  return s;
}

LyapunovEstimate estimate_lyapunov(const ChaoticMap& map, double x0, std::size_t iterations,
                                   std::size_t burn_in) {
  if (!(x0 > 0.0 && x0 < 1.0)) throw ParameterError("x0 must lie in (0, 1)");
  if (iterations == 0) throw ParameterError("iterations must be at least 1");

  double x = x0;
  for (std::size_t i = 0; i < burn_in; ++i) x = map(x);

  LyapunovEstimate est;
  double sum = 0.0;
  // Bound the extension so a trajectory stuck on a critical point terminates.
  const std::size_t max_skips = iterations;
  while (est.terms < iterations) {
    const double d = map.abs_derivative(x);
    if (d > 0.0 && std::isfinite(d)) {
      sum += std::log(d);
      ++est.terms;
    } else {
      ++est.skipped_points;
      if (est.skipped_points > max_skips) {
        throw DomainError("trajectory is trapped on a non-differentiable point");
      }
    }
    x = map(x);
  }
  est.exponent = sum / static_cast<double>(est.terms);
  return est;
}

}  // namespace neurochaos
