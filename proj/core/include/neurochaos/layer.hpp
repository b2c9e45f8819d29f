#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "neurochaos/chaos.hpp"

namespace neurochaos {

enum class NeuronKind { GLS, Logistic };

enum class LayoutScheme { HomogeneousGLS, HomogeneousLogistic, OddEven, RandomHeterogeneous };

// Input-layer neuron placement: one neuron kind per input feature.
struct NeuronLayout {
  LayoutScheme scheme = LayoutScheme::HomogeneousGLS;
  double proportion_logistic = 0.0;
  std::uint64_t seed = 0;
  std::vector<NeuronKind> kinds;

  std::size_t size() const noexcept { return kinds.size(); }
  std::size_t logistic_count() const noexcept;

  friend bool operator==(const NeuronLayout&, const NeuronLayout&) = default;
};

// Number of logistic neurons a random layout of n neurons receives: round-half-up(p*n).
std::size_t logistic_neuron_count(std::size_t n, double proportion_logistic);

// Builds a layout of n neurons. proportion_logistic is only consulted for
// RandomHeterogeneous, whose logistic positions are a uniform random subset drawn
// without replacement from a generator seeded with `seed`.
NeuronLayout build_layout(std::size_t n, LayoutScheme scheme, double proportion_logistic = 0.0,
                          std::uint64_t seed = 0);

// The map a neuron of the given kind runs under hyperparameters hp:
// GLS -> skew-tent with branch point hp.b; Logistic -> r = 4.
ChaoticMap neuron_map(NeuronKind kind, const Hyperparams& hp);

std::string_view to_string(NeuronKind kind);
std::string_view to_string(LayoutScheme scheme);
std::optional<LayoutScheme> parse_scheme(std::string_view text);

// Architecture as named in experiment configs: a scheme plus a logistic proportion.
struct Architecture {
  LayoutScheme scheme = LayoutScheme::RandomHeterogeneous;
  double proportion_logistic = 0.25;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// Accepts "GLS", "logistic", "HNL"/"odd-even", "RH25L75G" style names and
// "RH<pct>" / "random:<p>" for arbitrary proportions. Returns nullopt otherwise.
std::optional<Architecture> parse_architecture(std::string_view name);
// Canonical name: "GLS", "Logistic", "HNL", or "RH<pct>L<100-pct>G".
std::string architecture_name(const Architecture& arch);

void to_json(nlohmann::json& j, const NeuronLayout& layout);
void from_json(const nlohmann::json& j, NeuronLayout& layout);

}  // namespace neurochaos
