#include "neurochaos/layer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "neurochaos/errors.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::size_t NeuronLayout::logistic_count() const noexcept {
  return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), NeuronKind::Logistic));
}

std::size_t logistic_neuron_count(std::size_t n, double proportion_logistic) {
  const double scaled = proportion_logistic * static_cast<double>(n);
  return std::min(n, static_cast<std::size_t>(std::floor(scaled + 0.5)));
}

NeuronLayout build_layout(std::size_t n, LayoutScheme scheme, double proportion_logistic,
                          std::uint64_t seed) {
  if (n == 0) throw ParameterError("a layout needs at least one neuron");
  if (!(proportion_logistic >= 0.0 && proportion_logistic <= 1.0)) {
    throw ParameterError("logistic proportion must lie in [0, 1]");
  }

  NeuronLayout layout;
  layout.scheme = scheme;
  layout.seed = seed;
  layout.kinds.assign(n, NeuronKind::GLS);

  switch (scheme) {
    case LayoutScheme::HomogeneousGLS:
      layout.proportion_logistic = 0.0;
      break;
    case LayoutScheme::HomogeneousLogistic:
      layout.proportion_logistic = 1.0;
      std::fill(layout.kinds.begin(), layout.kinds.end(), NeuronKind::Logistic);
      break;
    case LayoutScheme::OddEven:
      // 1-based odd positions are GLS, even positions logistic.
      for (std::size_t i = 1; i < n; i += 2) layout.kinds[i] = NeuronKind::Logistic;
      layout.proportion_logistic = static_cast<double>(n / 2) / static_cast<double>(n);
      break;
    case LayoutScheme::RandomHeterogeneous: {
      layout.proportion_logistic = proportion_logistic;
      const std::size_t count = logistic_neuron_count(n, proportion_logistic);
      std::vector<std::size_t> positions(n);
      std::iota(positions.begin(), positions.end(), std::size_t{0});
      Rng rng(seed);
      // Partial Fisher-Yates: the first `count` slots become a uniform subset.
      for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(positions[i], positions[j]);
        layout.kinds[positions[i]] = NeuronKind::Logistic;
      }
      break;
    }
  }
  return layout;
}

ChaoticMap neuron_map(NeuronKind kind, const Hyperparams& hp) {
  return kind == NeuronKind::GLS ? ChaoticMap::skew_tent(hp.b) : ChaoticMap::logistic(4.0);
}

std::string_view to_string(NeuronKind kind) { return kind == NeuronKind::GLS ? "GLS" : "Logistic"; }

std::string_view to_string(LayoutScheme scheme) {
  switch (scheme) {
    case LayoutScheme::HomogeneousGLS: return "HomogeneousGLS";
    case LayoutScheme::HomogeneousLogistic: return "HomogeneousLogistic";
    case LayoutScheme::OddEven: return "OddEven";
    case LayoutScheme::RandomHeterogeneous: return "RandomHeterogeneous";
  }
  return "unknown";
}

std::optional<LayoutScheme> parse_scheme(std::string_view text) {
  for (auto s : {LayoutScheme::HomogeneousGLS, LayoutScheme::HomogeneousLogistic,
                 LayoutScheme::OddEven, LayoutScheme::RandomHeterogeneous}) {
    if (lower(to_string(s)) == lower(text)) return s;
  }
  return std::nullopt;
}

std::optional<Architecture> parse_architecture(std::string_view name) {
  const std::string n = lower(name);
  if (n == "gls" || n == "homogeneousgls" || n == "chaosfex") {
    return Architecture{LayoutScheme::HomogeneousGLS, 0.0};
  }
  if (n == "logistic" || n == "homogeneouslogistic") {
    return Architecture{LayoutScheme::HomogeneousLogistic, 1.0};
  }
  if (n == "hnl" || n == "odd-even" || n == "oddeven" || n == "hetero") {
    return Architecture{LayoutScheme::OddEven, 0.5};
  }
  if (n.starts_with("random:")) {
    const std::string rest = n.substr(7);
    try {
      std::size_t used = 0;
      const double p = std::stod(rest, &used);
      if (used != rest.size() || !(p >= 0.0 && p <= 1.0)) return std::nullopt;
      return Architecture{LayoutScheme::RandomHeterogeneous, p};
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (n.starts_with("rh")) {
    // RH<L>L<G>G, or RH<L>.
    std::string_view rest = std::string_view(n).substr(2);
    const auto lpos = rest.find('l');
    const auto logistic_pct = parse_int(rest.substr(0, lpos));
    if (!logistic_pct || *logistic_pct < 0 || *logistic_pct > 100) return std::nullopt;
    if (lpos != std::string_view::npos) {
      std::string_view tail = rest.substr(lpos + 1);
      if (!tail.ends_with('g')) return std::nullopt;
      const auto gls_pct = parse_int(tail.substr(0, tail.size() - 1));
      if (!gls_pct || *gls_pct < 0 || *gls_pct > 100) return std::nullopt;
      // "RH25L50G"-style typos normalize to the logistic share.
    }
    return Architecture{LayoutScheme::RandomHeterogeneous, *logistic_pct / 100.0};
  }
  return std::nullopt;
}

std::string architecture_name(const Architecture& arch) {
  switch (arch.scheme) {
    case LayoutScheme::HomogeneousGLS: return "GLS";
    case LayoutScheme::HomogeneousLogistic: return "Logistic";
    case LayoutScheme::OddEven: return "HNL";
    case LayoutScheme::RandomHeterogeneous: {
      const int pct = static_cast<int>(std::lround(arch.proportion_logistic * 100.0));
      if (std::abs(pct / 100.0 - arch.proportion_logistic) > 1e-12) {
        return "random:" + nlohmann::json(arch.proportion_logistic).dump();
      }
      return "RH" + std::to_string(pct) + "L" + std::to_string(100 - pct) + "G";
    }
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const NeuronLayout& layout) {
  nlohmann::json kinds = nlohmann::json::array();
  for (auto k : layout.kinds) kinds.push_back(std::string(to_string(k)));
  j = nlohmann::json{{"scheme", std::string(to_string(layout.scheme))},
                     {"n", layout.size()},
                     {"proportion_logistic", layout.proportion_logistic},
                     {"seed", layout.seed},
                     {"kinds", std::move(kinds)}};
}

void from_json(const nlohmann::json& j, NeuronLayout& layout) {
  const auto scheme = parse_scheme(j.at("scheme").get<std::string>());
  if (!scheme) throw ParameterError("unknown layout scheme");
  layout.scheme = *scheme;
  layout.proportion_logistic = j.at("proportion_logistic").get<double>();
  layout.seed = j.at("seed").get<std::uint64_t>();
  layout.kinds.clear();
  for (const auto& k : j.at("kinds")) {
    const auto s = k.get<std::string>();
    if (s == "GLS") layout.kinds.push_back(NeuronKind::GLS);
    else if (s == "Logistic") layout.kinds.push_back(NeuronKind::Logistic);
    else throw ParameterError("unknown neuron kind: " + s);
  }
  if (j.at("n").get<std::size_t>() != layout.kinds.size()) {
    throw DimensionError("layout n does not match kinds length");
  }
}

}  // namespace neurochaos
