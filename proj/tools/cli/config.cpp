#include "config.hpp"

#include <fstream>

namespace neurochaos::cli {
namespace {

using nlohmann::json;

std::string scaling_name(FeatureScaling s) { return s == FeatureScaling::Normalized ? "normalized" : "raw"; }

FeatureScaling parse_scaling(const std::string& s) {
  if (s == "normalized") return FeatureScaling::Normalized;
  if (s == "raw") return FeatureScaling::Raw;
  throw ConfigError("scaling must be 'normalized' or 'raw', got '" + s + "'");
}

NormalizationMode parse_normalization(const std::string& s) {
  if (s == "global") return NormalizationMode::Global;
  if (s == "train") return NormalizationMode::TrainOnly;
  throw ConfigError("normalization must be 'global' or 'train', got '" + s + "'");
}

MapKind parse_map(const std::string& s) {
  if (s == "logistic") return MapKind::Logistic;
  if (s == "skew-tent" || s == "gls" || s == "skewtent") return MapKind::SkewTent;
  throw ConfigError("map must be 'logistic' or 'skew-tent', got '" + s + "'");
}

Architecture parse_arch_or_throw(const std::string& s) {
  const auto arch = parse_architecture(s);
  if (!arch) throw ConfigError("unknown architecture '" + s + "'");
  return *arch;
}

template <typename T>
void read_if(const json& j, const char* key, T& target) {
  if (j.contains(key)) j.at(key).get_to(target);
}

}  // namespace

ClassifierSpec parse_classifier(const std::string& text) {
  if (text == "cosine") return {ClassifierKind::Cosine, 3};
  if (text == "gnb") return {ClassifierKind::Gnb, 3};
  if (text == "knn") return {ClassifierKind::Knn, 3};
  if (text.starts_with("knn:")) {
    try {
      std::size_t used = 0;
      const long k = std::stol(text.substr(4), &used);
      if (used == text.size() - 4 && k >= 1) return {ClassifierKind::Knn, static_cast<std::size_t>(k)};
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown classifier '" + text + "' (expected cosine, gnb, knn or knn:<k>)");
}

std::string classifier_name(const ClassifierSpec& spec) {
  switch (spec.kind) {
    case ClassifierKind::Cosine: return "cosine";
    case ClassifierKind::Gnb: return "gnb";
    case ClassifierKind::Knn: return "knn:" + std::to_string(spec.k);
  }
  return "unknown";
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("dataset")) {
      const auto& d = j.at("dataset");
      if (d.is_string()) {
        c.dataset.path = d.get<std::string>();
      } else {
        if (d.contains("path")) c.dataset.path = d.at("path").get<std::string>();
        read_if(d, "fixture", c.dataset.fixture);
        read_if(d, "has_header", c.dataset.has_header);
        read_if(d, "label_column", c.dataset.label_column);
        read_if(d, "train_counts", c.dataset.train_counts);
        read_if(d, "train_fraction", c.dataset.train_fraction);
        if (d.contains("normalization")) c.dataset.normalization = parse_normalization(d.at("normalization"));
      }
    }
    if (j.contains("architectures")) {
      c.architectures.clear();
      for (const auto& a : j.at("architectures")) c.architectures.push_back(parse_arch_or_throw(a.get<std::string>()));
    } else if (j.contains("architecture")) {
      c.architectures = {parse_arch_or_throw(j.at("architecture").get<std::string>())};
    }
    if (j.contains("hyperparams")) c.hyperparams = j.at("hyperparams").get<Hyperparams>();
    if (j.contains("grid")) {
      if (j.at("grid").is_string()) {
        if (j.at("grid").get<std::string>() != "default") throw ConfigError("grid must be an object or \"default\"");
        c.grid = Grid::default_grid();
      } else {
        c.grid = j.at("grid").get<Grid>();
      }
    }
    if (j.contains("classifiers")) {
      c.classifiers.clear();
      for (const auto& s : j.at("classifiers")) c.classifiers.push_back(parse_classifier(s.get<std::string>()));
    } else if (j.contains("classifier")) {
      c.classifiers = {parse_classifier(j.at("classifier").get<std::string>())};
    }
    read_if(j, "seed", c.seed);
    read_if(j, "seeds", c.seeds);
    read_if(j, "cap", c.cap);
    if (j.contains("scaling")) c.scaling = parse_scaling(j.at("scaling"));
    read_if(j, "folds", c.folds);
    read_if(j, "evaluate_on_train", c.evaluate_on_train);
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    read_if(j, "threads", c.threads);
    if (j.contains("lowsample")) {
      const auto& l = j.at("lowsample");
      read_if(l, "min_per_class", c.lowsample.min_per_class);
      read_if(l, "max_per_class", c.lowsample.max_per_class);
      read_if(l, "trials", c.lowsample.trials);
    }
    if (j.contains("lyapunov")) {
      const auto& l = j.at("lyapunov");
      if (l.contains("map")) c.lyapunov.map = parse_map(l.at("map"));
      read_if(l, "from", c.lyapunov.from);
      read_if(l, "to", c.lyapunov.to);
      read_if(l, "steps", c.lyapunov.steps);
      read_if(l, "x0", c.lyapunov.x0);
      read_if(l, "iterations", c.lyapunov.iterations);
      read_if(l, "burn_in", c.lyapunov.burn_in);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& c) {
  json archs = json::array();
  for (const auto& a : c.architectures) archs.push_back(architecture_name(a));
  json classifiers = json::array();
  for (const auto& s : c.classifiers) classifiers.push_back(classifier_name(s));
  json j{
      {"dataset",
       {{"path", c.dataset.path.generic_string()},
        {"fixture", c.dataset.fixture},
        {"has_header", c.dataset.has_header},
        {"label_column", c.dataset.label_column},
        {"train_counts", c.dataset.train_counts},
        {"train_fraction", c.dataset.train_fraction},
        {"normalization", c.dataset.normalization == NormalizationMode::Global ? "global" : "train"}}},
      {"architectures", archs},
      {"classifiers", classifiers},
      {"seed", c.seed},
      {"seeds", c.seeds},
      {"cap", c.cap},
      {"scaling", scaling_name(c.scaling)},
      {"folds", c.folds},
      {"evaluate_on_train", c.evaluate_on_train},
      {"lowsample",
       {{"min_per_class", c.lowsample.min_per_class},
        {"max_per_class", c.lowsample.max_per_class},
        {"trials", c.lowsample.trials}}},
      {"lyapunov",
       {{"map", std::string(to_string(c.lyapunov.map))},
        {"from", c.lyapunov.from},
        {"to", c.lyapunov.to},
        {"steps", c.lyapunov.steps},
        {"x0", c.lyapunov.x0},
        {"iterations", c.lyapunov.iterations},
        {"burn_in", c.lyapunov.burn_in}}},
      {"out", c.out.generic_string()},
  };
  j["hyperparams"] = c.hyperparams ? json(*c.hyperparams) : json(nullptr);
  j["grid"] = c.grid ? json(*c.grid) : json(nullptr);
  return j;
}

}  // namespace neurochaos::cli
