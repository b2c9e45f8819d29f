#include "neurochaos/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "neurochaos/errors.hpp"
#include "neurochaos/format.hpp"
#include "neurochaos/rng.hpp"

namespace neurochaos {
namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  std::string out(s.substr(begin, end - begin + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      cell += ch;
    } else if (ch == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "?" || cell == "NA" || cell == "NaN" || cell == "nan";
}

std::optional<double> parse_number(const std::string& cell) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

RawTable parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw ParseError("empty CSV input", 1);

  const std::size_t width = rows.front().size();
  if (width < 2) throw ParseError("need at least one feature column and a label column", line_numbers[0]);

  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (options.has_header) {
    names = rows.front();
    first_data = 1;
  } else {
    for (std::size_t c = 0; c + 1 < width; ++c) names.push_back("x" + std::to_string(c));
    names.push_back("label");
  }

  std::size_t label_col = width - 1;
  if (!options.label_column.empty()) {
    if (!options.has_header) throw ParseError("label column by name needs a header row", 1);
    const auto it = std::find(names.begin(), names.end(), options.label_column);
    if (it == names.end()) throw ParseError("no column named '" + options.label_column + "'", line_numbers[0]);
    label_col = static_cast<std::size_t>(it - names.begin());
  }

  RawTable table;
  table.label_name = names[label_col];
  for (std::size_t c = 0; c < width; ++c) {
    if (c != label_col) table.feature_names.push_back(names[c]);
  }

  const std::size_t m = rows.size() - first_data;
  std::vector<double> values;
  values.reserve(m * (width - 1));
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()),
                       line_numbers[r]);
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (is_missing(cells[c])) {
        throw ParseError("missing value in column '" + names[c] + "'", line_numbers[r]);
      }
      if (c == label_col) continue;
      const auto v = parse_number(cells[c]);
      if (!v) throw ParseError("non-numeric value '" + cells[c] + "' in column '" + names[c] + "'", line_numbers[r]);
      values.push_back(*v);
    }
    table.labels.push_back(cells[label_col]);
  }
  table.features = Matrix(m, width - 1, std::move(values));
  return table;
}

RawTable load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_csv(in, options);
}

void write_csv(std::ostream& out, const RawTable& table) {
  for (const auto& name : table.feature_names) out << name << ',';
  out << table.label_name << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (double v : table.features.row(i)) out << format_double(v) << ',';
    out << table.labels[i] << '\n';
  }
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(num_classes(), 0);
  for (int label : y) ++counts.at(static_cast<std::size_t>(label));
  return counts;
}

std::vector<ColumnRange> fit_normalization(const Matrix& raw) {
  std::vector<ColumnRange> ranges(raw.cols());
  if (raw.rows() == 0) return ranges;
  for (std::size_t c = 0; c < raw.cols(); ++c) ranges[c] = {raw(0, c), raw(0, c)};
  for (std::size_t r = 1; r < raw.rows(); ++r) {
    for (std::size_t c = 0; c < raw.cols(); ++c) {
      ranges[c].min = std::min(ranges[c].min, raw(r, c));
      ranges[c].max = std::max(ranges[c].max, raw(r, c));
    }
  }
  return ranges;
}

Matrix apply_normalization(const Matrix& raw, std::span<const ColumnRange> ranges, bool clamp) {
  if (ranges.size() != raw.cols()) throw DimensionError("normalization ranges do not match columns");
  Matrix out(raw.rows(), raw.cols());
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    for (std::size_t c = 0; c < raw.cols(); ++c) {
      const double span = ranges[c].max - ranges[c].min;
      double v = span > 0.0 ? (raw(r, c) - ranges[c].min) / span : 0.0;
      if (clamp) v = std::clamp(v, 0.0, 1.0);
      out(r, c) = v;
    }
  }
  return out;
}

Matrix denormalize(const Matrix& normalized, std::span<const ColumnRange> ranges) {
  if (ranges.size() != normalized.cols()) throw DimensionError("normalization ranges do not match columns");
  Matrix out(normalized.rows(), normalized.cols());
  for (std::size_t r = 0; r < normalized.rows(); ++r) {
    for (std::size_t c = 0; c < normalized.cols(); ++c) {
      out(r, c) = normalized(r, c) * (ranges[c].max - ranges[c].min) + ranges[c].min;
    }
  }
  return out;
}

std::vector<std::string> sorted_class_names(std::span<const std::string> labels) {
  std::vector<std::string> names(labels.begin(), labels.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const bool numeric = std::all_of(names.begin(), names.end(),
                                   [](const std::string& s) { return parse_number(s).has_value(); });
  if (numeric) {
    std::stable_sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      return *parse_number(a) < *parse_number(b);
    });
  }
  return names;
}

namespace {

std::vector<int> encode_labels(std::span<const std::string> labels, std::span<const std::string> class_names) {
  std::map<std::string, int, std::less<>> index;
  for (std::size_t c = 0; c < class_names.size(); ++c) index.emplace(class_names[c], static_cast<int>(c));
  std::vector<int> y;
  y.reserve(labels.size());
  for (const auto& l : labels) y.push_back(index.at(l));
  return y;
}

}  // namespace

Dataset normalize(const RawTable& table) {
  if (table.rows() == 0) throw SplitError("dataset has no rows");
  Dataset d;
  d.normalization = fit_normalization(table.features);
  d.X = apply_normalization(table.features, d.normalization);
  d.feature_names = table.feature_names;
  d.class_names = sorted_class_names(table.labels);
  d.y = encode_labels(table.labels, d.class_names);
  return d;
}

SplitIndices split_indices(std::span<const int> labels, std::span<const std::size_t> train_counts,
                           std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> by_class(train_counts.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    if (labels[i] < 0 || c >= train_counts.size()) {
      throw SplitError("label " + std::to_string(labels[i]) + " has no train count");
    }
    by_class[c].push_back(i);
  }
  SplitIndices out;
  Rng rng(seed);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (train_counts[c] > members.size()) {
      throw SplitError("class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                       " samples but " + std::to_string(train_counts[c]) + " were requested for training");
    }
    rng.shuffle(std::span<std::size_t>(members));
    out.train.insert(out.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(train_counts[c]));
    out.test.insert(out.test.end(), members.begin() + static_cast<std::ptrdiff_t>(train_counts[c]), members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
  Dataset out;
  out.X = data.X.select_rows(indices);
  out.y = select(std::span<const int>(data.y), indices);
  out.feature_names = data.feature_names;
  out.class_names = data.class_names;
  out.normalization = data.normalization;
  return out;
}

TrainTestSplit split(const Dataset& data, std::span<const std::size_t> train_counts, std::uint64_t seed) {
  if (train_counts.size() != data.num_classes()) {
    throw SplitError("expected " + std::to_string(data.num_classes()) + " train counts, got " +
                     std::to_string(train_counts.size()));
  }
  TrainTestSplit out;
  out.indices = split_indices(data.y, train_counts, seed);
  out.train = subset(data, out.indices.train);
  out.test = subset(data, out.indices.test);
  return out;
}

TrainTestSplit split(const RawTable& table, std::span<const std::size_t> train_counts, std::uint64_t seed,
                     NormalizationMode mode) {
  const Dataset global = normalize(table);
  if (mode == NormalizationMode::Global) return split(global, train_counts, seed);

  TrainTestSplit out = split(global, train_counts, seed);
  const Matrix raw_train = table.features.select_rows(out.indices.train);
  const Matrix raw_test = table.features.select_rows(out.indices.test);
  const auto ranges = fit_normalization(raw_train);
  out.train.X = apply_normalization(raw_train, ranges);
  out.test.X = apply_normalization(raw_test, ranges, /*clamp=*/true);
  out.train.normalization = ranges;
  out.test.normalization = ranges;
  return out;
}

std::vector<SplitIndices> lowsample_splits(std::span<const int> labels, std::size_t per_class,
                                           std::size_t trials, std::uint64_t seed) {
  if (labels.empty()) throw SplitError("no labels");
  if (per_class == 0) throw SplitError("per_class must be at least 1");
  const auto num_classes = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
  std::vector<std::size_t> counts(num_classes, 0);
  for (int l : labels) ++counts.at(static_cast<std::size_t>(l));
  const std::size_t smallest = *std::min_element(counts.begin(), counts.end());
  if (smallest == 0 || per_class + 1 > smallest) {
    throw SplitError("per_class " + std::to_string(per_class) + " needs every class to have at least " +
                     std::to_string(per_class + 1) + " samples (smallest has " + std::to_string(smallest) + ")");
  }
  const std::vector<std::size_t> train_counts(num_classes, per_class);
  std::vector<SplitIndices> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    out.push_back(split_indices(labels, train_counts, derive_seed(seed, "lowsample-trial", t)));
  }
  return out;
}

std::string split_digest(const SplitIndices& indices) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(indices.train.size());
  for (auto i : indices.train) mix(i);
  mix(indices.test.size());
  for (auto i : indices.test) mix(i);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void to_json(nlohmann::json& j, const SplitIndices& indices) {
  j = nlohmann::json{{"train", indices.train}, {"test", indices.test}, {"digest", split_digest(indices)}};
}

RawTable make_gaussian_classes(const GaussianClassesSpec& spec, std::uint64_t seed) {
  if (spec.classes == 0 || spec.per_class == 0 || spec.features == 0) {
    throw ParameterError("gaussian classes need positive class, sample and feature counts");
  }
  Rng rng(seed);
  RawTable table;
  for (std::size_t j = 0; j < spec.features; ++j) table.feature_names.push_back("x" + std::to_string(j));
  table.label_name = "class";
  const std::size_t m = spec.classes * spec.per_class;
  table.features = Matrix(m, spec.features);
  std::size_t r = 0;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::size_t i = 0; i < spec.per_class; ++i, ++r) {
      for (std::size_t j = 0; j < spec.features; ++j) {
        table.features(r, j) = static_cast<double>(c) * spec.separation + rng.normal();
      }
      table.labels.push_back(std::to_string(c));
    }
  }
  return table;
}

}  // namespace neurochaos
