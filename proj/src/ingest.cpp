#include "alluvial/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "alluvial/random.hpp"

namespace alluvial {
namespace {

std::string trim(std::string_view s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  auto first = std::find_if(s.begin(), s.end(), not_space);
  auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string(first, last) : std::string();
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NA"; }

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

}  // namespace

DefaultSorting parse_default_sorting(std::string_view name) {
  if (name == "alphabetical") return DefaultSorting::alphabetical;
  if (name == "reverse_alphabetical") return DefaultSorting::reverse_alphabetical;
  if (name == "increasing") return DefaultSorting::increasing;
  if (name == "decreasing") return DefaultSorting::decreasing;
  if (name == "random") return DefaultSorting::random;
  throw ConfigError("unknown default sorting '" + std::string(name) + "'");
}

std::string_view to_string(DefaultSorting s) {
  switch (s) {
    case DefaultSorting::alphabetical: return "alphabetical";
    case DefaultSorting::reverse_alphabetical: return "reverse_alphabetical";
    case DefaultSorting::increasing: return "increasing";
    case DefaultSorting::decreasing: return "decreasing";
    case DefaultSorting::random: return "random";
  }
  return "alphabetical";
}

void IngestConfig::validate() const {
  if (default_sorting == DefaultSorting::random && !seed) {
    throw ConfigError("default sorting 'random' requires a seed");
  }
  if (default_sorting != DefaultSorting::random && seed) {
    throw ConfigError("a seed is only meaningful with default sorting 'random'");
  }
}

RawTable parse_delimited(std::string_view text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record.front().empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (ch == delimiter) {
      end_field();
    } else if (ch == '\n') {
      end_record();
    } else if (ch == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      end_record();
    } else {
      field.push_back(ch);
      field_started = true;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field");
  if (!record.empty() || !field.empty()) end_record();

  if (records.empty()) throw DataError("input is empty");
  RawTable table;
  table.header = std::move(records.front());
  for (auto& h : table.header) h = trim(h);
  // Strip a UTF-8 byte order mark from the first header cell.
  if (!table.header.empty() && table.header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    table.header[0].erase(0, 3);
  }
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  return table;
}

RawTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  char delimiter = ',';
  const auto ext = path.extension().string();
  if (ext == ".tsv" || ext == ".tab") {
    delimiter = '\t';
  } else if (ext != ".csv") {
    const std::string first_line = text.substr(0, text.find('\n'));
    if (first_line.find('\t') != std::string::npos && first_line.find(',') == std::string::npos) {
      delimiter = '\t';
    }
  }
  try {
    return parse_delimited(text, delimiter);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Dataset to_dataset(const RawTable& raw, const IngestConfig& cfg) {
  cfg.validate();
  if (raw.rows.empty()) throw DataError("input has a header but no data rows");
  const std::size_t width = raw.header.size();
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    if (raw.rows[r].size() != width) {
      throw DataError("data row " + std::to_string(r + 1) + " has " +
                      std::to_string(raw.rows[r].size()) + " fields, header has " +
                      std::to_string(width));
    }
  }

  std::optional<std::size_t> weight_col;
  if (cfg.weight_column) {
    auto it = std::find(raw.header.begin(), raw.header.end(), *cfg.weight_column);
    if (it == raw.header.end()) {
      throw DataError("weight column '" + *cfg.weight_column + "' not found in header");
    }
    weight_col = static_cast<std::size_t>(it - raw.header.begin());
  } else if (cfg.shape == InputShape::grouped) {
    weight_col = width - 1;
  } else if (cfg.shape == InputShape::automatic && width >= 3) {
    const bool numeric = std::all_of(raw.rows.begin(), raw.rows.end(), [&](const auto& row) {
      return parse_number(trim(row[width - 1])).has_value();
    });
    if (numeric) weight_col = width - 1;
  }

  Dataset data;
  for (std::size_t c = 0; c < width; ++c) {
    if (weight_col && c == *weight_col) continue;
    data.layer_names.push_back(raw.header[c]);
  }
  if (data.layer_names.size() < 2) {
    throw DataError("need at least 2 category columns, found " +
                    std::to_string(data.layer_names.size()));
  }

  data.rows.reserve(raw.rows.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    Observation obs;
    for (std::size_t c = 0; c < width; ++c) {
      std::string cell = trim(raw.rows[r][c]);
      if (weight_col && c == *weight_col) {
        auto w = parse_number(cell);
        if (!w) {
          throw DataError("data row " + std::to_string(r + 1) + ": weight '" + cell +
                          "' is not numeric");
        }
        if (!(*w > 0.0) || !std::isfinite(*w)) {
          throw DataError("data row " + std::to_string(r + 1) + ": weight '" + cell +
                          "' is not positive");
        }
        obs.weight = *w;
        continue;
      }
      obs.values.push_back(is_missing(cell) ? cfg.missing_label : std::move(cell));
    }
    data.rows.push_back(std::move(obs));
  }
  data.validate();
  return data;
}

GroupedTable group_dataset(const Dataset& data, const IngestConfig& cfg) {
  cfg.validate();
  data.validate();
  if (data.rows.empty()) throw DataError("dataset has no rows");
  const std::size_t m = data.layer_names.size();

  // Collapse identical tuples, keeping first-appearance order.
  std::map<std::vector<std::string>, std::size_t> combo_index;
  std::vector<const std::vector<std::string>*> combo_values;
  std::vector<double> weights;
  bool unit_weights = true;
  for (const auto& row : data.rows) {
    if (row.weight != 1.0) unit_weights = false;
    auto [it, inserted] = combo_index.try_emplace(row.values, weights.size());
    if (inserted) {
      combo_values.push_back(&it->first);
      weights.push_back(row.weight);
    } else {
      weights[it->second] += row.weight;
    }
  }

  std::mt19937_64 rng(cfg.seed.value_or(0));
  std::vector<std::vector<std::string>> labels(m);
  std::vector<std::unordered_map<std::string, Code>> code_of(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::map<std::string, double> block_weight;
    for (std::size_t c = 0; c < weights.size(); ++c) block_weight[(*combo_values[c])[i]] += weights[c];

    std::vector<std::string>& order = labels[i];
    for (const auto& [label, w] : block_weight) order.push_back(label);  // alphabetical
    switch (cfg.default_sorting) {
      case DefaultSorting::alphabetical:
        break;
      case DefaultSorting::reverse_alphabetical:
        std::reverse(order.begin(), order.end());
        break;
      case DefaultSorting::increasing:
        std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
          return block_weight[a] < block_weight[b];
        });
        break;
      case DefaultSorting::decreasing:
        std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
          return block_weight[a] > block_weight[b];
        });
        break;
      case DefaultSorting::random:
        seeded_shuffle(std::span<std::string>(order), rng);
        break;
    }
    for (std::size_t b = 0; b < order.size(); ++b) code_of[i].emplace(order[b], static_cast<Code>(b));
  }

  std::vector<Code> codes;
  codes.reserve(weights.size() * m);
  for (std::size_t c = 0; c < weights.size(); ++c) {
    for (std::size_t i = 0; i < m; ++i) codes.push_back(code_of[i].at((*combo_values[c])[i]));
  }

  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const std::size_t n = unit_weights ? data.rows.size()
                                     : static_cast<std::size_t>(std::llround(total));
  return GroupedTable(data.layer_names, std::move(labels), std::move(codes), std::move(weights),
                      n);
}

GroupedTable data_preprocess(const RawTable& raw, const IngestConfig& cfg) {
  return group_dataset(to_dataset(raw, cfg), cfg);
}

}  // namespace alluvial
