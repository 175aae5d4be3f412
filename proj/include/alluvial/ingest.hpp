#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alluvial/model.hpp"

namespace alluvial {

enum class DefaultSorting { alphabetical, reverse_alphabetical, increasing, decreasing, random };

enum class InputShape { automatic, per_row, grouped };

[[nodiscard]] DefaultSorting parse_default_sorting(std::string_view name);
[[nodiscard]] std::string_view to_string(DefaultSorting s);

struct IngestConfig {
  std::optional<std::string> weight_column;
  DefaultSorting default_sorting = DefaultSorting::alphabetical;
  std::string missing_label = "Missing";
  std::optional<std::uint64_t> seed;
  InputShape shape = InputShape::automatic;

  /// Throws ConfigError if a seed is missing for random sorting or present otherwise.
  void validate() const;
};

/// Header plus string cells, exactly as read from a delimited file.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style parsing: quoted fields, doubled quotes, CRLF or LF.
[[nodiscard]] RawTable parse_delimited(std::string_view text, char delimiter);

/// Reads CSV or TSV. The delimiter is a tab for .tsv/.tab files, or when the
/// header line contains a tab and no comma; a comma otherwise.
[[nodiscard]] RawTable read_table(const std::filesystem::path& path);

/// Splits a raw table into per-row observations, resolving the input shape
/// and replacing missing cells ("" or "NA") with cfg.missing_label.
[[nodiscard]] Dataset to_dataset(const RawTable& raw, const IngestConfig& cfg);

/// Collapses identical category tuples and assigns block codes per
/// cfg.default_sorting.
[[nodiscard]] GroupedTable group_dataset(const Dataset& data, const IngestConfig& cfg);

[[nodiscard]] GroupedTable data_preprocess(const RawTable& raw, const IngestConfig& cfg);

}  // namespace alluvial
