#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "alluvial/model.hpp"

namespace alluvial {

inline constexpr const char* kToolName = "alluvial";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ResultDocument {
  std::string command;
  DatasetStats stats;
  LayoutSolution solution;
  std::optional<ColorAssignment> colors;
  double objective_before = 0.0;
  double objective_after = 0.0;
  nlohmann::json method = nlohmann::json::object();
};

/// Counts that fit in 64 bits are numbers, larger ones decimal strings.
[[nodiscard]] nlohmann::json big_count_json(const BigCount& value);

[[nodiscard]] nlohmann::json stats_json(const DatasetStats& stats);
[[nodiscard]] nlohmann::json solution_json(const GroupedTable& g, const LayoutSolution& sol);
[[nodiscard]] nlohmann::json colors_json(const GroupedTable& g, const ColorAssignment& colors);
[[nodiscard]] nlohmann::json document_json(const GroupedTable& g, const ResultDocument& doc);

/// Reads a "solution" object back; labels are checked against `g`. Throws
/// DataError on malformed or mismatching input.
[[nodiscard]] LayoutSolution solution_from_json(const nlohmann::json& solution,
                                                const GroupedTable& g);

/// Two-space indented dump with a trailing newline.
[[nodiscard]] std::string dump_json(const nlohmann::json& j);

}  // namespace alluvial
