#include "alluvial/result_json.hpp"

#include <limits>

namespace alluvial {

using nlohmann::json;

json big_count_json(const BigCount& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return value.convert_to<std::uint64_t>();
  }
  return value.str();
}

json stats_json(const DatasetStats& s) {
  return json{{"n", s.n},
              {"m", s.m},
              {"n_bar", s.n_bar},
              {"k", s.k},
              {"K_sum", s.k_sum},
              {"K_prod", big_count_json(s.k_prod)},
              {"S_p", big_count_json(s.s_p)},
              {"S_total", big_count_json(s.s_total)},
              {"S_valid", big_count_json(s.s_valid)}};
}

json solution_json(const GroupedTable& g, const LayoutSolution& sol) {
  json names = json::array();
  for (auto layer : sol.layer_order) names.push_back(g.layer_names()[layer]);
  json blocks = json::array();
  for (std::size_t i = 0; i < g.layers(); ++i) {
    json labels = json::array();
    for (Code c : sol.block_orders[i]) labels.push_back(g.label(i, c));
    blocks.push_back(json{{"layer", g.layer_names()[i]},
                          {"codes", sol.block_orders[i]},
                          {"labels", std::move(labels)}});
  }
  return json{{"layer_order", sol.layer_order},
              {"layer_order_names", std::move(names)},
              {"block_orders", std::move(blocks)}};
}

json colors_json(const GroupedTable& g, const ColorAssignment& colors) {
  const auto labels = colors.labels();
  json layers = json::array();
  for (std::size_t i = 0; i < g.layers(); ++i) {
    json blocks = json::array();
    for (Code c = 0; c < g.blocks(i); ++c) {
      const auto& bc = colors.colors[i][c];
      blocks.push_back(json{{"label", g.label(i, c)},
                            {"community", bc.community},
                            {"ordinal", bc.ordinal},
                            {"color", labels[i][c]}});
    }
    layers.push_back(json{{"layer", g.layer_names()[i]}, {"blocks", std::move(blocks)}});
  }
  return json{{"matched_weight", colors.matched_weight}, {"layers", std::move(layers)}};
}

json document_json(const GroupedTable& g, const ResultDocument& doc) {
  json j{{"schema", kSchemaVersion},
         {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
         {"command", doc.command},
         {"stats", stats_json(doc.stats)},
         {"layers", g.layer_names()},
         {"method", doc.method},
         {"objective_before", doc.objective_before},
         {"objective_after", doc.objective_after},
         {"solution", solution_json(g, doc.solution)}};
  j["colors"] = doc.colors ? colors_json(g, *doc.colors) : json(nullptr);
  return j;
}

LayoutSolution solution_from_json(const json& solution, const GroupedTable& g) {
  try {
    LayoutSolution sol;
    sol.layer_order = solution.at("layer_order").get<std::vector<std::size_t>>();
    const auto& blocks = solution.at("block_orders");
    if (!blocks.is_array() || blocks.size() != g.layers()) {
      throw DataError("solution has the wrong number of block orders");
    }
    for (std::size_t i = 0; i < g.layers(); ++i) {
      const auto& entry = blocks[i];
      if (entry.at("layer").get<std::string>() != g.layer_names()[i]) {
        throw DataError("solution layer " + std::to_string(i) + " does not match the input");
      }
      auto codes = entry.at("codes").get<std::vector<Code>>();
      const auto labels = entry.at("labels").get<std::vector<std::string>>();
      if (labels.size() != codes.size()) throw DataError("solution codes and labels differ in length");
      for (std::size_t p = 0; p < codes.size(); ++p) {
        if (codes[p] >= g.blocks(i) || g.label(i, codes[p]) != labels[p]) {
          throw DataError("solution block '" + labels[p] + "' does not match the input");
        }
      }
      sol.block_orders.push_back(std::move(codes));
    }
    sol.check_against(g);
    return sol;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed solution: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("invalid solution: ") + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace alluvial
