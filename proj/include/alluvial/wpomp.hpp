#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "alluvial/layer_order.hpp"
#include "alluvial/model.hpp"
#include "alluvial/neighbornet.hpp"

namespace alluvial {

enum class SortMethod { neighbornet, tsp_cycle, greedy_wolf, greedy_wblf, random, none };

[[nodiscard]] SortMethod parse_sort_method(std::string_view name);
[[nodiscard]] std::string_view to_string(SortMethod m);

struct WpompConfig {
  SortMethod method = SortMethod::neighbornet;
  bool optimize_layers = false;
  /// Recompute the layer order at every cycle start instead of only the first.
  bool layer_order_every_start = false;
  LayerMetric layer_metric = LayerMetric::objective;
  double c_scale = 1.0;
  std::optional<double> same_layer_value;
  std::optional<std::uint64_t> seed;

  /// Throws ConfigError for arity or seed violations against `g`.
  void validate(const GroupedTable& g) const;
};

/// Per-layer block orders read off the cycle rotated to begin at `start`.
/// `cycle` holds flat block indices (see GroupedTable::flat_index).
[[nodiscard]] std::vector<std::vector<Code>> split_cycle(const Cycle& cycle, std::size_t start,
                                                         const GroupedTable& g);

/// Objective of every start point considered by a cycle-based solve.
struct CycleScan {
  Cycle cycle;
  std::vector<double> objectives;  // indexed by start position
  std::size_t best_start = 0;
};

/// Evaluates every start of `cycle` and returns the best layout; fills `scan`
/// when given.
[[nodiscard]] LayoutSolution solve_from_cycle(const GroupedTable& g, const Cycle& cycle,
                                              const WpompConfig& cfg, CycleScan* scan = nullptr);

/// One greedy one-layer-free pass: reorder `free_layer` against the fixed
/// order of `fixed_layer` by the rank of each block's heaviest partner.
[[nodiscard]] std::vector<Code> wolf_order(const GroupedTable& g, std::size_t fixed_layer,
                                           std::span<const std::uint32_t> fixed_rank,
                                           std::size_t free_layer);

inline constexpr int kWblfMaxIterations = 20;

[[nodiscard]] LayoutSolution solve(const GroupedTable& g, const WpompConfig& cfg,
                                   CycleScan* scan = nullptr);

}  // namespace alluvial
