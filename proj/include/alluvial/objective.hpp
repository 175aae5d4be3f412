#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "alluvial/model.hpp"

namespace alluvial {

struct PairEdge {
  std::uint32_t y1 = 0;  // rank of the source block
  std::uint32_t y2 = 0;  // rank of the target block
  double weight = 0.0;
};

/// Weighted edges between two columns, one per distinct (y1, y2).
class LayerPairView {
 public:
  LayerPairView() = default;
  /// Aggregates duplicate (y1, y2) pairs; throws DataError on non-positive weights.
  explicit LayerPairView(std::vector<PairEdge> edges);

  /// Edges induced by the σ-ranks of layers `a` (source) and `b` (target).
  [[nodiscard]] static LayerPairView from_layers(const GroupedTable& g, std::size_t a,
                                                 std::size_t b,
                                                 std::span<const std::uint32_t> rank_a,
                                                 std::span<const std::uint32_t> rank_b);

  [[nodiscard]] std::span<const PairEdge> edges() const { return edges_; }

 private:
  std::vector<PairEdge> edges_;  // sorted by (y1, y2)
};

/// Σ w_e·w_f over unordered edge pairs whose ranks are strictly inverted.
/// Edges sharing a source rank never cross, so each y1 batch is queried
/// before any of it is inserted. O(E log E).
[[nodiscard]] double pair_objective(const LayerPairView& view);

/// Σ w_e·w_f over unordered pairs with distinct y1 and distinct y2; the
/// objective of a pair plus that of its one-sided reversal.
[[nodiscard]] double comparable_weight(const LayerPairView& view);

/// Index pairs (e, f), e < f, into view.edges() that cross. O(E²).
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> crossing_edges(
    const LayerPairView& view);

/// Crossing weight summed over the adjacent columns of `sol`.
[[nodiscard]] double total_objective(const GroupedTable& g, const LayoutSolution& sol);

/// Adjusted Rand Index between two layers, weights used as multiplicities.
[[nodiscard]] double compute_ari(const GroupedTable& g, std::size_t layer_a, std::size_t layer_b);

}  // namespace alluvial
