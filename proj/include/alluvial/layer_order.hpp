#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "alluvial/model.hpp"
#include "alluvial/neighbornet.hpp"

namespace alluvial {

enum class LayerMetric { objective, ari };

struct LayerDistanceMatrix {
  SymmetricMatrix d;
  LayerMetric metric = LayerMetric::objective;
  double c_scale = 1.0;
};

/// Pairwise layer dissimilarities under the given block orders. objective:
/// c·log1p(L(σ_i, σ_j)); ari: c·(1 − ARI)/2. Every pair is evaluated, adjacent
/// or not.
[[nodiscard]] LayerDistanceMatrix build_layer_matrix(
    const GroupedTable& g, const std::vector<std::vector<std::uint32_t>>& ranks,
    LayerMetric metric, double c_scale = 1.0);

struct TspOptions {
  std::uint64_t seed = 0x7a11'5eedULL;
  /// Independent insertion passes; the shortest resulting tour is kept.
  std::size_t repetitions = 20;

  void validate() const;
};

/// Closed tour from repeated seeded arbitrary insertion, each pass followed by
/// 2-opt until no move improves; the first shortest tour wins. Returned from
/// city 0 towards its smaller-indexed neighbour.
[[nodiscard]] std::vector<std::size_t> tsp_tour(const SymmetricMatrix& d,
                                                const TspOptions& options = {});

[[nodiscard]] double tour_length(const SymmetricMatrix& d, const std::vector<std::size_t>& tour);

/// True when no 2-opt move shortens the closed tour by more than `tolerance`.
[[nodiscard]] bool is_two_opt_optimal(const SymmetricMatrix& d,
                                      const std::vector<std::size_t>& tour,
                                      double tolerance = 1e-12);

/// Rotates a closed tour so that its longest edge joins the last and the
/// first element. On ties the latest edge in tour order wins, leaving an
/// already-suitable tour untouched.
[[nodiscard]] std::vector<std::size_t> rotate_longest_edge_last(
    const SymmetricMatrix& d, const std::vector<std::size_t>& tour);

/// Linear layer order: tsp_tour then rotate_longest_edge_last.
[[nodiscard]] std::vector<std::size_t> tsp_order(const LayerDistanceMatrix& dm);

}  // namespace alluvial
