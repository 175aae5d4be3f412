#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace alluvial {

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

/// Multilevel greedy modularity maximisation (Louvain). Nodes are visited in
/// ascending index order and ties keep the current community, so the result
/// is fully deterministic. Community ids are dense, numbered by the lowest
/// node they contain.
[[nodiscard]] std::vector<std::uint32_t> louvain_communities(std::size_t nodes,
                                                             const std::vector<WeightedEdge>& edges,
                                                             double resolution = 1.0);

/// Newman modularity of a partition with the given resolution.
[[nodiscard]] double modularity(std::size_t nodes, const std::vector<WeightedEdge>& edges,
                                const std::vector<std::uint32_t>& community,
                                double resolution = 1.0);

}  // namespace alluvial
