#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "alluvial/model.hpp"

namespace alluvial {

struct OverlapEntry {
  std::size_t parent_layer = 0;
  Code parent_block = 0;
  std::size_t child_layer = 0;
  Code child_block = 0;
  double weight = 0.0;  // W: weight shared by the two blocks
  double score = 0.0;   // W / child block weight
};

/// Sparse block overlaps for every ordered pair of distinct layers. Only
/// co-occurring block pairs are stored.
class OverlapMatrix {
 public:
  explicit OverlapMatrix(const GroupedTable& g);

  [[nodiscard]] std::size_t layers() const { return blocks_.size(); }
  [[nodiscard]] std::size_t blocks(std::size_t layer) const { return blocks_[layer]; }
  [[nodiscard]] double block_weight(std::size_t layer, Code block) const {
    return block_weight_[layer][block];
  }
  [[nodiscard]] double total_weight() const { return total_weight_; }

  [[nodiscard]] std::span<const OverlapEntry> entries() const { return entries_; }
  /// Entries for one (parent, child) layer pair, sorted by (child, parent) block.
  [[nodiscard]] std::span<const OverlapEntry> between(std::size_t parent_layer,
                                                      std::size_t child_layer) const;
  [[nodiscard]] double score(std::size_t parent_layer, Code parent_block, std::size_t child_layer,
                             Code child_block) const;
  [[nodiscard]] double weight(std::size_t parent_layer, Code parent_block,
                              std::size_t child_layer, Code child_block) const;

 private:
  const OverlapEntry* find(std::size_t parent_layer, Code parent_block, std::size_t child_layer,
                           Code child_block) const;

  std::vector<std::size_t> blocks_;
  std::vector<std::vector<double>> block_weight_;
  double total_weight_ = 0.0;
  std::vector<OverlapEntry> entries_;
  std::vector<std::size_t> pair_begin_;  // (parent * m + child) -> first entry
};

[[nodiscard]] inline OverlapMatrix overlap_matrix(const GroupedTable& g) { return OverlapMatrix(g); }

enum class ColorMode { cluster, reference };
enum class ReferenceKind { layer, leftmost, rightmost, rolling_left, rolling_right };

[[nodiscard]] ColorMode parse_color_mode(std::string_view name);
[[nodiscard]] std::string_view to_string(ColorMode m);
/// Accepts leftmost, rightmost, rolling_left, rolling_right, or a 0-based layer index.
[[nodiscard]] std::pair<ReferenceKind, std::size_t> parse_reference(std::string_view name);
[[nodiscard]] std::string reference_name(ReferenceKind kind, std::size_t layer);

struct ColorScheme {
  ColorMode mode = ColorMode::cluster;
  double cluster_resolution = 1.0;
  ReferenceKind reference = ReferenceKind::leftmost;
  std::size_t reference_layer = 0;  // used when reference == ReferenceKind::layer
  double min_parent_score = 0.0;

  void validate(std::size_t layers) const;
};

/// Matched weight from the stored overlaps; equals alluvial::matched_weight on
/// the originating table.
[[nodiscard]] double matched_weight(const OverlapMatrix& om,
                                    const std::vector<std::vector<BlockColor>>& colors,
                                    std::span<const std::size_t> layer_order);

/// Blocks grouped by Louvain communities over max-symmetrised overlap scores.
[[nodiscard]] ColorAssignment assign_colors_cluster(const OverlapMatrix& om,
                                                    const ColorScheme& scheme,
                                                    std::span<const std::size_t> layer_order);

/// Blocks inherit the color of their highest-scoring reference block.
[[nodiscard]] ColorAssignment assign_colors_reference(const OverlapMatrix& om,
                                                      const ColorScheme& scheme,
                                                      std::span<const std::size_t> layer_order);

/// Dispatches on scheme.mode.
[[nodiscard]] ColorAssignment assign_colors(const OverlapMatrix& om, const ColorScheme& scheme,
                                            std::span<const std::size_t> layer_order);

}  // namespace alluvial
