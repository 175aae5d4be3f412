#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "alluvial/model.hpp"

namespace alluvial {

struct RenderSpec {
  double width = 960.0;
  double height = 600.0;
  double margin = 40.0;
  /// Horizontal distance between the left edges of adjacent columns; 0 spreads
  /// the columns across the canvas.
  double layer_gap = 0.0;
  double block_gap = 6.0;
  double column_width = 18.0;
  std::vector<std::string> palette = default_palette();
  double ribbon_opacity = 0.5;
  double font_size = 11.0;
  bool show_labels = true;

  [[nodiscard]] static std::vector<std::string> default_palette();
  void validate() const;
};

struct BlockRect {
  std::size_t layer = 0;
  Code block = 0;
  double x = 0, y = 0, width = 0, height = 0;
};

/// One alluvium between adjacent columns; y0/y1 are the top edges at the
/// source and target column.
struct RibbonSegment {
  std::size_t combo = 0;
  std::size_t column = 0;  // source column
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0, thickness = 0;
};

struct RenderLayout {
  double scale = 0.0;  // pixels per unit weight
  std::vector<double> column_x;
  std::vector<BlockRect> blocks;
  std::vector<RibbonSegment> ribbons;
};

/// Geometry of the alluvial plot: columns in layer_order, blocks stacked in
/// block order with height ∝ weight, alluvia stacked inside each block by
/// their rank in the next column, then the previous one, then input order.
[[nodiscard]] RenderLayout layout_alluvial(const GroupedTable& g, const LayoutSolution& sol,
                                           const RenderSpec& spec);

/// Byte-stable SVG 1.1 document. Blocks and the ribbons leaving them use the
/// palette entry of the block's community.
[[nodiscard]] std::string render_svg(const GroupedTable& g, const LayoutSolution& sol,
                                     const ColorAssignment& colors, const RenderSpec& spec);

}  // namespace alluvial
