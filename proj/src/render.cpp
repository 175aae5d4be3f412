#include "alluvial/render.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <tuple>

namespace alluvial {

std::vector<std::string> RenderSpec::default_palette() {
  return {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a"};
}

void RenderSpec::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) throw ConfigError("canvas dimensions must be positive");
  if (!(column_width > 0.0)) throw ConfigError("column width must be positive");
  if (block_gap < 0.0 || margin < 0.0 || layer_gap < 0.0) {
    throw ConfigError("gaps and margins must be non-negative");
  }
  if (palette.empty()) throw ConfigError("palette is empty");
  if (ribbon_opacity < 0.0 || ribbon_opacity > 1.0) throw ConfigError("opacity must lie in [0, 1]");
}

RenderLayout layout_alluvial(const GroupedTable& g, const LayoutSolution& sol,
                             const RenderSpec& spec) {
  spec.validate();
  sol.check_against(g);
  if (!(g.total_weight() > 0.0)) throw DataError("cannot render a zero-weight dataset");
  const std::size_t m = g.layers();
  const auto ranks = sol.ranks();

  std::size_t max_blocks = 0;
  for (std::size_t i = 0; i < m; ++i) max_blocks = std::max(max_blocks, g.blocks(i));
  const double usable = spec.height - 2.0 * spec.margin;
  const double stacked = usable - static_cast<double>(max_blocks - 1) * spec.block_gap;
  if (!(stacked > 0.0)) throw ConfigError("canvas too short for the block gaps");

  RenderLayout out;
  out.scale = stacked / g.total_weight();
  const double step = spec.layer_gap > 0.0
                          ? spec.layer_gap
                          : (spec.width - 2.0 * spec.margin - spec.column_width) /
                                static_cast<double>(m - 1);
  for (std::size_t r = 0; r < m; ++r) out.column_x.push_back(spec.margin + step * static_cast<double>(r));

  // Alluvium top edge per (column, combo).
  std::vector<std::vector<double>> top(m, std::vector<double>(g.combos(), 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t layer = sol.layer_order[r];
    const double column_height = g.total_weight() * out.scale +
                                 static_cast<double>(g.blocks(layer) - 1) * spec.block_gap;
    double y = spec.margin + (usable - column_height) / 2.0;

    std::vector<std::size_t> combos(g.combos());
    std::iota(combos.begin(), combos.end(), std::size_t{0});
    const auto neighbour_rank = [&](std::size_t c, std::ptrdiff_t offset) -> std::int64_t {
      const auto pos = static_cast<std::ptrdiff_t>(r) + offset;
      if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(m)) return -1;
      const std::size_t other = sol.layer_order[static_cast<std::size_t>(pos)];
      return ranks[other][g.code(c, other)];
    };
    std::stable_sort(combos.begin(), combos.end(), [&](std::size_t a, std::size_t b) {
      const auto ka = std::tuple{ranks[layer][g.code(a, layer)], neighbour_rank(a, 1),
                                 neighbour_rank(a, -1)};
      const auto kb = std::tuple{ranks[layer][g.code(b, layer)], neighbour_rank(b, 1),
                                 neighbour_rank(b, -1)};
      return ka < kb;
    });

    std::size_t next = 0;
    for (Code block : sol.block_orders[layer]) {
      const double h = g.block_weight(layer, block) * out.scale;
      out.blocks.push_back({layer, block, out.column_x[r], y, spec.column_width, h});
      double inner = y;
      while (next < combos.size() && g.code(combos[next], layer) == block) {
        top[r][combos[next]] = inner;
        inner += g.weight(combos[next]) * out.scale;
        ++next;
      }
      y += h + spec.block_gap;
    }
  }

  for (std::size_t r = 0; r + 1 < m; ++r) {
    for (std::size_t c = 0; c < g.combos(); ++c) {
      out.ribbons.push_back({c, r, out.column_x[r] + spec.column_width, top[r][c],
                             out.column_x[r + 1], top[r + 1][c], g.weight(c) * out.scale});
    }
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v + 0.0);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const GroupedTable& g, const LayoutSolution& sol,
                       const ColorAssignment& colors, const RenderSpec& spec) {
  const RenderLayout layout = layout_alluvial(g, sol, spec);
  if (colors.colors.size() != g.layers()) throw ConfigError("color assignment does not match table");
  const auto fill = [&](std::size_t layer, Code block) -> const std::string& {
    return spec.palette[colors.colors[layer][block].community % spec.palette.size()];
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(spec.width) +
         "\" height=\"" + num(spec.height) + "\" viewBox=\"0 0 " + num(spec.width) + " " +
         num(spec.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(spec.width) + "\" height=\"" + num(spec.height) +
         "\" fill=\"#ffffff\"/>\n";

  svg += "<g class=\"alluvia\" fill-opacity=\"" + num(spec.ribbon_opacity) + "\">\n";
  for (const auto& rb : layout.ribbons) {
    const std::size_t src_layer = sol.layer_order[rb.column];
    const double xm = (rb.x0 + rb.x1) / 2.0;
    svg += "<path d=\"M" + num(rb.x0) + "," + num(rb.y0) + " C" + num(xm) + "," + num(rb.y0) +
           " " + num(xm) + "," + num(rb.y1) + " " + num(rb.x1) + "," + num(rb.y1) + " L" +
           num(rb.x1) + "," + num(rb.y1 + rb.thickness) + " C" + num(xm) + "," +
           num(rb.y1 + rb.thickness) + " " + num(xm) + "," + num(rb.y0 + rb.thickness) + " " +
           num(rb.x0) + "," + num(rb.y0 + rb.thickness) + " Z\" fill=\"" +
           fill(src_layer, g.code(rb.combo, src_layer)) + "\"/>\n";
  }
  svg += "</g>\n<g class=\"strata\" stroke=\"#333333\" stroke-width=\"0.5\">\n";
  for (const auto& b : layout.blocks) {
    svg += "<rect x=\"" + num(b.x) + "\" y=\"" + num(b.y) + "\" width=\"" + num(b.width) +
           "\" height=\"" + num(b.height) + "\" fill=\"" + fill(b.layer, b.block) + "\"/>\n";
  }
  svg += "</g>\n";

  if (spec.show_labels) {
    svg += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"" + num(spec.font_size) +
           "\" fill=\"#222222\">\n";
    for (const auto& b : layout.blocks) {
      svg += "<text x=\"" + num(b.x + b.width + 3.0) + "\" y=\"" + num(b.y + b.height / 2.0) +
             "\" dominant-baseline=\"middle\">" + xml_escape(g.label(b.layer, b.block)) +
             "</text>\n";
    }
    for (std::size_t r = 0; r < layout.column_x.size(); ++r) {
      svg += "<text x=\"" + num(layout.column_x[r] + spec.column_width / 2.0) + "\" y=\"" +
             num(spec.margin / 2.0) + "\" text-anchor=\"middle\">" +
             xml_escape(g.layer_names()[sol.layer_order[r]]) + "</text>\n";
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace alluvial
