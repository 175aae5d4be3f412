#include "alluvial/wlomp.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>

#include "alluvial/louvain.hpp"

namespace alluvial {

OverlapMatrix::OverlapMatrix(const GroupedTable& g) : total_weight_(g.total_weight()) {
  const std::size_t m = g.layers();
  for (std::size_t i = 0; i < m; ++i) {
    blocks_.push_back(g.blocks(i));
    std::vector<double> w(g.blocks(i));
    for (Code b = 0; b < g.blocks(i); ++b) w[b] = g.block_weight(i, b);
    block_weight_.push_back(std::move(w));
  }
  pair_begin_.assign(m * m + 1, 0);
  for (std::size_t parent = 0; parent < m; ++parent) {
    for (std::size_t child = 0; child < m; ++child) {
      pair_begin_[parent * m + child] = entries_.size();
      if (parent == child) continue;
      std::map<std::pair<Code, Code>, double> shared;  // (child, parent) block
      for (std::size_t c = 0; c < g.combos(); ++c) {
        shared[{g.code(c, child), g.code(c, parent)}] += g.weight(c);
      }
      for (const auto& [blocks, w] : shared) {
        entries_.push_back({parent, blocks.second, child, blocks.first, w,
                            w / block_weight_[child][blocks.first]});
      }
    }
  }
  pair_begin_[m * m] = entries_.size();
}

std::span<const OverlapEntry> OverlapMatrix::between(std::size_t parent_layer,
                                                     std::size_t child_layer) const {
  const std::size_t m = layers();
  const std::size_t slot = parent_layer * m + child_layer;
  return std::span<const OverlapEntry>(entries_).subspan(
      pair_begin_[slot], pair_begin_[slot + 1] - pair_begin_[slot]);
}

const OverlapEntry* OverlapMatrix::find(std::size_t parent_layer, Code parent_block,
                                        std::size_t child_layer, Code child_block) const {
  const auto range = between(parent_layer, child_layer);
  auto it = std::lower_bound(range.begin(), range.end(), std::pair{child_block, parent_block},
                             [](const OverlapEntry& e, const std::pair<Code, Code>& key) {
                               return std::pair{e.child_block, e.parent_block} < key;
                             });
  if (it == range.end() || it->child_block != child_block || it->parent_block != parent_block) {
    return nullptr;
  }
  return &*it;
}

double OverlapMatrix::score(std::size_t parent_layer, Code parent_block, std::size_t child_layer,
                            Code child_block) const {
  const auto* e = find(parent_layer, parent_block, child_layer, child_block);
  return e ? e->score : 0.0;
}

double OverlapMatrix::weight(std::size_t parent_layer, Code parent_block,
                             std::size_t child_layer, Code child_block) const {
  const auto* e = find(parent_layer, parent_block, child_layer, child_block);
  return e ? e->weight : 0.0;
}

ColorMode parse_color_mode(std::string_view name) {
  if (name == "cluster") return ColorMode::cluster;
  if (name == "reference") return ColorMode::reference;
  throw ConfigError("unknown color mode '" + std::string(name) + "'");
}

std::string_view to_string(ColorMode m) { return m == ColorMode::cluster ? "cluster" : "reference"; }

std::pair<ReferenceKind, std::size_t> parse_reference(std::string_view name) {
  if (name == "leftmost") return {ReferenceKind::leftmost, 0};
  if (name == "rightmost") return {ReferenceKind::rightmost, 0};
  if (name == "rolling_left") return {ReferenceKind::rolling_left, 0};
  if (name == "rolling_right") return {ReferenceKind::rolling_right, 0};
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (ec != std::errc() || ptr != name.data() + name.size() || name.empty()) {
    throw ConfigError("invalid reference layer '" + std::string(name) + "'");
  }
  return {ReferenceKind::layer, index};
}

std::string reference_name(ReferenceKind kind, std::size_t layer) {
  switch (kind) {
    case ReferenceKind::layer: return std::to_string(layer);
    case ReferenceKind::leftmost: return "leftmost";
    case ReferenceKind::rightmost: return "rightmost";
    case ReferenceKind::rolling_left: return "rolling_left";
    case ReferenceKind::rolling_right: return "rolling_right";
  }
  return "leftmost";
}

void ColorScheme::validate(std::size_t layers) const {
  if (!(cluster_resolution > 0.0)) throw ConfigError("cluster resolution must be positive");
  if (!(min_parent_score >= 0.0 && min_parent_score <= 1.0)) {
    throw ConfigError("minimum parent score must lie in [0, 1]");
  }
  if (mode == ColorMode::reference && reference == ReferenceKind::layer &&
      reference_layer >= layers) {
    throw ConfigError("reference layer " + std::to_string(reference_layer) +
                      " out of range for " + std::to_string(layers) + " layers");
  }
}

double matched_weight(const OverlapMatrix& om, const std::vector<std::vector<BlockColor>>& colors,
                      std::span<const std::size_t> layer_order) {
  require_permutation(layer_order, om.layers(), "layer order");
  double total = 0.0;
  for (std::size_t r = 0; r + 1 < layer_order.size(); ++r) {
    const std::size_t a = layer_order[r];
    const std::size_t b = layer_order[r + 1];
    for (const auto& e : om.between(a, b)) {
      if (colors[a][e.parent_block] == colors[b][e.child_block]) total += e.weight;
    }
  }
  return total;
}

namespace {

// Turns per-block communities into per-layer distinct colors. Layers are
// handled in `sequence`; blocks of one community inside a layer take the
// ordinals of their heaviest partners in `anchor[layer]` (the previously
// handled neighbour), and leftover blocks take the smallest free ordinals.
std::vector<std::vector<BlockColor>> resolve_ordinals(
    const OverlapMatrix& om, const std::vector<std::vector<std::uint32_t>>& community,
    const std::vector<std::size_t>& sequence, const std::vector<std::optional<std::size_t>>& anchor) {
  std::vector<std::vector<BlockColor>> colors(om.layers());
  for (std::size_t layer : sequence) {
    const std::size_t k = om.blocks(layer);
    colors[layer].assign(k, BlockColor{});
    std::map<std::uint32_t, std::vector<Code>> groups;
    for (Code b = 0; b < k; ++b) groups[community[layer][b]].push_back(b);

    for (const auto& [comm, members] : groups) {
      std::set<std::uint32_t> used;
      std::set<Code> assigned;
      if (const auto prev = anchor[layer]) {
        struct Candidate {
          double weight;
          Code block;
          Code partner;
        };
        std::vector<Candidate> candidates;
        for (Code b : members) {
          for (Code p = 0; p < om.blocks(*prev); ++p) {
            if (colors[*prev][p].community != comm) continue;
            const double w = om.weight(*prev, p, layer, b);
            if (w > 0.0) candidates.push_back({w, b, p});
          }
        }
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
          if (a.weight != b.weight) return a.weight > b.weight;
          if (a.block != b.block) return a.block < b.block;
          return a.partner < b.partner;
        });
        for (const auto& c : candidates) {
          const std::uint32_t ord = colors[*prev][c.partner].ordinal;
          if (assigned.contains(c.block) || used.contains(ord)) continue;
          colors[layer][c.block] = {comm, ord};
          assigned.insert(c.block);
          used.insert(ord);
        }
      }
      std::vector<Code> rest;
      for (Code b : members) {
        if (!assigned.contains(b)) rest.push_back(b);
      }
      std::stable_sort(rest.begin(), rest.end(), [&](Code a, Code b) {
        return om.block_weight(layer, a) > om.block_weight(layer, b);
      });
      std::uint32_t next = 0;
      for (Code b : rest) {
        while (used.contains(next)) ++next;
        colors[layer][b] = {comm, next};
        used.insert(next);
      }
    }
  }
  return colors;
}

ColorAssignment finish(const OverlapMatrix& om, std::vector<std::vector<BlockColor>> colors,
                       std::span<const std::size_t> layer_order) {
  ColorAssignment out;
  out.matched_weight = matched_weight(om, colors, layer_order);
  out.colors = std::move(colors);
  return out;
}

std::vector<std::optional<std::size_t>> previous_in(const std::vector<std::size_t>& sequence,
                                                    std::size_t layers) {
  std::vector<std::optional<std::size_t>> anchor(layers);
  for (std::size_t r = 1; r < sequence.size(); ++r) anchor[sequence[r]] = sequence[r - 1];
  return anchor;
}

}  // namespace

ColorAssignment assign_colors_cluster(const OverlapMatrix& om, const ColorScheme& scheme,
                                      std::span<const std::size_t> layer_order) {
  scheme.validate(om.layers());
  require_permutation(layer_order, om.layers(), "layer order");
  if (om.layers() < 2) throw ConfigError("coloring needs at least 2 layers");

  std::vector<std::size_t> offset{0};
  for (std::size_t i = 0; i < om.layers(); ++i) offset.push_back(offset.back() + om.blocks(i));

  // Undirected block graph weighted by the larger of the two directed scores.
  std::map<std::pair<std::size_t, std::size_t>, double> strength;
  for (const auto& e : om.entries()) {
    std::size_t a = offset[e.parent_layer] + e.parent_block;
    std::size_t b = offset[e.child_layer] + e.child_block;
    if (a > b) std::swap(a, b);
    auto& s = strength[{a, b}];
    s = std::max(s, e.score);
  }
  if (strength.empty()) throw DataError("overlap graph has no edges");
  std::vector<WeightedEdge> edges;
  for (const auto& [ab, w] : strength) edges.push_back({ab.first, ab.second, w});

  const auto flat = louvain_communities(offset.back(), edges, scheme.cluster_resolution);
  std::vector<std::vector<std::uint32_t>> community(om.layers());
  for (std::size_t i = 0; i < om.layers(); ++i) {
    community[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(offset[i]),
                        flat.begin() + static_cast<std::ptrdiff_t>(offset[i + 1]));
  }
  const std::vector<std::size_t> sequence(layer_order.begin(), layer_order.end());
  return finish(om, resolve_ordinals(om, community, sequence, previous_in(sequence, om.layers())),
                layer_order);
}

ColorAssignment assign_colors_reference(const OverlapMatrix& om, const ColorScheme& scheme,
                                        std::span<const std::size_t> layer_order) {
  scheme.validate(om.layers());
  require_permutation(layer_order, om.layers(), "layer order");
  const std::size_t m = om.layers();
  if (m < 2) throw ConfigError("coloring needs at least 2 layers");

  std::vector<std::size_t> sequence(layer_order.begin(), layer_order.end());
  if (scheme.reference == ReferenceKind::rolling_right) std::reverse(sequence.begin(), sequence.end());
  const bool rolling = scheme.reference == ReferenceKind::rolling_left ||
                       scheme.reference == ReferenceKind::rolling_right;
  std::size_t ref = sequence.front();
  if (scheme.reference == ReferenceKind::layer) ref = scheme.reference_layer;
  if (scheme.reference == ReferenceKind::rightmost) ref = layer_order.back();

  std::vector<std::vector<std::uint32_t>> community(m);
  std::uint32_t fresh = 0;
  community[ref].resize(om.blocks(ref));
  for (Code b = 0; b < om.blocks(ref); ++b) community[ref][b] = fresh++;

  const auto inherit = [&](std::size_t parent, std::size_t child) {
    community[child].resize(om.blocks(child));
    for (Code b = 0; b < om.blocks(child); ++b) {
      double best_score = 0.0;
      std::optional<Code> best;
      for (const auto& e : om.between(parent, child)) {
        if (e.child_block == b && e.score > best_score) {
          best_score = e.score;
          best = e.parent_block;
        }
      }
      if (best && best_score >= scheme.min_parent_score) {
        community[child][b] = community[parent][*best];
      } else {
        community[child][b] = fresh++;
      }
    }
  };

  if (rolling) {
    for (std::size_t r = 1; r < sequence.size(); ++r) inherit(sequence[r - 1], sequence[r]);
  } else {
    for (std::size_t layer : sequence) {
      if (layer != ref) inherit(ref, layer);
    }
  }
  return finish(om, resolve_ordinals(om, community, sequence, previous_in(sequence, m)),
                layer_order);
}

ColorAssignment assign_colors(const OverlapMatrix& om, const ColorScheme& scheme,
                              std::span<const std::size_t> layer_order) {
  return scheme.mode == ColorMode::cluster ? assign_colors_cluster(om, scheme, layer_order)
                                           : assign_colors_reference(om, scheme, layer_order);
}

}  // namespace alluvial
