#include "alluvial/objective.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "alluvial/fenwick.hpp"

namespace alluvial {

LayerPairView::LayerPairView(std::vector<PairEdge> edges) {
  for (const auto& e : edges) {
    if (!(e.weight > 0.0)) throw DataError("layer pair edge has non-positive weight");
  }
  std::sort(edges.begin(), edges.end(), [](const PairEdge& a, const PairEdge& b) {
    return a.y1 != b.y1 ? a.y1 < b.y1 : a.y2 < b.y2;
  });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().y1 == e.y1 && edges_.back().y2 == e.y2) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }
}

LayerPairView LayerPairView::from_layers(const GroupedTable& g, std::size_t a, std::size_t b,
                                         std::span<const std::uint32_t> rank_a,
                                         std::span<const std::uint32_t> rank_b) {
  std::vector<PairEdge> edges;
  edges.reserve(g.combos());
  for (std::size_t c = 0; c < g.combos(); ++c) {
    edges.push_back({rank_a[g.code(c, a)], rank_b[g.code(c, b)], g.weight(c)});
  }
  return LayerPairView(std::move(edges));
}

double pair_objective(const LayerPairView& view) {
  const auto edges = view.edges();
  if (edges.size() < 2) return 0.0;

  std::vector<std::uint32_t> targets;
  targets.reserve(edges.size());
  for (const auto& e : edges) targets.push_back(e.y2);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const auto dense_rank = [&](std::uint32_t y2) {
    return static_cast<std::size_t>(std::lower_bound(targets.begin(), targets.end(), y2) -
                                    targets.begin());
  };

  FenwickTree<double> tree(targets.size());
  double objective = 0.0;
  std::size_t batch_begin = 0;
  while (batch_begin < edges.size()) {
    std::size_t batch_end = batch_begin;
    while (batch_end < edges.size() && edges[batch_end].y1 == edges[batch_begin].y1) ++batch_end;
    for (std::size_t i = batch_begin; i < batch_end; ++i) {
      const std::size_t r = dense_rank(edges[i].y2);
      objective += edges[i].weight * tree.range(r + 1, targets.size());
    }
    for (std::size_t i = batch_begin; i < batch_end; ++i) {
      tree.add(dense_rank(edges[i].y2), edges[i].weight);
    }
    batch_begin = batch_end;
  }
  return objective;
}

double comparable_weight(const LayerPairView& view) {
  const auto half_pairs = [](const std::map<std::uint32_t, std::pair<double, double>>& groups) {
    double s = 0.0;
    for (const auto& [key, sums] : groups) s += (sums.first * sums.first - sums.second) / 2.0;
    return s;
  };
  double total = 0.0;
  double squares = 0.0;
  std::map<std::uint32_t, std::pair<double, double>> by_source, by_target;
  for (const auto& e : view.edges()) {
    total += e.weight;
    squares += e.weight * e.weight;
    by_source[e.y1].first += e.weight;
    by_source[e.y1].second += e.weight * e.weight;
    by_target[e.y2].first += e.weight;
    by_target[e.y2].second += e.weight * e.weight;
  }
  // Aggregated edges never share both ranks, so inclusion-exclusion stops here.
  return (total * total - squares) / 2.0 - half_pairs(by_source) - half_pairs(by_target);
}

std::vector<std::pair<std::size_t, std::size_t>> crossing_edges(const LayerPairView& view) {
  const auto edges = view.edges();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (std::size_t f = e + 1; f < edges.size(); ++f) {
      const bool down = edges[e].y1 < edges[f].y1 && edges[e].y2 > edges[f].y2;
      const bool up = edges[e].y1 > edges[f].y1 && edges[e].y2 < edges[f].y2;
      if (down || up) out.emplace_back(e, f);
    }
  }
  return out;
}

double total_objective(const GroupedTable& g, const LayoutSolution& sol) {
  sol.check_against(g);
  const auto ranks = sol.ranks();
  double total = 0.0;
  for (std::size_t r = 0; r + 1 < sol.layer_order.size(); ++r) {
    const std::size_t a = sol.layer_order[r];
    const std::size_t b = sol.layer_order[r + 1];
    total += pair_objective(LayerPairView::from_layers(g, a, b, ranks[a], ranks[b]));
  }
  return total;
}

double compute_ari(const GroupedTable& g, std::size_t layer_a, std::size_t layer_b) {
  if (layer_a >= g.layers() || layer_b >= g.layers()) throw ConfigError("ARI layer out of range");
  if (layer_a == layer_b) throw ConfigError("ARI needs two distinct layers");
  const auto pairs = [](double x) { return x * (x - 1.0) / 2.0; };

  std::map<std::pair<Code, Code>, double> table;
  for (std::size_t c = 0; c < g.combos(); ++c) {
    table[{g.code(c, layer_a), g.code(c, layer_b)}] += g.weight(c);
  }
  double index = 0.0;
  for (const auto& [cell, w] : table) index += pairs(w);
  double sum_a = 0.0;
  for (Code b = 0; b < g.blocks(layer_a); ++b) sum_a += pairs(g.block_weight(layer_a, b));
  double sum_b = 0.0;
  for (Code b = 0; b < g.blocks(layer_b); ++b) sum_b += pairs(g.block_weight(layer_b, b));

  const double n = g.total_weight();
  if (!(n > 0.0)) throw DataError("ARI undefined for zero total weight");
  const double all_pairs = pairs(n);
  if (all_pairs == 0.0) return 1.0;
  const double expected = sum_a * sum_b / all_pairs;
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;  // both partitions trivial and identical
  return (index - expected) / denom;
}

}  // namespace alluvial
