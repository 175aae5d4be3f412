#include "alluvial/wpomp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "alluvial/objective.hpp"
#include "alluvial/random.hpp"

namespace alluvial {

SortMethod parse_sort_method(std::string_view name) {
  if (name == "neighbornet") return SortMethod::neighbornet;
  if (name == "tsp" || name == "tsp_cycle") return SortMethod::tsp_cycle;
  if (name == "greedy_wolf" || name == "greedy_WOLF") return SortMethod::greedy_wolf;
  if (name == "greedy_wblf" || name == "greedy_WBLF") return SortMethod::greedy_wblf;
  if (name == "random") return SortMethod::random;
  if (name == "none") return SortMethod::none;
  throw ConfigError("unknown sort method '" + std::string(name) + "'");
}

std::string_view to_string(SortMethod m) {
  switch (m) {
    case SortMethod::neighbornet: return "neighbornet";
    case SortMethod::tsp_cycle: return "tsp";
    case SortMethod::greedy_wolf: return "greedy_wolf";
    case SortMethod::greedy_wblf: return "greedy_wblf";
    case SortMethod::random: return "random";
    case SortMethod::none: return "none";
  }
  return "none";
}

void WpompConfig::validate(const GroupedTable& g) const {
  if (!(c_scale > 0.0)) throw ConfigError("c_scale must be positive");
  if ((method == SortMethod::greedy_wolf || method == SortMethod::greedy_wblf) && g.layers() != 2) {
    throw ConfigError(std::string(to_string(method)) + " only supports 2 layers, input has " +
                      std::to_string(g.layers()));
  }
  if (method == SortMethod::random && !seed) throw ConfigError("method 'random' requires a seed");
}

std::vector<std::vector<Code>> split_cycle(const Cycle& cycle, std::size_t start,
                                           const GroupedTable& g) {
  const std::size_t k = g.total_blocks();
  if (cycle.order.size() != k) throw ConfigError("cycle does not cover every block");
  if (start >= k) throw ConfigError("cycle start out of range");
  const auto offsets = g.layer_offsets();
  std::vector<std::vector<Code>> orders(g.layers());
  std::vector<bool> seen(k, false);
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t node = cycle.order[(start + step) % k];
    if (node >= k || seen[node]) throw ConfigError("cycle is not a permutation of the blocks");
    seen[node] = true;
    const auto layer = static_cast<std::size_t>(
        std::upper_bound(offsets.begin(), offsets.end(), node) - offsets.begin() - 1);
    orders[layer].push_back(static_cast<Code>(node - offsets[layer]));
  }
  return orders;
}

namespace {

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

std::vector<std::uint32_t> ranks_of(const std::vector<Code>& order) {
  std::vector<std::uint32_t> r(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) r[order[p]] = static_cast<std::uint32_t>(p);
  return r;
}

std::vector<std::size_t> layer_order_for(const GroupedTable& g,
                                         const std::vector<std::vector<Code>>& orders,
                                         const WpompConfig& cfg) {
  std::vector<std::vector<std::uint32_t>> ranks;
  for (const auto& o : orders) ranks.push_back(ranks_of(o));
  return tsp_order(build_layer_matrix(g, ranks, cfg.layer_metric, cfg.c_scale));
}

LayoutSolution finish(const GroupedTable& g, std::vector<std::vector<Code>> orders,
                      const WpompConfig& cfg) {
  LayoutSolution sol;
  sol.layer_order = cfg.optimize_layers ? layer_order_for(g, orders, cfg) : identity_order(g.layers());
  sol.block_orders = std::move(orders);
  sol.objective = total_objective(g, sol);
  return sol;
}

}  // namespace

LayoutSolution solve_from_cycle(const GroupedTable& g, const Cycle& cycle, const WpompConfig& cfg,
                                CycleScan* scan) {
  const std::size_t k = g.total_blocks();
  LayoutSolution best;
  std::size_t best_start = 0;
  std::vector<double> objectives;
  objectives.reserve(k);
  std::vector<std::size_t> layer_order = identity_order(g.layers());
  for (std::size_t start = 0; start < k; ++start) {
    LayoutSolution candidate;
    candidate.block_orders = split_cycle(cycle, start, g);
    if (cfg.optimize_layers && (start == 0 || cfg.layer_order_every_start)) {
      layer_order = layer_order_for(g, candidate.block_orders, cfg);
    }
    candidate.layer_order = layer_order;
    candidate.objective = total_objective(g, candidate);
    objectives.push_back(candidate.objective);
    if (start == 0 || candidate.objective < best.objective) {
      best = std::move(candidate);
      best_start = start;
    }
  }
  if (scan) {
    scan->cycle = cycle;
    scan->objectives = std::move(objectives);
    scan->best_start = best_start;
  }
  return best;
}

std::vector<Code> wolf_order(const GroupedTable& g, std::size_t fixed_layer,
                             std::span<const std::uint32_t> fixed_rank, std::size_t free_layer) {
  std::map<std::pair<Code, Code>, double> shared;  // (free, fixed) -> weight
  for (std::size_t c = 0; c < g.combos(); ++c) {
    shared[{g.code(c, free_layer), g.code(c, fixed_layer)}] += g.weight(c);
  }
  struct Key {
    std::uint32_t anchor_rank;
    double weight;
    Code block;
  };
  std::vector<Key> keys;
  for (Code b = 0; b < g.blocks(free_layer); ++b) {
    Key key{0, -1.0, b};
    for (auto it = shared.lower_bound({b, 0}); it != shared.end() && it->first.first == b; ++it) {
      const std::uint32_t rank = fixed_rank[it->first.second];
      if (it->second > key.weight || (it->second == key.weight && rank < key.anchor_rank)) {
        key.anchor_rank = rank;
        key.weight = it->second;
      }
    }
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.anchor_rank != b.anchor_rank) return a.anchor_rank < b.anchor_rank;
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.block < b.block;
  });
  std::vector<Code> order;
  for (const auto& key : keys) order.push_back(key.block);
  return order;
}

LayoutSolution solve(const GroupedTable& g, const WpompConfig& cfg, CycleScan* scan) {
  cfg.validate(g);
  const LayoutSolution initial = LayoutSolution::identity(g);
  switch (cfg.method) {
    case SortMethod::none:
      return finish(g, initial.block_orders, cfg);

    case SortMethod::random: {
      std::mt19937_64 rng(*cfg.seed);
      auto orders = initial.block_orders;
      for (auto& o : orders) seeded_shuffle(std::span<Code>(o), rng);
      return finish(g, std::move(orders), cfg);
    }

    case SortMethod::greedy_wolf: {
      auto orders = initial.block_orders;
      orders[1] = wolf_order(g, 0, ranks_of(orders[0]), 1);
      return finish(g, std::move(orders), cfg);
    }

    case SortMethod::greedy_wblf: {
      auto orders = initial.block_orders;
      for (int iter = 0; iter < kWblfMaxIterations; ++iter) {
        auto next = orders;
        next[1] = wolf_order(g, 0, ranks_of(next[0]), 1);
        next[0] = wolf_order(g, 1, ranks_of(next[1]), 0);
        const bool stable = next == orders;
        orders = std::move(next);
        if (stable) break;
      }
      return finish(g, std::move(orders), cfg);
    }

    case SortMethod::neighbornet: {
      const auto dm = build_distance_matrix(g, cfg.c_scale, cfg.same_layer_value);
      return solve_from_cycle(g, neighbornet_cycle(dm), cfg, scan);
    }

    case SortMethod::tsp_cycle: {
      const auto dm = build_distance_matrix(g, cfg.c_scale, cfg.same_layer_value);
      return solve_from_cycle(g, Cycle{tsp_tour(dm.dissimilarity())}, cfg, scan);
    }
  }
  throw ConfigError("unsupported sort method");
}

}  // namespace alluvial
