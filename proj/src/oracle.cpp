#include "alluvial/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "alluvial/objective.hpp"

namespace alluvial {

void OracleLimits::validate() const {
  if (max_s == 0 || max_color_space == 0) throw ConfigError("oracle caps must be positive");
}

namespace {

std::uint64_t capped(const BigCount& value, std::uint64_t cap, const char* what) {
  if (value > cap) {
    throw ConfigError(std::string(what) + " of " + value.str() + " exceeds the oracle cap of " +
                      std::to_string(cap));
  }
  return value.convert_to<std::uint64_t>();
}

}  // namespace

WpompOracleResult brute_force_wpomp(const GroupedTable& g, bool fix_layer_order,
                                    const OracleLimits& limits) {
  limits.validate();
  const auto stats = compute_stats(g, g.observations());
  const std::uint64_t expected =
      capped(fix_layer_order ? stats.s_p : stats.s_total, limits.max_s, "search space");

  const std::size_t m = g.layers();
  WpompOracleResult result;
  LayoutSolution candidate = LayoutSolution::identity(g);
  bool have_best = false;
  do {
    for (std::size_t i = 0; i < m; ++i) {
      std::iota(candidate.block_orders[i].begin(), candidate.block_orders[i].end(), Code{0});
    }
    while (true) {
      candidate.objective = total_objective(g, candidate);
      ++result.candidates;
      if (!have_best || candidate.objective < result.best.objective) {
        result.best = candidate;
        have_best = true;
      }
      std::size_t layer = m;
      while (layer > 0) {
        auto& order = candidate.block_orders[layer - 1];
        if (std::next_permutation(order.begin(), order.end())) break;
        --layer;
      }
      if (layer == 0) break;
    }
  } while (!fix_layer_order &&
           std::next_permutation(candidate.layer_order.begin(), candidate.layer_order.end()));

  if (result.candidates != expected) throw std::logic_error("oracle enumeration miscounted");
  return result;
}

WlompOracleResult brute_force_wlomp(const GroupedTable& g, const OracleLimits& limits) {
  limits.validate();
  const std::size_t m = g.layers();
  WlompOracleResult result;
  result.space = 1;
  std::size_t palette = 0;
  std::size_t pinned = 0;
  for (std::size_t i = 0; i < m; ++i) {
    result.space *= factorial(g.blocks(i));
    if (g.blocks(i) > palette) {
      palette = g.blocks(i);
      pinned = i;
    }
  }
  capped(result.space, limits.max_color_space, "color assignment space");

  BigCount actual = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (i != pinned) actual *= factorial(palette) / factorial(palette - g.blocks(i));
  }
  capped(actual, limits.max_color_space, "injective coloring count");

  // shared[r][j * k_{r+1} + l]: weight flowing between block j of layer r and l of r+1.
  std::vector<std::vector<double>> shared(m - 1);
  for (std::size_t r = 0; r + 1 < m; ++r) {
    shared[r].assign(g.blocks(r) * g.blocks(r + 1), 0.0);
    for (std::size_t c = 0; c < g.combos(); ++c) {
      shared[r][g.code(c, r) * g.blocks(r + 1) + g.code(c, r + 1)] += g.weight(c);
    }
  }

  std::vector<std::vector<std::uint32_t>> color(m);
  for (std::size_t i = 0; i < m; ++i) color[i].assign(g.blocks(i), 0);
  std::iota(color[pinned].begin(), color[pinned].end(), std::uint32_t{0});

  const auto evaluate = [&] {
    double total = 0.0;
    for (std::size_t r = 0; r + 1 < m; ++r) {
      const std::size_t kb = g.blocks(r + 1);
      for (std::size_t j = 0; j < g.blocks(r); ++j) {
        for (std::size_t l = 0; l < kb; ++l) {
          if (color[r][j] == color[r + 1][l]) total += shared[r][j * kb + l];
        }
      }
    }
    return total;
  };

  bool have_best = false;
  std::vector<std::vector<bool>> taken(m, std::vector<bool>(palette, false));
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t layer, std::size_t pos) {
    if (layer == m) {
      const double value = evaluate();
      ++result.candidates;
      if (!have_best || value > result.best.matched_weight) {
        have_best = true;
        result.best.matched_weight = value;
        result.best.colors.assign(m, {});
        for (std::size_t i = 0; i < m; ++i) {
          for (auto c : color[i]) result.best.colors[i].push_back({c, 0});
        }
      }
      return;
    }
    if (layer == pinned || pos == g.blocks(layer)) {
      recurse(layer + 1, 0);
      return;
    }
    auto& used = taken[layer];
    for (std::uint32_t c = 0; c < palette; ++c) {
      if (used[c]) continue;
      used[c] = true;
      color[layer][pos] = c;
      recurse(layer, pos + 1);
      used[c] = false;
    }
  };
  recurse(0, 0);
  return result;
}

}  // namespace alluvial
