#pragma once

// Test fixtures and brute-force reference implementations. Nothing here calls
// into the library's algorithms, so the checks stay independent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "alluvial/model.hpp"

namespace testing {

using alluvial::Code;
using alluvial::GroupedTable;

inline std::string block_name(std::size_t layer, std::size_t block) {
  return std::string(1, static_cast<char>('A' + layer)) + std::to_string(block + 1);
}

/// Table from explicit code tuples; labels are A1, A2, ..., B1, ...
inline GroupedTable table_from_codes(const std::vector<std::size_t>& k,
                                     const std::vector<std::vector<Code>>& combos,
                                     const std::vector<double>& weights) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    names.push_back(std::string(1, static_cast<char>('A' + i)));
    for (std::size_t j = 0; j < k[i]; ++j) labels[i].push_back(block_name(i, j));
  }
  std::vector<Code> flat;
  for (const auto& c : combos) flat.insert(flat.end(), c.begin(), c.end());
  double total = 0;
  for (double w : weights) total += w;
  return GroupedTable(names, labels, flat, weights, static_cast<std::size_t>(std::llround(total)));
}

inline GroupedTable unit_table(const std::vector<std::size_t>& k,
                               const std::vector<std::vector<Code>>& combos) {
  return table_from_codes(k, combos, std::vector<double>(combos.size(), 1.0));
}

/// Random instance: every block used, combos distinct, integer weights in [1, max_weight].
inline GroupedTable random_table(std::mt19937_64& rng, std::size_t m, std::size_t k_min,
                                 std::size_t k_max, std::size_t nbar_max, int max_weight) {
  std::uniform_int_distribution<std::size_t> kd(k_min, k_max);
  std::vector<std::size_t> k(m);
  for (auto& x : k) x = kd(rng);
  const std::size_t k_top = *std::max_element(k.begin(), k.end());
  std::size_t k_prod = 1;
  for (auto x : k) k_prod *= x;
  const std::size_t target = std::min(k_prod, std::max(k_top, std::uniform_int_distribution<std::size_t>(k_top, std::max(k_top, nbar_max))(rng)));

  std::set<std::vector<Code>> seen;
  std::vector<std::vector<Code>> combos;
  // Cover every block: row r uses a shuffled code list per layer.
  std::vector<std::vector<Code>> cover(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < k_top; ++r) cover[i].push_back(static_cast<Code>(r % k[i]));
    std::shuffle(cover[i].begin(), cover[i].end(), rng);
  }
  for (std::size_t r = 0; r < k_top; ++r) {
    std::vector<Code> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = cover[i][r];
    if (seen.insert(c).second) combos.push_back(c);
  }
  // Coverage rows may collide; patch missing blocks with fresh single rows.
  for (std::size_t i = 0; i < m; ++i) {
    for (Code b = 0; b < k[i]; ++b) {
      bool used = std::any_of(combos.begin(), combos.end(), [&](const auto& c) { return c[i] == b; });
      while (!used) {
        std::vector<Code> c(m);
        for (std::size_t l = 0; l < m; ++l) c[l] = static_cast<Code>(std::uniform_int_distribution<std::size_t>(0, k[l] - 1)(rng));
        c[i] = b;
        if (seen.insert(c).second) {
          combos.push_back(c);
          used = true;
        }
      }
    }
  }
  int guard = 0;
  while (combos.size() < target && guard++ < 10000) {
    std::vector<Code> c(m);
    for (std::size_t l = 0; l < m; ++l) c[l] = static_cast<Code>(std::uniform_int_distribution<std::size_t>(0, k[l] - 1)(rng));
    if (seen.insert(c).second) combos.push_back(c);
  }
  std::uniform_int_distribution<int> wd(1, max_weight);
  std::vector<double> w(combos.size());
  for (auto& x : w) x = wd(rng);
  return table_from_codes(k, combos, w);
}

/// Weighted inversions between two layers straight from the combos.
inline double brute_pair(const GroupedTable& g, std::size_t a, std::size_t b,
                         const std::vector<std::vector<std::uint32_t>>& rank) {
  double total = 0;
  for (std::size_t x = 0; x < g.combos(); ++x) {
    for (std::size_t y = x + 1; y < g.combos(); ++y) {
      const auto da = static_cast<long>(rank[a][g.code(x, a)]) - static_cast<long>(rank[a][g.code(y, a)]);
      const auto db = static_cast<long>(rank[b][g.code(x, b)]) - static_cast<long>(rank[b][g.code(y, b)]);
      if ((da < 0 && db > 0) || (da > 0 && db < 0)) total += g.weight(x) * g.weight(y);
    }
  }
  return total;
}

inline std::vector<std::vector<std::uint32_t>> ranks_of(const std::vector<std::vector<Code>>& orders) {
  std::vector<std::vector<std::uint32_t>> r(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    r[i].resize(orders[i].size());
    for (std::size_t p = 0; p < orders[i].size(); ++p) r[i][orders[i][p]] = static_cast<std::uint32_t>(p);
  }
  return r;
}

inline double brute_total(const GroupedTable& g, const std::vector<std::size_t>& mu,
                          const std::vector<std::vector<Code>>& orders) {
  const auto r = ranks_of(orders);
  double total = 0;
  for (std::size_t p = 0; p + 1 < mu.size(); ++p) total += brute_pair(g, mu[p], mu[p + 1], r);
  return total;
}

/// Minimum over every layer order and block permutation, by plain recursion.
inline double brute_min_objective(const GroupedTable& g, bool fix_layers) {
  const std::size_t m = g.layers();
  std::vector<std::size_t> mu(m);
  std::iota(mu.begin(), mu.end(), std::size_t{0});
  std::vector<std::vector<Code>> orders(m);
  for (std::size_t i = 0; i < m; ++i) {
    orders[i].resize(g.blocks(i));
    std::iota(orders[i].begin(), orders[i].end(), Code{0});
  }
  double best = std::numeric_limits<double>::infinity();
  auto over_blocks = [&](auto&& self, std::size_t layer) -> void {
    if (layer == m) {
      best = std::min(best, brute_total(g, mu, orders));
      return;
    }
    std::sort(orders[layer].begin(), orders[layer].end());
    do {
      self(self, layer + 1);
    } while (std::next_permutation(orders[layer].begin(), orders[layer].end()));
  };
  do {
    over_blocks(over_blocks, 0);
  } while (!fix_layers && std::next_permutation(mu.begin(), mu.end()));
  return best;
}

/// Adjusted Rand index by explicit pair counting over unit-weight elements.
inline double brute_ari(const std::vector<int>& a, const std::vector<int>& b) {
  double same_both = 0, same_a = 0, same_b = 0, pairs = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = x + 1; y < a.size(); ++y) {
      pairs += 1;
      const bool sa = a[x] == a[y];
      const bool sb = b[x] == b[y];
      same_a += sa;
      same_b += sb;
      same_both += sa && sb;
    }
  }
  const double expected = same_a * same_b / pairs;
  const double max_index = (same_a + same_b) / 2.0;
  if (max_index == expected) return 1.0;
  return (same_both - expected) / (max_index - expected);
}

inline double cycle_length(const std::vector<std::vector<double>>& d, const std::vector<std::size_t>& order) {
  double total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) total += d[order[i]][order[(i + 1) % order.size()]];
  return total;
}

/// Every cyclic order (node 0 first) with the minimum total adjacent distance.
inline std::vector<std::vector<std::size_t>> brute_min_cycles(const std::vector<std::vector<double>>& d,
                                                              double tol = 1e-9) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> argmin;
  do {
    const double len = cycle_length(d, order);
    if (len < best - tol) {
      best = len;
      argmin.clear();
    }
    if (len <= best + tol) argmin.push_back(order);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return argmin;
}

inline double brute_min_tour(const std::vector<std::vector<double>>& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, cycle_length(d, order));
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

/// True when `a` and `b` are the same cyclic sequence up to rotation or reflection.
inline bool same_cycle(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  if (n == 0) return true;
  for (int dir : {1, -1}) {
    for (std::size_t shift = 0; shift < n; ++shift) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const std::size_t j = dir == 1 ? (shift + i) % n : (shift + n - i) % n;
        ok = a[i] == b[j];
      }
      if (ok) return true;
    }
  }
  return false;
}

/// Maximum total shared weight of a one-to-one pairing between the blocks of
/// two layers, by trying every partial injection.
inline double brute_best_matching(const GroupedTable& g, std::size_t a, std::size_t b) {
  std::vector<std::vector<double>> shared(g.blocks(a), std::vector<double>(g.blocks(b), 0.0));
  for (std::size_t c = 0; c < g.combos(); ++c) shared[g.code(c, a)][g.code(c, b)] += g.weight(c);
  std::vector<bool> used(g.blocks(b), false);
  double best = 0;
  auto go = [&](auto&& self, std::size_t j, double acc) -> void {
    if (j == g.blocks(a)) {
      best = std::max(best, acc);
      return;
    }
    self(self, j + 1, acc);
    for (std::size_t l = 0; l < g.blocks(b); ++l) {
      if (used[l]) continue;
      used[l] = true;
      self(self, j + 1, acc + shared[j][l]);
      used[l] = false;
    }
  };
  go(go, 0, 0.0);
  return best;
}

/// Matched weight straight from its definition: weight of every combo whose
/// blocks in adjacent columns carry equal labels.
template <typename Label>
double brute_matched(const GroupedTable& g, const std::vector<std::vector<Label>>& labels,
                     const std::vector<std::size_t>& mu) {
  double total = 0;
  for (std::size_t c = 0; c < g.combos(); ++c) {
    for (std::size_t p = 0; p + 1 < mu.size(); ++p) {
      if (labels[mu[p]][g.code(c, mu[p])] == labels[mu[p + 1]][g.code(c, mu[p + 1])]) total += g.weight(c);
    }
  }
  return total;
}

/// Points on a circle at sorted random angles: arc-length distances. Samples
/// with every point inside one half circle are redrawn, since their distances
/// form a line metric that many circular orders fit equally well.
inline std::vector<std::vector<double>> circular_metric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  std::vector<double> theta(n);
  while (true) {
    for (auto& t : theta) t = u(rng);
    std::sort(theta.begin(), theta.end());
    double widest = 2.0 * M_PI - (theta.back() - theta.front());
    for (std::size_t i = 1; i < n; ++i) widest = std::max(widest, theta[i] - theta[i - 1]);
    if (widest < M_PI) break;
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double diff = std::fabs(theta[i] - theta[j]);
      d[i][j] = std::min(diff, 2.0 * M_PI - diff);
    }
  }
  return d;
}

template <typename T>
T median(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace testing
