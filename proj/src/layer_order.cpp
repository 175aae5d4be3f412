#include "alluvial/layer_order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>

#include "alluvial/objective.hpp"
#include "alluvial/random.hpp"

namespace alluvial {

LayerDistanceMatrix build_layer_matrix(const GroupedTable& g,
                                       const std::vector<std::vector<std::uint32_t>>& ranks,
                                       LayerMetric metric, double c_scale) {
  if (!(c_scale > 0.0)) throw ConfigError("c_scale must be positive");
  if (ranks.size() != g.layers()) throw ConfigError("block ranks do not cover every layer");
  LayerDistanceMatrix out{SymmetricMatrix(g.layers()), metric, c_scale};
  for (std::size_t i = 0; i < g.layers(); ++i) {
    for (std::size_t j = i + 1; j < g.layers(); ++j) {
      double value = 0.0;
      if (metric == LayerMetric::objective) {
        value = std::log1p(pair_objective(LayerPairView::from_layers(g, i, j, ranks[i], ranks[j])));
      } else {
        value = std::max(0.0, (1.0 - compute_ari(g, i, j)) / 2.0);
      }
      out.d.set(i, j, c_scale * value);
    }
  }
  return out;
}

double tour_length(const SymmetricMatrix& d, const std::vector<std::size_t>& tour) {
  double len = 0.0;
  for (std::size_t i = 0; i < tour.size(); ++i) len += d(tour[i], tour[(i + 1) % tour.size()]);
  return len;
}

namespace {

// Change in length from reversing tour[i+1..j] (0 <= i < j < n).
double two_opt_delta(const SymmetricMatrix& d, const std::vector<std::size_t>& t, std::size_t i,
                     std::size_t j) {
  const std::size_t n = t.size();
  const std::size_t a = t[i], b = t[i + 1], c = t[j], e = t[(j + 1) % n];
  return d(a, c) + d(b, e) - d(a, b) - d(c, e);
}

double move_tolerance(const SymmetricMatrix& d, double tolerance) {
  return tolerance * std::max(1.0, d.off_diagonal_range().second);
}

}  // namespace

namespace {

// One arbitrary-insertion pass: a random start city, then the remaining cities
// in random order, each at its cheapest position. Followed by 2-opt.
std::vector<std::size_t> insertion_two_opt(const SymmetricMatrix& d, std::mt19937_64& rng) {
  const std::size_t n = d.size();
  std::vector<std::size_t> pending(n);
  std::iota(pending.begin(), pending.end(), std::size_t{0});
  seeded_shuffle(std::span<std::size_t>(pending), rng);
  std::vector<std::size_t> tour{pending.front()};
  for (std::size_t c = 1; c < n; ++c) {
    const std::size_t city = pending[c];
    std::size_t best_pos = tour.size();
    double best_cost = 0.0;
    for (std::size_t p = 0; p < tour.size(); ++p) {
      const std::size_t a = tour[p];
      const std::size_t b = tour[(p + 1) % tour.size()];
      const double cost = tour.size() == 1 ? 2.0 * d(a, city) : d(a, city) + d(city, b) - d(a, b);
      if (best_pos == tour.size() || cost < best_cost) {
        best_pos = p;
        best_cost = cost;
      }
    }
    tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(best_pos + 1), city);
  }

  if (n < 4) return tour;
  const double eps = move_tolerance(d, 1e-12);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 < n && !improved; ++i) {
      // Skip j = n-1 when i = 0: both removed edges would share tour[0].
      for (std::size_t j = i + 2; j < (i == 0 ? n - 1 : n); ++j) {
        if (two_opt_delta(d, tour, i, j) < -eps) {
          std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       tour.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
          break;
        }
      }
    }
  }
  return tour;
}

}  // namespace

void TspOptions::validate() const {
  if (repetitions == 0) throw ConfigError("tsp repetitions must be at least 1");
}

std::vector<std::size_t> tsp_tour(const SymmetricMatrix& d, const TspOptions& options) {
  options.validate();
  const std::size_t n = d.size();
  if (n == 0) return {};
  std::mt19937_64 rng(options.seed);
  const double eps = move_tolerance(d, 1e-12);
  std::vector<std::size_t> best;
  double best_len = 0.0;
  for (std::size_t r = 0; r < options.repetitions; ++r) {
    auto tour = insertion_two_opt(d, rng);
    const double len = tour_length(d, tour);
    if (best.empty() || len < best_len - eps) {
      best = std::move(tour);
      best_len = len;
    }
  }
  std::rotate(best.begin(), std::find(best.begin(), best.end(), std::size_t{0}), best.end());
  if (n > 2 && best[1] > best.back()) std::reverse(best.begin() + 1, best.end());
  return best;
}

bool is_two_opt_optimal(const SymmetricMatrix& d, const std::vector<std::size_t>& tour,
                        double tolerance) {
  const std::size_t n = tour.size();
  if (n < 4) return true;
  const double eps = move_tolerance(d, tolerance);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 2; j < (i == 0 ? n - 1 : n); ++j) {
      if (two_opt_delta(d, tour, i, j) < -eps) return false;
    }
  }
  return true;
}

std::vector<std::size_t> rotate_longest_edge_last(const SymmetricMatrix& d,
                                                  const std::vector<std::size_t>& tour) {
  const std::size_t n = tour.size();
  if (n < 2) return tour;
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d(tour[i], tour[(i + 1) % n]) >= d(tour[best], tour[(best + 1) % n])) best = i;
  }
  std::vector<std::size_t> out(tour);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>((best + 1) % n), out.end());
  return out;
}

std::vector<std::size_t> tsp_order(const LayerDistanceMatrix& dm) {
  return rotate_longest_edge_last(dm.d, tsp_tour(dm.d));
}

}  // namespace alluvial
