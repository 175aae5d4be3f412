#include <doctest.h>

#include <random>

#include "alluvial/objective.hpp"
#include "alluvial/wpomp.hpp"
#include "support.hpp"

using namespace alluvial;
using testing::unit_table;

namespace {

WpompConfig with(SortMethod method) {
  WpompConfig cfg;
  cfg.method = method;
  if (method == SortMethod::random) cfg.seed = 17;
  return cfg;
}

const SortMethod kAll[] = {SortMethod::neighbornet, SortMethod::tsp_cycle, SortMethod::greedy_wolf,
                           SortMethod::greedy_wblf, SortMethod::random, SortMethod::none};

}  // namespace

TEST_CASE("split cycle extracts per-layer subsequences") {
  const auto g = unit_table({2, 2}, {{0, 0}, {1, 1}});
  // A1=0, A2=1, B1=2, B2=3
  const Cycle c{{0, 2, 1, 3}};
  CHECK(split_cycle(c, 0, g) == std::vector<std::vector<Code>>{{0, 1}, {0, 1}});
  CHECK(split_cycle(c, 2, g) == std::vector<std::vector<Code>>{{1, 0}, {1, 0}});
  CHECK_THROWS_AS((void)split_cycle(Cycle{{0, 2, 1}}, 0, g), ConfigError);
  CHECK_THROWS_AS((void)split_cycle(Cycle{{0, 2, 1, 1}}, 0, g), ConfigError);
  CHECK_THROWS_AS((void)split_cycle(c, 4, g), ConfigError);
}

TEST_CASE("split cycle sizes on a 5x4 table") {
  std::vector<std::vector<Code>> combos;
  for (Code a = 0; a < 5; ++a) combos.push_back({a, static_cast<Code>(a % 4)});
  const auto g = unit_table({5, 4}, combos);
  std::vector<std::size_t> order{4, 8, 0, 3, 7, 1, 6, 2, 5};
  const auto orders = split_cycle(Cycle{order}, 3, g);
  CHECK(orders[0].size() == 5);
  CHECK(orders[1].size() == 4);
}

TEST_CASE("crossing-free input stays crossing-free") {
  const auto g = unit_table({3, 3}, {{0, 0}, {1, 1}, {2, 2}, {2, 1}});
  for (auto method : kAll) {
    if (method == SortMethod::random) continue;
    CAPTURE(to_string(method));
    CHECK(solve(g, with(method)).objective == 0.0);
  }
}

TEST_CASE("small instances reach zero") {
  const auto e1 = unit_table({2, 2}, {{0, 0}, {0, 1}, {1, 0}});
  CHECK(total_objective(e1, LayoutSolution::identity(e1)) == 1.0);
  CHECK(solve(e1, with(SortMethod::neighbornet)).objective == 0.0);

  const auto reversal = unit_table({3, 3}, {{0, 2}, {1, 1}, {2, 0}});
  CHECK(total_objective(reversal, LayoutSolution::identity(reversal)) == 3.0);
  const auto sol = solve(reversal, with(SortMethod::neighbornet));
  CHECK(sol.objective == 0.0);
  CHECK(total_objective(reversal, sol) == 0.0);
}

TEST_CASE("cycle scan picks the smallest objective") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const auto g = testing::random_table(rng, 2 + t % 3, 2, 5, 20, 5);
    CycleScan scan;
    const auto sol = solve(g, with(SortMethod::neighbornet), &scan);
    REQUIRE(scan.objectives.size() == g.total_blocks());
    const auto it = std::min_element(scan.objectives.begin(), scan.objectives.end());
    CHECK(sol.objective == *it);
    CHECK(scan.best_start == static_cast<std::size_t>(it - scan.objectives.begin()));
    CHECK(sol.block_orders == split_cycle(scan.cycle, scan.best_start, g));
  }
}

TEST_CASE("every method returns a valid layout with a correct objective") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto g = testing::random_table(rng, 2 + (t % 2) * (1 + t % 3), 1, 5, 20, 9);
    for (auto method : kAll) {
      if (g.layers() != 2 && (method == SortMethod::greedy_wolf || method == SortMethod::greedy_wblf)) continue;
      for (bool layers : {false, true}) {
        auto cfg = with(method);
        cfg.optimize_layers = layers;
        const auto sol = solve(g, cfg);
        CHECK_NOTHROW(sol.check_against(g));
        CHECK(sol.objective == testing::brute_total(g, sol.layer_order, sol.block_orders));
      }
    }
  }
}

TEST_CASE("configuration errors") {
  const auto g3 = unit_table({2, 2, 2}, {{0, 0, 0}, {1, 1, 1}});
  CHECK_THROWS_AS((void)solve(g3, with(SortMethod::greedy_wolf)), ConfigError);
  CHECK_THROWS_AS((void)solve(g3, with(SortMethod::greedy_wblf)), ConfigError);
  WpompConfig cfg;
  cfg.method = SortMethod::random;
  CHECK_THROWS_AS((void)solve(g3, cfg), ConfigError);
  cfg = {};
  cfg.c_scale = 0;
  CHECK_THROWS_AS((void)solve(g3, cfg), ConfigError);
  CHECK_THROWS_AS((void)parse_sort_method("bubble"), ConfigError);
  CHECK(parse_sort_method("greedy_WOLF") == SortMethod::greedy_wolf);
  CHECK(parse_sort_method("tsp") == SortMethod::tsp_cycle);
}

TEST_CASE("random method is seeded") {
  std::mt19937_64 rng(2);
  const auto g = testing::random_table(rng, 3, 6, 8, 40, 3);
  auto cfg = with(SortMethod::random);
  const auto a = solve(g, cfg);
  CHECK(solve(g, cfg).block_orders == a.block_orders);
  cfg.seed = 18;
  CHECK(solve(g, cfg).block_orders != a.block_orders);
}

TEST_CASE("one-layer-free greedy follows the heaviest partner") {
  // free layer B: B1 -> A2 (w3), B2 -> A1 (w5) and A2 (w1), B3 -> A1 (w2)
  const auto g = testing::table_from_codes({2, 3}, {{1, 0}, {0, 1}, {1, 1}, {0, 2}}, {3, 5, 1, 2});
  const std::vector<std::uint32_t> identity{0, 1};
  CHECK(wolf_order(g, 0, identity, 1) == std::vector<Code>{1, 2, 0});
  const std::vector<std::uint32_t> flipped{1, 0};
  CHECK(wolf_order(g, 0, flipped, 1) == std::vector<Code>{0, 1, 2});
  const auto sol = solve(g, with(SortMethod::greedy_wolf));
  CHECK(sol.block_orders[0] == std::vector<Code>{0, 1});
  CHECK(sol.block_orders[1] == std::vector<Code>{1, 2, 0});
}

TEST_CASE("two-sided greedy terminates with a valid layout") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const auto g = testing::random_table(rng, 2, 2, 6, 25, 9);
    const auto wolf = solve(g, with(SortMethod::greedy_wolf));
    const auto wblf = solve(g, with(SortMethod::greedy_wblf));
    CHECK_NOTHROW(wblf.check_against(g));
    CHECK(std::isfinite(wblf.objective));
    CHECK(wolf.objective >= 0.0);
  }
}

TEST_CASE("layer order computed every start") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const auto g = testing::random_table(rng, 4, 2, 4, 20, 5);
    auto cfg = with(SortMethod::neighbornet);
    cfg.optimize_layers = true;
    const auto once = solve(g, cfg);
    cfg.layer_order_every_start = true;
    const auto every = solve(g, cfg);
    CHECK_NOTHROW(every.check_against(g));
    CHECK(every.objective == testing::brute_total(g, every.layer_order, every.block_orders));
    CHECK(once.objective == testing::brute_total(g, once.layer_order, once.block_orders));
  }
}
