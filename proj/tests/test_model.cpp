#include <doctest.h>

#include "alluvial/model.hpp"
#include "support.hpp"

using namespace alluvial;
using testing::unit_table;

namespace {

// 5 x 4 blocks, 27 observations.
GroupedTable five_by_four() {
  std::vector<std::vector<Code>> combos;
  std::vector<double> w;
  for (Code a = 0; a < 5; ++a) {
    combos.push_back({a, static_cast<Code>(a % 4)});
    w.push_back(a + 3.0);
  }
  combos.push_back({0, 3});
  w.push_back(2.0);
  return testing::table_from_codes({5, 4}, combos, w);
}

}  // namespace

TEST_CASE("stats for a 5x4 two-layer table") {
  const auto g = five_by_four();
  CHECK(g.total_weight() == 27.0);
  const auto s = compute_stats(g, 27);
  CHECK(s.n == 27);
  CHECK(s.m == 2);
  CHECK(s.n_bar == 6);
  CHECK(s.k == std::vector<std::size_t>{5, 4});
  CHECK(s.k_sum == 9);
  CHECK(s.k_prod == 20);
  CHECK(s.s_p == 2880);
  CHECK(s.s_total == 5760);
  // A1, B1 and B4 each carry two combos
  CHECK(s.s_valid == BigCount(120) * 24 * 2 * 2 * 2);
}

TEST_CASE("stats for single-block layers") {
  const auto s = compute_stats(unit_table({1, 1}, {{0, 0}}), 1);
  CHECK(s.k_sum == 2);
  CHECK(s.k_prod == 1);
  CHECK(s.s_p == 1);
  CHECK(s.s_total == 2);
}

TEST_CASE("stats for k = 3,2,2") {
  const auto g = unit_table({3, 2, 2}, {{0, 0, 0}, {1, 1, 1}, {2, 0, 1}});
  const auto s = compute_stats(g, 3);
  CHECK(s.k_sum == 7);
  CHECK(s.k_prod == 12);
  CHECK(s.s_p == 24);
  CHECK(s.s_total == 144);
}

TEST_CASE("big counts do not overflow") {
  std::vector<std::vector<Code>> combos;
  for (Code i = 0; i < 30; ++i) combos.push_back({i, i, i});
  const auto s = compute_stats(unit_table({30, 30, 30}, combos), 30);
  CHECK(s.s_p == factorial(30) * factorial(30) * factorial(30));
  CHECK(s.s_total == 6 * s.s_p);
  CHECK(s.s_p.str().size() > 90);
}

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(1) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(factorial(25).str() == "15511210043330985984000000");
}

TEST_CASE("grouped table rejects invalid input") {
  CHECK_THROWS_AS((void)unit_table({2, 2}, {{0, 0}, {0, 0}, {1, 1}}), DataError);
  CHECK_THROWS_AS((void)unit_table({2, 2}, {{0, 0}}), DataError);
  CHECK_THROWS_AS((void)unit_table({2, 2}, {{0, 2}, {1, 1}}), DataError);
  CHECK_THROWS_AS((void)testing::table_from_codes({2, 2}, {{0, 0}, {1, 1}}, {1.0, 0.0}), DataError);
  CHECK_THROWS_AS((void)unit_table({2}, {{0}, {1}}), DataError);
}

TEST_CASE("grouped table accessors") {
  const auto g = testing::table_from_codes({2, 3}, {{0, 0}, {0, 2}, {1, 1}}, {1.0, 2.5, 3.0});
  CHECK(g.layers() == 2);
  CHECK(g.combos() == 3);
  CHECK(g.total_blocks() == 5);
  CHECK(g.flat_index(1, 2) == 4);
  CHECK(g.block_weight(0, 0) == 3.5);
  CHECK(g.block_weight(1, 1) == 3.0);
  CHECK(g.block_combo_count(0, 0) == 2);
  CHECK(g.label(1, 2) == "B3");
  CHECK_FALSE(g.integer_weights());
}

TEST_CASE("generated tables respect the combo count bounds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto g = testing::random_table(rng, 2 + t % 3, 1, 5, 20, 9);
    const auto s = compute_stats(g, g.observations());
    std::size_t kmax = 0;
    for (auto k : s.k) kmax = std::max(kmax, k);
    CHECK(s.n_bar >= kmax);
    CHECK(BigCount(s.n_bar) <= s.k_prod);
    CHECK(s.n_bar <= s.n);
    const auto again = compute_stats(g, g.observations());
    CHECK(again.s_valid == s.s_valid);
  }
}

TEST_CASE("layout solution validation") {
  const auto g = unit_table({2, 3}, {{0, 0}, {1, 1}, {1, 2}});
  auto sol = LayoutSolution::identity(g);
  CHECK_NOTHROW(sol.check_against(g));
  CHECK(sol.ranks()[1] == std::vector<std::uint32_t>{0, 1, 2});
  sol.block_orders[1] = {2, 0, 1};
  CHECK(sol.ranks()[1] == std::vector<std::uint32_t>{1, 2, 0});
  sol.block_orders[1] = {2, 2, 1};
  CHECK_THROWS_AS((void)sol.check_against(g), ConfigError);
  sol = LayoutSolution::identity(g);
  sol.layer_order = {0, 0};
  CHECK_THROWS_AS((void)sol.check_against(g), ConfigError);
}

TEST_CASE("matched weight and color labels") {
  const auto g = testing::table_from_codes({2, 2}, {{0, 0}, {1, 1}, {0, 1}}, {2, 3, 4});
  std::vector<std::vector<BlockColor>> colors{{{0, 0}, {1, 0}}, {{0, 0}, {1, 0}}};
  CHECK(matched_weight(g, colors, std::vector<std::size_t>{0, 1}) == 5.0);
  colors[1][1] = {1, 1};
  CHECK(matched_weight(g, colors, std::vector<std::size_t>{0, 1}) == 2.0);
  ColorAssignment ca{colors, 2.0};
  const auto labels = ca.labels();
  CHECK(labels[0][0] == labels[1][0]);
  CHECK(labels[0][1] != labels[1][1]);
  CHECK(labels[0][0] != labels[0][1]);
}
