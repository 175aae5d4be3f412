#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "alluvial/neighbornet.hpp"
#include "alluvial/random.hpp"
#include "support.hpp"

using namespace alluvial;
using testing::same_cycle;

namespace {

/// Relabels node i as perm[i]; returns the matrix and the generating order.
std::pair<std::vector<std::vector<double>>, std::vector<std::size_t>> scramble(
    const std::vector<std::vector<double>>& d, std::mt19937_64& rng) {
  const std::size_t n = d.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[perm[i]][perm[j]] = d[i][j];
  return {out, perm};
}

std::vector<std::vector<double>> chord_metric(const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = std::hypot(std::cos(theta[i]) - std::cos(theta[j]), std::sin(theta[i]) - std::sin(theta[j]));
  return d;
}

}  // namespace

TEST_CASE("distance matrix entries") {
  const double big = -std::log(kAbsentPairWeight);
  const auto one = testing::unit_table({1, 1}, {{0, 0}});
  const auto dm = build_distance_matrix(one);
  CHECK(dm.d(0, 1) == 0.0);
  CHECK(dm.big_value == doctest::Approx(big));
  CHECK(dm.shift == 0.0);

  const auto two = testing::table_from_codes({2, 2}, {{0, 0}, {1, 1}}, {1, 2});
  const auto dm2 = build_distance_matrix(two, 2.0);
  CHECK(dm2.d(0, 2) == 0.0);
  CHECK(dm2.d(1, 3) == doctest::Approx(-2.0 * std::log(2.0)));
  CHECK(dm2.d(0, 3) == doctest::Approx(2.0 * big));
  CHECK(dm2.d(0, 1) == doctest::Approx(2.0 * big));
  CHECK(dm2.shift == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(dm2.dissimilarity()(1, 3) == doctest::Approx(0.0));
  CHECK(dm2.dissimilarity()(1, 1) == 0.0);
  CHECK(dm2.node_index[2] == std::pair<std::size_t, Code>{1, 0});
}

TEST_CASE("repeated combos add their weights") {
  const auto raw_weight = 2.0 + 3.0;
  const auto g = testing::table_from_codes({1, 1}, {{0, 0}}, {raw_weight});
  const auto dm = build_distance_matrix(g, 1.5);
  CHECK(dm.d(0, 1) == doctest::Approx(-1.5 * std::log(5.0)));
}

TEST_CASE("every block pair of a combo gets an entry") {
  const auto g = testing::table_from_codes({1, 2, 1}, {{0, 1, 0}, {0, 0, 0}}, {4, 1});
  const auto dm = build_distance_matrix(g);
  // nodes: A1=0, B1=1, B2=2, C1=3
  CHECK(dm.d(0, 2) == doctest::Approx(-std::log(4.0)));
  CHECK(dm.d(2, 3) == doctest::Approx(-std::log(4.0)));
  CHECK(dm.d(0, 3) == doctest::Approx(-std::log(5.0)));
  CHECK(dm.d(0, 1) == 0.0);
  CHECK(dm.d(1, 2) == dm.big_value);
}

TEST_CASE("same-layer value and scale validation") {
  const auto g = testing::unit_table({2, 2}, {{0, 0}, {1, 1}});
  CHECK(build_distance_matrix(g, 1.0, 7.5).d(0, 1) == 7.5);
  CHECK_THROWS_AS((void)build_distance_matrix(g, 0.0), ConfigError);
  CHECK_THROWS_AS((void)build_distance_matrix(g, -1.0), ConfigError);
  CHECK_THROWS_AS((void)build_distance_matrix(g, 1.0, -2.0), ConfigError);
}

TEST_CASE("distance matrix csv dump") {
  const auto g = testing::unit_table({1, 1}, {{0, 0}});
  std::ostringstream out;
  build_distance_matrix(g).write_csv(out, g);
  CHECK(out.str() == "node,A:A1,B:B1\nA:A1,0,0\nB:B1,0,0\n");
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS((void)SymmetricMatrix::from_rows({{0, 1}, {2, 0}}), ConfigError);
  CHECK_THROWS_AS((void)SymmetricMatrix::from_rows({{0, 1}}), ConfigError);
  CHECK_THROWS_AS((void)neighbornet_cycle(SymmetricMatrix::from_rows({{0, -1}, {-1, 0}})), ConfigError);
}

TEST_CASE("three or fewer nodes give the identity") {
  for (std::size_t n = 1; n <= 3; ++n) {
    SymmetricMatrix d(n, 1.0);
    if (n == 3) d.set(0, 2, 5.0);
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), std::size_t{0});
    CHECK(neighbornet_cycle(d).order == id);
  }
}

TEST_CASE("ring of six") {
  std::vector<std::vector<double>> d(6, std::vector<double>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      d[i][j] = static_cast<double>(std::min(gap, 6 - gap));
    }
  const std::vector<std::size_t> ring{0, 1, 2, 3, 4, 5};
  // The ring order, walked either way, is the only shortest closed walk.
  const auto best = testing::brute_min_cycles(d);
  REQUIRE(best.size() == 2);
  for (const auto& b : best) CHECK(same_cycle(b, ring));

  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto [m, perm] = scramble(d, rng);
    CHECK(same_cycle(neighbornet_cycle(SymmetricMatrix::from_rows(m)).order, perm));
  }
}

TEST_CASE("five chord points") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> theta(5);
    for (auto& x : theta) x = u(rng);
    std::sort(theta.begin(), theta.end());
    const auto d = chord_metric(theta);
    const std::vector<std::size_t> angular{0, 1, 2, 3, 4};
    for (const auto& b : testing::brute_min_cycles(d)) CHECK(same_cycle(b, angular));
    const auto [m, perm] = scramble(d, rng);
    CHECK(same_cycle(neighbornet_cycle(SymmetricMatrix::from_rows(m)).order, perm));
  }
}

TEST_CASE("arc-length metrics are recovered") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4 + rng() % 20;
    const auto [m, perm] = scramble(testing::circular_metric(rng, n), rng);
    CHECK(same_cycle(neighbornet_cycle(SymmetricMatrix::from_rows(m)).order, perm));
  }
}

TEST_CASE("cycle is a deterministic, scale-free permutation starting at node 0") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 25;
    SymmetricMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, uniform_unit(rng) * 10);
    const auto c = neighbornet_cycle(d).order;
    auto sorted = c;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), std::size_t{0});
    CHECK(sorted == id);
    CHECK(c.front() == 0);
    CHECK(neighbornet_cycle(d).order == c);
    CHECK(neighbornet_cycle(d.scaled(4.0)).order == c);
    CHECK(neighbornet_cycle(d.scaled(0.25)).order == c);
  }
}

TEST_CASE("block matrix overload uses the shifted dissimilarity") {
  const auto g = testing::table_from_codes({2, 2, 2}, {{0, 0, 0}, {1, 1, 1}, {0, 1, 0}}, {5, 6, 1});
  const auto dm = build_distance_matrix(g);
  CHECK(dm.shift > 0.0);
  CHECK(neighbornet_cycle(dm).order == neighbornet_cycle(dm.dissimilarity()).order);
}
