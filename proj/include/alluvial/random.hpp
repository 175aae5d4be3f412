#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace alluvial {

// std::shuffle and the std distributions are implementation-defined; these
// helpers pin the draw sequence so seeded output is identical everywhere.

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Lemire-style rejection on the top of the range.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void seeded_shuffle(std::span<T> items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace alluvial
