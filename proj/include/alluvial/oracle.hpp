#pragma once

#include <cstdint>

#include "alluvial/model.hpp"

namespace alluvial {

struct OracleLimits {
  std::uint64_t max_s = 5'000'000;
  std::uint64_t max_color_space = 5'000'000;

  void validate() const;
};

struct WpompOracleResult {
  LayoutSolution best;
  std::uint64_t candidates = 0;  // layouts evaluated
};

/// Exhaustive W_POMP: every layer order (unless fixed to identity) times every
/// per-layer block permutation. The witness is the lexicographically smallest
/// (μ, σ_1, …, σ_m) reaching the minimum. Throws ConfigError over the cap.
[[nodiscard]] WpompOracleResult brute_force_wpomp(const GroupedTable& g, bool fix_layer_order,
                                                  const OracleLimits& limits = {});

struct WlompOracleResult {
  ColorAssignment best;
  BigCount space;                // Π k_i!, the size checked against the cap
  std::uint64_t candidates = 0;  // assignments evaluated
};

/// Exhaustive W_LOMP over per-layer injective colorings into a palette of
/// max_i k_i colors, with the adjacent-layer order given by identity. One
/// largest layer is pinned to the identity coloring (palette symmetry).
[[nodiscard]] WlompOracleResult brute_force_wlomp(const GroupedTable& g,
                                                  const OracleLimits& limits = {});

}  // namespace alluvial
