#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "alluvial/errors.hpp"

namespace alluvial {

/// Dense 0-based block identifier within one layer.
using Code = std::uint32_t;

using BigCount = boost::multiprecision::cpp_int;

/// Raw observations: m category values per row plus a positive weight.
struct Observation {
  std::vector<std::string> values;
  double weight = 1.0;
};

struct Dataset {
  std::vector<std::string> layer_names;
  std::vector<Observation> rows;

  /// Throws DataError unless m >= 2, every row has m values and weights are positive.
  void validate() const;
};

/// The collapsed form of a dataset: n̄ distinct block combinations (alluvia),
/// each with a positive weight. Immutable once constructed.
class GroupedTable {
 public:
  GroupedTable() = default;

  /// `codes` is row-major, one row of `layer_names.size()` codes per combo.
  /// Throws DataError on any invariant violation (duplicate combos, codes out
  /// of range, unused blocks, non-positive weights).
  GroupedTable(std::vector<std::string> layer_names,
               std::vector<std::vector<std::string>> block_labels,
               std::vector<Code> codes, std::vector<double> weights,
               std::size_t observations);

  [[nodiscard]] std::size_t layers() const { return layer_names_.size(); }
  [[nodiscard]] std::size_t combos() const { return weights_.size(); }
  [[nodiscard]] std::size_t blocks(std::size_t layer) const {
    return block_labels_[layer].size();
  }
  [[nodiscard]] std::size_t total_blocks() const { return offsets_.back(); }

  /// Position of (layer, block) in the flattened layer-major block list.
  [[nodiscard]] std::size_t flat_index(std::size_t layer, Code block) const {
    return offsets_[layer] + block;
  }
  [[nodiscard]] std::span<const std::size_t> layer_offsets() const { return offsets_; }

  [[nodiscard]] Code code(std::size_t combo, std::size_t layer) const {
    return codes_[combo * layers() + layer];
  }
  [[nodiscard]] std::span<const Code> combo(std::size_t i) const {
    return std::span<const Code>(codes_).subspan(i * layers(), layers());
  }
  [[nodiscard]] double weight(std::size_t combo) const { return weights_[combo]; }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }

  [[nodiscard]] double total_weight() const { return total_weight_; }
  [[nodiscard]] double block_weight(std::size_t layer, Code block) const {
    return block_weights_[flat_index(layer, block)];
  }
  /// Number of combos passing through the block (n̄_{i,j}).
  [[nodiscard]] std::size_t block_combo_count(std::size_t layer, Code block) const {
    return block_counts_[flat_index(layer, block)];
  }

  [[nodiscard]] const std::vector<std::string>& layer_names() const { return layer_names_; }
  [[nodiscard]] const std::string& label(std::size_t layer, Code block) const {
    return block_labels_[layer][block];
  }
  [[nodiscard]] const std::vector<std::vector<std::string>>& block_labels() const {
    return block_labels_;
  }

  /// Row count of the originating data (n).
  [[nodiscard]] std::size_t observations() const { return observations_; }

  [[nodiscard]] bool integer_weights() const { return integer_weights_; }

 private:
  std::vector<std::string> layer_names_;
  std::vector<std::vector<std::string>> block_labels_;
  std::vector<Code> codes_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> block_weights_;
  std::vector<std::size_t> block_counts_;
  std::size_t observations_ = 0;
  double total_weight_ = 0.0;
  bool integer_weights_ = true;
};

struct DatasetStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_bar = 0;
  std::vector<std::size_t> k;
  std::size_t k_sum = 0;
  BigCount k_prod;
  BigCount s_p;      // Π k_i!
  BigCount s_total;  // m! · S_p
  BigCount s_valid;  // Π (k_i! · Π_j n̄_{i,j}!)
};

[[nodiscard]] DatasetStats compute_stats(const GroupedTable& g, std::size_t n);

[[nodiscard]] BigCount factorial(std::size_t n);

/// Layer permutation μ plus per-layer block orders σ_i.
///
/// `layer_order[r]` is the layer drawn at column r. `block_orders[i]` lists the
/// codes of layer i from top to bottom; it is indexed by layer, not by column.
struct LayoutSolution {
  std::vector<std::size_t> layer_order;
  std::vector<std::vector<Code>> block_orders;
  double objective = 0.0;

  /// rank[i][code] = position of `code` within block_orders[i].
  [[nodiscard]] std::vector<std::vector<std::uint32_t>> ranks() const;

  /// Throws ConfigError when the orders are not bijections matching g.
  void check_against(const GroupedTable& g) const;

  /// μ = identity and σ_i = ascending codes.
  [[nodiscard]] static LayoutSolution identity(const GroupedTable& g);
};

/// Color label of one block. Two blocks share a color iff both fields agree;
/// blocks in one layer always have distinct colors. `community` groups
/// related blocks across layers; `ordinal` separates same-community blocks
/// inside a single layer.
struct BlockColor {
  std::uint32_t community = 0;
  std::uint32_t ordinal = 0;

  friend bool operator==(const BlockColor&, const BlockColor&) = default;
  friend auto operator<=>(const BlockColor&, const BlockColor&) = default;
};

struct ColorAssignment {
  std::vector<std::vector<BlockColor>> colors;  // [layer][code]
  double matched_weight = 0.0;

  /// Dense non-negative integer label per distinct color, ordered by
  /// (ordinal, community).
  [[nodiscard]] std::vector<std::vector<std::uint32_t>> labels() const;
};

/// Matched weight M: Σ over adjacent columns of the weight flowing between
/// equally colored blocks.
[[nodiscard]] double matched_weight(const GroupedTable& g,
                                    const std::vector<std::vector<BlockColor>>& colors,
                                    std::span<const std::size_t> layer_order);

/// Throws ConfigError if `order` is not a permutation of 0..n-1.
void require_permutation(std::span<const std::size_t> order, std::size_t n,
                         const char* what);

}  // namespace alluvial
