#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "alluvial/model.hpp"

namespace alluvial {

/// Dense symmetric matrix with a zero diagonal.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {
    for (std::size_t i = 0; i < n; ++i) data_[i * n + i] = 0.0;
  }

  /// Throws ConfigError unless `rows` is square and symmetric.
  [[nodiscard]] static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  /// Smallest and largest off-diagonal entry; {0, 0} for n < 2.
  [[nodiscard]] std::pair<double, double> off_diagonal_range() const;

  [[nodiscard]] SymmetricMatrix scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Weight of an absent pair, expressed as an edge weight before the log.
inline constexpr double kAbsentPairWeight = 1e-12;

/// Block-to-block distances built from co-occurrence weights.
struct BlockDistanceMatrix {
  /// Raw entries: c·(−log w_ij) for connected pairs, big_value for absent
  /// cross-layer pairs, same_layer_value (or big_value) within a layer.
  SymmetricMatrix d;
  std::vector<std::pair<std::size_t, Code>> node_index;  // layer-major
  double c_scale = 1.0;
  double big_value = 0.0;
  std::optional<double> same_layer_value;
  /// Constant added to every off-diagonal entry by dissimilarity() so that
  /// no entry is negative.
  double shift = 0.0;

  [[nodiscard]] SymmetricMatrix dissimilarity() const;

  /// Writes the raw matrix as CSV with "layer:label" headers.
  void write_csv(std::ostream& out, const GroupedTable& g) const;
};

[[nodiscard]] BlockDistanceMatrix build_distance_matrix(const GroupedTable& g,
                                                        double c_scale = 1.0,
                                                        std::optional<double> same_layer_value = {});

/// Circular order over node indices 0..n-1.
struct Cycle {
  std::vector<std::size_t> order;
};

/// NeighborNet circular ordering of a dissimilarity matrix. Throws ConfigError
/// for a non-symmetric matrix or negative entries. The returned order starts at
/// node 0.
[[nodiscard]] Cycle neighbornet_cycle(const SymmetricMatrix& d);

[[nodiscard]] Cycle neighbornet_cycle(const BlockDistanceMatrix& dm);

}  // namespace alluvial
