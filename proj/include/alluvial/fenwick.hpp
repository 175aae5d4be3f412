#pragma once

#include <cstddef>
#include <vector>

namespace alluvial {

/// Prefix sums over positions 0..n-1 with point updates.
template <typename T>
class FenwickTree {
 public:
  explicit FenwickTree(std::size_t n) : tree_(n + 1, T{}) {}

  void add(std::size_t pos, const T& value) {
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += value;
  }

  /// Sum over [0, last).
  [[nodiscard]] T prefix(std::size_t last) const {
    T sum{};
    for (std::size_t i = last; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  /// Sum over [first, last).
  [[nodiscard]] T range(std::size_t first, std::size_t last) const {
    return first >= last ? T{} : prefix(last) - prefix(first);
  }

  [[nodiscard]] std::size_t size() const { return tree_.size() - 1; }

 private:
  std::vector<T> tree_;
};

}  // namespace alluvial
