#include "alluvial/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace alluvial {

void Dataset::validate() const {
  if (layer_names.size() < 2) {
    throw DataError("dataset needs at least 2 category columns, got " +
                    std::to_string(layer_names.size()));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].values.size() != layer_names.size()) {
      throw DataError("row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].values.size()) + " values, expected " +
                      std::to_string(layer_names.size()));
    }
    if (!(rows[r].weight > 0.0) || !std::isfinite(rows[r].weight)) {
      throw DataError("row " + std::to_string(r + 1) + " has non-positive weight");
    }
  }
}

GroupedTable::GroupedTable(std::vector<std::string> layer_names,
                           std::vector<std::vector<std::string>> block_labels,
                           std::vector<Code> codes, std::vector<double> weights,
                           std::size_t observations)
    : layer_names_(std::move(layer_names)),
      block_labels_(std::move(block_labels)),
      codes_(std::move(codes)),
      weights_(std::move(weights)),
      observations_(observations) {
  const std::size_t m = layer_names_.size();
  if (m < 2) throw DataError("grouped table needs at least 2 layers");
  if (block_labels_.size() != m) throw DataError("block label table does not match layer count");
  if (weights_.empty()) throw DataError("grouped table has no combinations");
  if (codes_.size() != weights_.size() * m) throw DataError("code table has wrong size");

  for (const auto& labels : block_labels_) offsets_.push_back(offsets_.back() + labels.size());
  block_weights_.assign(offsets_.back(), 0.0);
  block_counts_.assign(offsets_.back(), 0);

  std::set<std::vector<Code>> seen;
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    const double w = weights_[c];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DataError("combination " + std::to_string(c) + " has non-positive weight");
    }
    if (w != std::floor(w)) integer_weights_ = false;
    total_weight_ += w;
    for (std::size_t i = 0; i < m; ++i) {
      const Code b = codes_[c * m + i];
      if (b >= block_labels_[i].size()) {
        throw DataError("block code out of range in layer '" + layer_names_[i] + "'");
      }
      block_weights_[offsets_[i] + b] += w;
      block_counts_[offsets_[i] + b] += 1;
    }
    std::vector<Code> key(codes_.begin() + static_cast<std::ptrdiff_t>(c * m),
                          codes_.begin() + static_cast<std::ptrdiff_t>((c + 1) * m));
    if (!seen.insert(std::move(key)).second) {
      throw DataError("duplicate block combination at index " + std::to_string(c));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (block_labels_[i].empty()) throw DataError("layer '" + layer_names_[i] + "' has no blocks");
    for (std::size_t b = 0; b < block_labels_[i].size(); ++b) {
      if (block_counts_[offsets_[i] + b] == 0) {
        throw DataError("block '" + block_labels_[i][b] + "' of layer '" + layer_names_[i] +
                        "' is never used");
      }
    }
  }
}

BigCount factorial(std::size_t n) {
  BigCount f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

DatasetStats compute_stats(const GroupedTable& g, std::size_t n) {
  DatasetStats s;
  s.n = n;
  s.m = g.layers();
  s.n_bar = g.combos();
  s.k_prod = 1;
  s.s_p = 1;
  s.s_valid = 1;
  for (std::size_t i = 0; i < g.layers(); ++i) {
    const std::size_t k = g.blocks(i);
    s.k.push_back(k);
    s.k_sum += k;
    s.k_prod *= k;
    const BigCount kf = factorial(k);
    s.s_p *= kf;
    BigCount layer_valid = kf;
    for (Code b = 0; b < k; ++b) layer_valid *= factorial(g.block_combo_count(i, b));
    s.s_valid *= layer_valid;
  }
  s.s_total = factorial(s.m) * s.s_p;
  return s;
}

std::vector<std::vector<std::uint32_t>> LayoutSolution::ranks() const {
  std::vector<std::vector<std::uint32_t>> r(block_orders.size());
  for (std::size_t i = 0; i < block_orders.size(); ++i) {
    r[i].assign(block_orders[i].size(), 0);
    for (std::size_t pos = 0; pos < block_orders[i].size(); ++pos) {
      r[i][block_orders[i][pos]] = static_cast<std::uint32_t>(pos);
    }
  }
  return r;
}

void require_permutation(std::span<const std::size_t> order, std::size_t n, const char* what) {
  if (order.size() != n) {
    throw ConfigError(std::string(what) + " has " + std::to_string(order.size()) +
                      " entries, expected " + std::to_string(n));
  }
  std::vector<bool> hit(n, false);
  for (std::size_t v : order) {
    if (v >= n || hit[v]) throw ConfigError(std::string(what) + " is not a permutation");
    hit[v] = true;
  }
}

void LayoutSolution::check_against(const GroupedTable& g) const {
  require_permutation(layer_order, g.layers(), "layer order");
  if (block_orders.size() != g.layers()) {
    throw ConfigError("block orders cover " + std::to_string(block_orders.size()) +
                      " layers, table has " + std::to_string(g.layers()));
  }
  for (std::size_t i = 0; i < g.layers(); ++i) {
    std::vector<std::size_t> as_size(block_orders[i].begin(), block_orders[i].end());
    require_permutation(as_size, g.blocks(i),
                        ("block order of layer '" + g.layer_names()[i] + "'").c_str());
  }
}

LayoutSolution LayoutSolution::identity(const GroupedTable& g) {
  LayoutSolution s;
  s.layer_order.resize(g.layers());
  std::iota(s.layer_order.begin(), s.layer_order.end(), std::size_t{0});
  s.block_orders.resize(g.layers());
  for (std::size_t i = 0; i < g.layers(); ++i) {
    s.block_orders[i].resize(g.blocks(i));
    std::iota(s.block_orders[i].begin(), s.block_orders[i].end(), Code{0});
  }
  return s;
}

std::vector<std::vector<std::uint32_t>> ColorAssignment::labels() const {
  std::set<std::pair<std::uint32_t, std::uint32_t>> distinct;
  for (const auto& layer : colors)
    for (const auto& c : layer) distinct.emplace(c.ordinal, c.community);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::uint32_t next = 0;
  for (const auto& key : distinct) index.emplace(key, next++);
  std::vector<std::vector<std::uint32_t>> out(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (const auto& c : colors[i]) out[i].push_back(index.at({c.ordinal, c.community}));
  }
  return out;
}

double matched_weight(const GroupedTable& g, const std::vector<std::vector<BlockColor>>& colors,
                      std::span<const std::size_t> layer_order) {
  require_permutation(layer_order, g.layers(), "layer order");
  double total = 0.0;
  for (std::size_t r = 0; r + 1 < layer_order.size(); ++r) {
    const std::size_t a = layer_order[r];
    const std::size_t b = layer_order[r + 1];
    for (std::size_t c = 0; c < g.combos(); ++c) {
      if (colors[a][g.code(c, a)] == colors[b][g.code(c, b)]) total += g.weight(c);
    }
  }
  return total;
}

}  // namespace alluvial
