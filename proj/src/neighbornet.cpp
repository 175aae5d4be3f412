#include "alluvial/neighbornet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace alluvial {

SymmetricMatrix SymmetricMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw ConfigError("distance matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) throw ConfigError("distance matrix is not symmetric");
      m.data_[i * n + j] = i == j ? 0.0 : rows[i][j];
    }
    if (rows[i][i] != 0.0) throw ConfigError("distance matrix has a non-zero diagonal");
  }
  return m;
}

std::pair<double, double> SymmetricMatrix::off_diagonal_range() const {
  if (n_ < 2) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      lo = std::min(lo, (*this)(i, j));
      hi = std::max(hi, (*this)(i, j));
    }
  }
  return {lo, hi};
}

SymmetricMatrix SymmetricMatrix::scaled(double factor) const {
  SymmetricMatrix out = *this;
  for (auto& v : out.data_) v *= factor;
  return out;
}

BlockDistanceMatrix build_distance_matrix(const GroupedTable& g, double c_scale,
                                          std::optional<double> same_layer_value) {
  if (!(c_scale > 0.0) || !std::isfinite(c_scale)) throw ConfigError("c_scale must be positive");
  if (same_layer_value && !(*same_layer_value > 0.0)) {
    throw ConfigError("same-layer distance must be positive");
  }
  BlockDistanceMatrix dm;
  dm.c_scale = c_scale;
  dm.big_value = c_scale * -std::log(kAbsentPairWeight);
  dm.same_layer_value = same_layer_value;

  const std::size_t k = g.total_blocks();
  for (std::size_t i = 0; i < g.layers(); ++i) {
    for (Code b = 0; b < g.blocks(i); ++b) dm.node_index.emplace_back(i, b);
  }

  SymmetricMatrix pair_weight(k, 0.0);
  for (std::size_t c = 0; c < g.combos(); ++c) {
    for (std::size_t a = 0; a < g.layers(); ++a) {
      const std::size_t na = g.flat_index(a, g.code(c, a));
      for (std::size_t b = a + 1; b < g.layers(); ++b) {
        const std::size_t nb = g.flat_index(b, g.code(c, b));
        pair_weight.set(na, nb, pair_weight(na, nb) + g.weight(c));
      }
    }
  }

  dm.d = SymmetricMatrix(k, dm.big_value);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (dm.node_index[i].first == dm.node_index[j].first) {
        dm.d.set(i, j, same_layer_value.value_or(dm.big_value));
      } else if (pair_weight(i, j) > 0.0) {
        dm.d.set(i, j, std::min(dm.big_value, c_scale * -std::log(pair_weight(i, j)) + 0.0));
      }
    }
  }
  const double lowest = dm.d.off_diagonal_range().first;
  dm.shift = lowest < 0.0 ? -lowest : 0.0;
  return dm;
}

SymmetricMatrix BlockDistanceMatrix::dissimilarity() const {
  SymmetricMatrix out = d;
  if (shift == 0.0) return out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) out.set(i, j, d(i, j) + shift);
  }
  return out;
}

void BlockDistanceMatrix::write_csv(std::ostream& out, const GroupedTable& g) const {
  const auto name = [&](std::size_t node) {
    const auto [layer, block] = node_index[node];
    std::string s = g.layer_names()[layer] + ":" + g.label(layer, block);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  };
  out << "node";
  for (std::size_t j = 0; j < d.size(); ++j) out << ',' << name(j);
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << name(i);
    for (std::size_t j = 0; j < d.size(); ++j) out << ',' << d(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

namespace {

constexpr int kNone = -1;

// Agglomeration state. Node ids grow monotonically; each node owns a row of the
// working matrix (a reduction reuses the rows of the nodes it replaces).
class NeighborNetState {
 public:
  explicit NeighborNetState(const SymmetricMatrix& d) : n_(d.size()), dist_(d) {
    const std::size_t capacity = 3 * n_;
    slot_.reserve(capacity);
    nbr_.reserve(capacity);
    for (std::size_t i = 0; i < n_; ++i) {
      slot_.push_back(i);
      nbr_.push_back(kNone);
      active_.push_back(static_cast<int>(i));
    }
  }

  std::vector<std::size_t> run() {
    agglomerate();
    return expand();
  }

 private:
  struct Reduction {
    int u, v, x, y, z;
  };

  double dist(int a, int b) const {
    return dist_(slot_[static_cast<std::size_t>(a)], slot_[static_cast<std::size_t>(b)]);
  }
  int nbr(int a) const { return nbr_[static_cast<std::size_t>(a)]; }
  bool representative(int p) const { return nbr(p) == kNone || nbr(p) > p; }

  // Average distance between the clusters containing p and q.
  double cluster_dist(int p, int q) const {
    const int pn = nbr(p);
    const int qn = nbr(q);
    if (pn == kNone && qn == kNone) return dist(p, q);
    if (qn == kNone) return (dist(p, q) + dist(pn, q)) / 2.0;
    if (pn == kNone) return (dist(p, q) + dist(p, qn)) / 2.0;
    return (dist(p, q) + dist(p, qn) + dist(pn, q) + dist(pn, qn)) / 4.0;
  }

  double node_row_sum(int z, int cx, int cy) const {
    double r = 0.0;
    for (int p : active_) {
      if (p == cx || p == nbr(cx) || p == cy || p == nbr(cy) || nbr(p) == kNone) {
        r += dist(z, p);
      } else {
        r += dist(z, p) / 2.0;
      }
    }
    return r;
  }

  int new_node(std::size_t slot) {
    slot_.push_back(slot);
    nbr_.push_back(kNone);
    return static_cast<int>(slot_.size() - 1);
  }

  void link(int a, int b) {
    nbr_[static_cast<std::size_t>(a)] = b;
    nbr_[static_cast<std::size_t>(b)] = a;
  }

  // Replaces the chain x–y–z by two linked nodes u (in x's place) and v (in
  // z's place).
  int reduce(int x, int y, int z) {
    const double dxy = dist(x, y);
    const double dxz = dist(x, z);
    const double dyz = dist(y, z);
    std::vector<double> row_u, row_v;
    std::vector<int> others;
    for (int p : active_) {
      if (p == x || p == y || p == z) continue;
      others.push_back(p);
      row_u.push_back((2.0 / 3.0) * dist(x, p) + (1.0 / 3.0) * dist(y, p));
      row_v.push_back((1.0 / 3.0) * dist(y, p) + (2.0 / 3.0) * dist(z, p));
    }
    const int u = new_node(slot_[static_cast<std::size_t>(x)]);
    const int v = new_node(slot_[static_cast<std::size_t>(z)]);
    link(u, v);
    for (std::size_t i = 0; i < others.size(); ++i) {
      const std::size_t s = slot_[static_cast<std::size_t>(others[i])];
      dist_.set(slot_[static_cast<std::size_t>(u)], s, row_u[i]);
      dist_.set(slot_[static_cast<std::size_t>(v)], s, row_v[i]);
    }
    dist_.set(slot_[static_cast<std::size_t>(u)], slot_[static_cast<std::size_t>(v)],
              (dxy + dxz + dyz) / 3.0);

    for (int& p : active_) {
      if (p == x) p = u;
      else if (p == z) p = v;
    }
    active_.erase(std::find(active_.begin(), active_.end(), y));
    reductions_.push_back({u, v, x, y, z});
    return u;
  }

  void agglomerate() {
    std::size_t num_active = n_;
    std::size_t num_clusters = n_;
    std::vector<double> sx(slot_.capacity(), 0.0);

    while (num_active > 3) {
      if (num_active == 4 && num_clusters == 2) {
        const int p = active_[0];
        const int q = active_[1] != nbr(p) ? active_[1] : active_[2];
        if (dist(p, q) + dist(nbr(p), nbr(q)) < dist(p, nbr(q)) + dist(nbr(p), q)) {
          reduce(p, q, nbr(q));
        } else {
          reduce(p, nbr(q), q);
        }
        break;
      }

      // Summed cluster-averaged distance from each cluster to every other one.
      sx.assign(slot_.size(), 0.0);
      for (std::size_t i = 0; i < active_.size(); ++i) {
        const int p = active_[i];
        if (!representative(p)) continue;
        for (std::size_t j = i + 1; j < active_.size(); ++j) {
          const int q = active_[j];
          if (!representative(q) || q == nbr(p)) continue;
          const double dpq = cluster_dist(p, q);
          sx[static_cast<std::size_t>(p)] += dpq;
          if (nbr(p) != kNone) sx[static_cast<std::size_t>(nbr(p))] += dpq;
          sx[static_cast<std::size_t>(q)] += dpq;
          if (nbr(q) != kNone) sx[static_cast<std::size_t>(nbr(q))] += dpq;
        }
      }

      // Cluster pair minimising (N−2)·d(A,B) − S_A − S_B.
      int cx = kNone;
      int cy = kNone;
      double best = 0.0;
      const double clusters = static_cast<double>(num_clusters);
      for (std::size_t i = 0; i < active_.size(); ++i) {
        const int p = active_[i];
        if (!representative(p)) continue;
        for (std::size_t j = 0; j < i; ++j) {
          const int q = active_[j];
          if (!representative(q) || q == nbr(p)) continue;
          const double qpq = (clusters - 2.0) * cluster_dist(p, q) -
                             sx[static_cast<std::size_t>(p)] - sx[static_cast<std::size_t>(q)];
          if (cx == kNone || qpq < best) {
            cx = p;
            cy = q;
            best = qpq;
          }
        }
      }

      // Node pair inside the chosen clusters, treating their members as singletons.
      int x = cx;
      int y = cy;
      if (nbr(cx) != kNone || nbr(cy) != kNone) {
        std::vector<int> candidates_x{cx};
        std::vector<int> candidates_y{cy};
        if (nbr(cx) != kNone) candidates_x.push_back(nbr(cx));
        if (nbr(cy) != kNone) candidates_y.push_back(nbr(cy));
        double m = clusters;
        if (nbr(cx) != kNone) m += 1.0;
        if (nbr(cy) != kNone) m += 1.0;
        std::vector<double> rx, ry;
        for (int a : candidates_x) rx.push_back(node_row_sum(a, cx, cy));
        for (int b : candidates_y) ry.push_back(node_row_sum(b, cx, cy));
        double best_node = 0.0;
        bool first = true;
        for (std::size_t a = 0; a < candidates_x.size(); ++a) {
          for (std::size_t b = 0; b < candidates_y.size(); ++b) {
            const double q = (m - 2.0) * dist(candidates_x[a], candidates_y[b]) - rx[a] - ry[b];
            if (first || q < best_node) {
              x = candidates_x[a];
              y = candidates_y[b];
              best_node = q;
              first = false;
            }
          }
        }
      }

      if (nbr(x) == kNone && nbr(y) == kNone) {
        link(x, y);
        --num_clusters;
      } else if (nbr(x) == kNone) {
        reduce(x, y, nbr(y));
        --num_active;
        --num_clusters;
      } else if (nbr(y) == kNone || num_active == 4) {
        reduce(y, x, nbr(x));
        --num_active;
        --num_clusters;
      } else {
        const int x2 = nbr(x);
        const int y2 = nbr(y);
        const int u = reduce(x2, x, y);
        reduce(u, nbr(u), y2);
        num_active -= 2;
        --num_clusters;
      }
    }
  }

  std::vector<std::size_t> expand() {
    const std::size_t total = slot_.size();
    std::vector<int> next(total, kNone), prev(total, kNone);
    const auto idx = [](int a) { return static_cast<std::size_t>(a); };
    for (std::size_t i = 0; i < active_.size(); ++i) {
      const int a = active_[i];
      const int b = active_[(i + 1) % active_.size()];
      next[idx(a)] = b;
      prev[idx(b)] = a;
    }
    while (!reductions_.empty()) {
      auto [u, v, x, y, z] = reductions_.back();
      reductions_.pop_back();
      if (next[idx(u)] != v) {
        if (next[idx(v)] != u) throw std::logic_error("NeighborNet expansion lost adjacency");
        std::swap(u, v);
        std::swap(x, z);
      }
      const int before = prev[idx(u)];
      const int after = next[idx(v)];
      next[idx(before)] = x;
      prev[idx(x)] = before;
      next[idx(x)] = y;
      prev[idx(y)] = x;
      next[idx(y)] = z;
      prev[idx(z)] = y;
      next[idx(z)] = after;
      prev[idx(after)] = z;
    }
    std::vector<std::size_t> order;
    order.reserve(n_);
    int a = 0;
    do {
      order.push_back(idx(a));
      a = next[idx(a)];
    } while (a != 0 && order.size() <= n_);
    if (order.size() != n_) throw std::logic_error("NeighborNet expansion produced a broken cycle");
    return order;
  }

  std::size_t n_;
  SymmetricMatrix dist_;
  std::vector<std::size_t> slot_;
  std::vector<int> nbr_;
  std::vector<int> active_;
  std::vector<Reduction> reductions_;
};

}  // namespace

Cycle neighbornet_cycle(const SymmetricMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0.0) {
        throw ConfigError("NeighborNet needs finite non-negative distances");
      }
    }
  }
  Cycle cycle;
  if (n <= 3) {
    cycle.order.resize(n);
    std::iota(cycle.order.begin(), cycle.order.end(), std::size_t{0});
    return cycle;
  }
  cycle.order = NeighborNetState(d).run();
  return cycle;
}

Cycle neighbornet_cycle(const BlockDistanceMatrix& dm) {
  return neighbornet_cycle(dm.dissimilarity());
}

}  // namespace alluvial
