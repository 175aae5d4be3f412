#include "alluvial/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "alluvial/errors.hpp"

namespace alluvial {
namespace {

constexpr int kMaxPasses = 1000;

// Weighted graph where adj[i] holds (neighbour, weight) with the self loop
// (if any) carrying Σ of both orientations of internal edges.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> degree;
  double total = 0.0;  // Σ degree = 2·(edge weight)

  void finalize() {
    degree.assign(adj.size(), 0.0);
    total = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      std::sort(adj[i].begin(), adj[i].end());
      for (const auto& [j, w] : adj[i]) degree[i] += w;
      total += degree[i];
    }
  }
};

// One round of local moving. Returns true when any node changed community.
bool local_moving(const LevelGraph& g, std::vector<std::size_t>& community, double resolution) {
  const std::size_t n = g.adj.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[community[i]] += g.degree[i];

  bool any_move = false;
  bool moved = true;
  std::vector<double> link_to(n, 0.0);
  std::vector<std::size_t> touched;
  for (int pass = 0; moved && pass < kMaxPasses; ++pass) {
    moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t own = community[i];
      touched.clear();
      touched.push_back(own);
      for (const auto& [j, w] : g.adj[i]) {
        if (j == i) continue;
        const std::size_t c = community[j];
        if (link_to[c] == 0.0 && c != own) touched.push_back(c);
        link_to[c] += w;
      }
      tot[own] -= g.degree[i];
      const auto gain = [&](std::size_t c) {
        return link_to[c] - resolution * tot[c] * g.degree[i] / g.total;
      };
      std::size_t best = own;
      double best_gain = gain(own);
      for (std::size_t c : touched) {
        const double v = gain(c);
        if (v > best_gain + 1e-12 * std::max(1.0, std::abs(best_gain))) {
          best = c;
          best_gain = v;
        }
      }
      tot[best] += g.degree[i];
      for (std::size_t c : touched) link_to[c] = 0.0;
      if (best != own) {
        community[i] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Renumbers communities densely in order of their lowest member.
std::size_t renumber(std::vector<std::size_t>& community) {
  std::map<std::size_t, std::size_t> index;
  for (auto& c : community) {
    auto [it, inserted] = index.try_emplace(c, index.size());
    c = it->second;
  }
  return index.size();
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::size_t>& community,
                     std::size_t count) {
  std::vector<std::map<std::size_t, double>> merged(count);
  for (std::size_t i = 0; i < g.adj.size(); ++i) {
    for (const auto& [j, w] : g.adj[i]) merged[community[i]][community[j]] += w;
  }
  LevelGraph out;
  out.adj.resize(count);
  for (std::size_t c = 0; c < count; ++c) {
    for (const auto& [d, w] : merged[c]) out.adj[c].emplace_back(d, w);
  }
  out.finalize();
  return out;
}

}  // namespace

std::vector<std::uint32_t> louvain_communities(std::size_t nodes,
                                               const std::vector<WeightedEdge>& edges,
                                               double resolution) {
  if (!(resolution > 0.0)) throw ConfigError("cluster resolution must be positive");
  LevelGraph g;
  g.adj.resize(nodes);
  for (const auto& e : edges) {
    if (e.a >= nodes || e.b >= nodes) throw ConfigError("edge endpoint out of range");
    if (e.weight < 0.0) throw ConfigError("negative edge weight");
    if (e.weight == 0.0) continue;
    g.adj[e.a].emplace_back(e.b, e.weight);
    g.adj[e.b].emplace_back(e.a, e.weight);
  }
  g.finalize();

  std::vector<std::size_t> membership(nodes);
  for (std::size_t i = 0; i < nodes; ++i) membership[i] = i;
  if (g.total == 0.0) {
    return std::vector<std::uint32_t>(membership.begin(), membership.end());
  }

  while (true) {
    std::vector<std::size_t> level(g.adj.size());
    for (std::size_t i = 0; i < level.size(); ++i) level[i] = i;
    if (!local_moving(g, level, resolution)) break;
    const std::size_t count = renumber(level);
    for (auto& m : membership) m = level[m];
    if (count == g.adj.size()) break;
    g = aggregate(g, level, count);
  }
  renumber(membership);
  return std::vector<std::uint32_t>(membership.begin(), membership.end());
}

double modularity(std::size_t nodes, const std::vector<WeightedEdge>& edges,
                  const std::vector<std::uint32_t>& community, double resolution) {
  std::vector<double> degree(nodes, 0.0);
  double total = 0.0;
  double internal = 0.0;
  for (const auto& e : edges) {
    degree[e.a] += e.weight;
    degree[e.b] += e.weight;
    total += 2.0 * e.weight;
    if (community[e.a] == community[e.b]) internal += 2.0 * e.weight;
  }
  if (total == 0.0) return 0.0;
  std::map<std::uint32_t, double> tot;
  for (std::size_t i = 0; i < nodes; ++i) tot[community[i]] += degree[i];
  double q = internal / total;
  for (const auto& [c, t] : tot) q -= resolution * (t / total) * (t / total);
  return q;
}

}  // namespace alluvial
