#pragma once

// Brute-force reference implementations for the test suite. Everything here
// is written straight from the defining formulas, favors clarity over speed,
// and shares no computation path with the library under test.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/rng.hpp"

namespace oracle {

using commbench::EdgeList;
using commbench::Graph;
using commbench::Partition;
using commbench::Rng;

inline Graph random_graph(int n, double p, Rng& rng) {
  EdgeList edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.real01() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Random spanning tree plus extra density; always connected, never complete
// unless p forces it.
inline Graph random_connected_graph(int n, double p, Rng& rng) {
  EdgeList tree;
  for (int u = 1; u < n; ++u) tree.emplace_back(static_cast<int>(rng.below(u)), u);
  std::sort(tree.begin(), tree.end());
  EdgeList edges = tree;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (std::binary_search(tree.begin(), tree.end(), std::make_pair(u, v))) continue;
      if (rng.real01() < p) edges.emplace_back(u, v);
    }
  return Graph::from_edges(n, edges);
}

inline Partition random_partition(int n, int max_communities, Rng& rng) {
  std::vector<int> membership(n);
  for (int u = 0; u < n; ++u) membership[u] = static_cast<int>(rng.below(max_communities));
  return Partition::from_membership(membership);
}

// Q = (1/2m) Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j), the double-loop form.
inline double modularity(const Graph& g, const Partition& p) {
  double two_m = 2.0 * static_cast<double>(g.edge_count());
  double q = 0.0;
  int n = g.node_count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (p.community_of(i) != p.community_of(j)) continue;
      double a = g.has_edge(i, j) ? 1.0 : 0.0;
      q += a - g.degree(i) * static_cast<double>(g.degree(j)) / two_m;
    }
  return q / two_m;
}

// NMI = -2 Σ N_ij ln(N_ij N / N_i N_j) / [Σ N_i ln(N_i/N) + Σ N_j ln(N_j/N)].
inline double nmi(const Partition& a, const Partition& b) {
  int n = a.node_count();
  std::map<std::pair<int, int>, long long> joint;
  for (int u = 0; u < n; ++u) ++joint[{a.community_of(u), b.community_of(u)}];

  double num = 0.0;
  for (const auto& [cell, count] : joint) {
    double ni = static_cast<double>(a.community(cell.first).size());
    double nj = static_cast<double>(b.community(cell.second).size());
    num += count * std::log(count * static_cast<double>(n) / (ni * nj));
  }
  double den = 0.0;
  for (const auto& rows : a.communities())
    den += rows.size() * std::log(static_cast<double>(rows.size()) / n);
  for (const auto& cols : b.communities())
    den += cols.size() * std::log(static_cast<double>(cols.size()) / n);

  if (den == 0.0) return a.same_clustering(b) ? 1.0 : 0.0;
  return -2.0 * num / den;
}

inline double embeddedness(const Graph& g, const Partition& p, int u) {
  int internal = 0;
  for (int v : g.neighbors(u))
    if (p.community_of(v) == p.community_of(u)) ++internal;
  return static_cast<double>(internal) / g.degree(u);
}

inline long long internal_edges(const Graph& g, const Partition& p, int c) {
  long long m_c = 0;
  for (auto [u, v] : g.edges())
    if (p.community_of(u) == c && p.community_of(v) == c) ++m_c;
  return m_c;
}

inline double scaled_density(const Graph& g, const Partition& p, int c) {
  double n_c = static_cast<double>(p.community(c).size());
  return 2.0 * static_cast<double>(internal_edges(g, p, c)) / (n_c - 1.0);
}

inline double hub_dominance(const Graph& g, const Partition& p, int c) {
  int best = 0;
  for (int u : p.community(c)) {
    int internal = 0;
    for (int v : g.neighbors(u))
      if (p.community_of(v) == c) ++internal;
    best = std::max(best, internal);
  }
  return static_cast<double>(best) / (static_cast<double>(p.community(c).size()) - 1.0);
}

// Mean shortest-path length over all pairs inside the induced subgraph;
// empty when any pair is unreachable.
inline std::optional<double> avg_distance(const Graph& g, const Partition& p, int c) {
  const std::vector<int>& members = p.community(c);
  int k = static_cast<int>(members.size());
  std::vector<int> local(g.node_count(), -1);
  for (int i = 0; i < k; ++i) local[members[i]] = i;

  long long total = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<int> dist(k, -1);
    std::vector<int> frontier{members[i]};
    dist[i] = 0;
    int d = 0;
    while (!frontier.empty()) {
      ++d;
      std::vector<int> next;
      for (int u : frontier)
        for (int v : g.neighbors(u)) {
          int j = local[v];
          if (j >= 0 && dist[j] < 0) {
            dist[j] = d;
            next.push_back(v);
          }
        }
      frontier = std::move(next);
    }
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      if (dist[j] < 0) return std::nullopt;
      total += dist[j];
    }
  }
  return static_cast<double>(total) / (static_cast<double>(k) * (k - 1));
}

// Successor in restricted-growth-string order; `rgs` must hold a valid RGS.
// Returns false after the last partition (all ids distinct).
inline bool next_set_partition(std::vector<int>& rgs) {
  int n = static_cast<int>(rgs.size());
  for (int i = n - 1; i > 0; --i) {
    int cap = 0;
    for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
    if (rgs[i] <= cap) {
      ++rgs[i];
      std::fill(rgs.begin() + i + 1, rgs.end(), 0);
      return true;
    }
  }
  return false;
}

// Maximum-likelihood exponent of a discrete power law truncated to
// [fit_min, fit_max], by grid search over the exact log-likelihood.
inline double mle_power_law_exponent(const std::vector<int>& samples, int fit_min, int fit_max) {
  std::vector<int> kept;
  for (int s : samples)
    if (s >= fit_min && s <= fit_max) kept.push_back(s);

  double sum_log = 0.0;
  for (int s : kept) sum_log += std::log(static_cast<double>(s));

  double best_gamma = 0.0;
  double best_ll = -1e300;
  for (double gamma = 1.05; gamma <= 6.0; gamma += 0.001) {
    double z = 0.0;
    for (int k = fit_min; k <= fit_max; ++k) z += std::pow(static_cast<double>(k), -gamma);
    double ll = -gamma * sum_log - static_cast<double>(kept.size()) * std::log(z);
    if (ll > best_ll) {
      best_ll = ll;
      best_gamma = gamma;
    }
  }
  return best_gamma;
}

// Relabels graph nodes by `perm` (new id of node u is perm[u]).
inline Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(g.edge_count()));
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.node_count(), edges);
}

// Pulls a partition on the permuted graph back to original node ids.
inline Partition unpermute_partition(const Partition& p, const std::vector<int>& perm) {
  std::vector<int> membership(p.node_count());
  for (int u = 0; u < p.node_count(); ++u) membership[u] = p.community_of(perm[u]);
  return Partition::from_membership(membership);
}

}  // namespace oracle
