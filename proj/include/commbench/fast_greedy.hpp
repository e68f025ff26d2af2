#pragma once

#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "commbench/dendrogram.hpp"
#include "commbench/graph.hpp"

namespace commbench {

struct FastGreedyResult {
  Partition partition;
  MergeDendrogram dendrogram;
};

// Greedy agglomerative modularity optimization (CNM with a lazily
// invalidated max-heap of pairwise dQ values). Starting from singletons,
// the pair of connected communities with maximal dQ is merged (ties broken
// toward the lowest id pair, making runs deterministic); the returned
// partition is the dendrogram cut with maximal modularity. Components never
// share an edge, so each connected component is agglomerated independently
// within the single global merge sequence.
inline FastGreedyResult fast_greedy(const Graph& g) {
  long long m = g.edge_count();
  if (m < 1) throw std::invalid_argument("fast_greedy: graph has no edges");
  int n = g.node_count();
  double inv_m = 1.0 / static_cast<double>(m);

  std::vector<double> a(n);  // degree share d_c / 2m
  for (int u = 0; u < n; ++u) a[u] = g.degree(u) / (2.0 * m);

  // dq[c][x] for live adjacent pairs; symmetric.
  std::vector<std::map<int, double>> dq(n);
  for (auto [u, v] : g.edges()) {
    double val = inv_m - 2.0 * a[u] * a[v];
    dq[u][v] = val;
    dq[v][u] = val;
  }

  struct Entry {
    double dq;
    int a, b;          // a < b
    int va, vb;        // community versions at push time
  };
  struct Worse {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.dq != y.dq) return x.dq < y.dq;
      if (x.a != y.a) return x.a > y.a;
      return x.b > y.b;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap;
  std::vector<int> version(n, 0);
  auto push_pair = [&](int x, int y, double val) {
    int lo = std::min(x, y), hi = std::max(x, y);
    heap.push({val, lo, hi, version[lo], version[hi]});
  };
  for (int u = 0; u < n; ++u)
    for (auto& [v, val] : dq[u])
      if (u < v) push_pair(u, v, val);

  std::vector<bool> alive(n, true);
  double q = 0.0;
  for (int u = 0; u < n; ++u) q -= a[u] * a[u];  // all-singletons modularity

  MergeDendrogram dendro;
  dendro.best_cut = 0;
  dendro.best_objective = q;
  std::vector<int> rep(n);  // community id -> representative for membership replay
  for (int u = 0; u < n; ++u) rep[u] = u;

  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (!alive[e.a] || !alive[e.b]) continue;
    if (version[e.a] != e.va || version[e.b] != e.vb) continue;

    int keep = e.a, gone = e.b;  // keep the smaller id
    q += e.dq;
    dendro.steps.push_back({keep, gone, q});
    if (q > dendro.best_objective) {
      dendro.best_objective = q;
      dendro.best_cut = static_cast<int>(dendro.steps.size());
    }

    // Fold `gone`'s adjacency into `keep` with the CNM update rules.
    dq[keep].erase(gone);
    dq[gone].erase(keep);
    for (auto& [x, val_gone] : dq[gone]) {
      auto it = dq[keep].find(x);
      double merged;
      if (it != dq[keep].end())
        merged = it->second + val_gone;          // x adjacent to both
      else
        merged = val_gone - 2.0 * a[keep] * a[x];  // x adjacent to gone only
      dq[keep][x] = merged;
      dq[x].erase(gone);
      dq[x][keep] = merged;
    }
    for (auto& [x, val] : dq[keep]) {
      auto it = dq[gone].find(x);
      if (it == dq[gone].end() && x != gone) {  // x adjacent to keep only
        double merged = val - 2.0 * a[gone] * a[x];
        dq[keep][x] = merged;
        dq[x][keep] = merged;
      }
    }
    dq[gone].clear();
    alive[gone] = false;
    a[keep] += a[gone];
    ++version[keep];
    for (auto& [x, val] : dq[keep]) push_pair(keep, x, val);
  }

  FastGreedyResult res;
  res.dendrogram = std::move(dendro);
  res.partition = partition_at_cut(n, res.dendrogram, res.dendrogram.best_cut);
  return res;
}

}  // namespace commbench
