#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "commbench/dendrogram.hpp"
#include "commbench/graph.hpp"

namespace commbench {

struct WalktrapResult {
  Partition partition;
  MergeDendrogram dendrogram;
};

namespace detail {

// Row u of P^t where P = D^-1 A, returned scaled by 1/sqrt(d_w) per entry
// so that r^2 distances reduce to squared euclidean distances.
inline void walk_row(const Graph& g, int u, int t, std::vector<double>& cur,
                     std::vector<double>& nxt, std::vector<float>& out) {
  const int n = g.node_count();
  cur.assign(n, 0.0);
  cur[u] = 1.0;
  for (int step = 0; step < t; ++step) {
    nxt.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (cur[i] == 0.0) continue;
      double w = cur[i] / g.degree(i);
      for (int v : g.neighbors(i)) nxt[v] += w;
    }
    std::swap(cur, nxt);
  }
  out.resize(n);
  for (int w = 0; w < n; ++w) {
    out[w] = static_cast<float>(g.degree(w) > 0 ? cur[w] / std::sqrt(double(g.degree(w)))
                                                : 0.0);
  }
}

inline double sq_dist(const std::vector<float>& a, const std::vector<float>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = double(a[i]) - double(b[i]);
    s += d * d;
  }
  return s;
}

}  // namespace detail

// Walktrap community detection (random walks of length t, Ward-style
// agglomeration on walk distances, cut chosen by peak modularity).
// Deterministic: the pending merge with the smallest delta-sigma wins,
// ties broken by the lowest community id pair. Isolated nodes stay
// singletons.
inline WalktrapResult walktrap(const Graph& g, int t = 4) {
  if (t < 1) throw std::invalid_argument("walktrap: t must be >= 1");
  const long long m = g.edge_count();
  if (m == 0) throw std::invalid_argument("walktrap: graph has no edges");
  const int n = g.node_count();
  const double inv_m = 1.0 / static_cast<double>(m);

  std::vector<std::vector<float>> vec(n);
  {
    std::vector<double> cur, nxt;
    for (int u = 0; u < n; ++u) {
      if (g.degree(u) > 0) detail::walk_row(g, u, t, cur, nxt, vec[u]);
    }
  }

  struct Nbr {
    long long cross = 0;  // edges between the two communities
    double dsig = 0.0;
  };
  std::vector<std::map<int, Nbr>> adj(n);
  std::vector<int> size(n, 1);
  std::vector<double> a(n);  // degree fraction, as in modularity
  for (int u = 0; u < n; ++u) a[u] = g.degree(u) / (2.0 * m);

  for (const auto& [u, v] : g.edges()) {
    double ds = detail::sq_dist(vec[u], vec[v]) / (2.0 * n);
    adj[u][v] = {1, ds};
    adj[v][u] = {1, ds};
  }

  struct Entry {
    double dsig;
    int a, b;
    std::uint64_t va, vb;
  };
  struct Worse {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.dsig != y.dsig) return x.dsig > y.dsig;  // min delta-sigma first
      if (x.a != y.a) return x.a > y.a;
      return x.b > y.b;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap;
  std::vector<std::uint64_t> version(n, 0);
  for (int u = 0; u < n; ++u) {
    for (const auto& [v, nb] : adj[u]) {
      if (u < v) heap.push({nb.dsig, u, v, version[u], version[v]});
    }
  }

  MergeDendrogram dend;
  double q = 0.0;
  for (int u = 0; u < n; ++u) q -= a[u] * a[u];
  double best_q = q;
  int best_cut = 0;

  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (version[e.a] != e.va || version[e.b] != e.vb) continue;

    const int keep = e.a;
    const int gone = e.b;
    const double ds_kg = adj[keep].at(gone).dsig;
    const long long cross_kg = adj[keep].at(gone).cross;

    q += cross_kg * inv_m - 2.0 * a[keep] * a[gone];
    dend.steps.push_back({keep, gone, q});
    if (q > best_q) {
      best_q = q;
      best_cut = static_cast<int>(dend.steps.size());
    }

    const int s1 = size[keep];
    const int s2 = size[gone];
    // merged walk vector: size-weighted average
    {
      auto& vk = vec[keep];
      const auto& vg = vec[gone];
      const double w1 = double(s1) / (s1 + s2);
      const double w2 = double(s2) / (s1 + s2);
      for (int w = 0; w < n; ++w) vk[w] = static_cast<float>(w1 * vk[w] + w2 * vg[w]);
    }
    vec[gone] = {};

    adj[keep].erase(gone);
    adj[gone].erase(keep);

    for (const auto& [x, nb_gone] : adj[gone]) {
      auto it = adj[keep].find(x);
      if (it != adj[keep].end()) {
        it->second.cross += nb_gone.cross;
        it->second.dsig = ((s1 + size[x]) * it->second.dsig + (s2 + size[x]) * nb_gone.dsig -
                           size[x] * ds_kg) /
                          (s1 + s2 + size[x]);
      } else {
        double r2 = detail::sq_dist(vec[keep], vec[x]);
        double ds = (double(s1 + s2) * size[x] / (s1 + s2 + size[x])) * r2 / n;
        adj[keep][x] = {nb_gone.cross, ds};
      }
      adj[x].erase(gone);
    }
    for (auto& [x, nb] : adj[keep]) {
      auto it = adj[gone].find(x);
      if (it == adj[gone].end()) {
        double r2 = detail::sq_dist(vec[keep], vec[x]);
        nb.dsig = (double(s1 + s2) * size[x] / (s1 + s2 + size[x])) * r2 / n;
      }
      adj[x][keep] = nb;
    }
    adj[gone].clear();

    size[keep] = s1 + s2;
    a[keep] += a[gone];
    ++version[keep];
    ++version[gone];
    for (const auto& [x, nb] : adj[keep]) {
      heap.push({nb.dsig, std::min(keep, x), std::max(keep, x), version[std::min(keep, x)],
                 version[std::max(keep, x)]});
    }
  }

  dend.best_cut = best_cut;
  dend.best_objective = best_q;
  return {partition_at_cut(n, dend, best_cut), dend};
}

}  // namespace commbench
