#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/weighted_graph.hpp"

namespace commbench {

namespace detail {

inline double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

// Two-level map equation in bits. Visit rates are the stationary
// distribution of the undirected random walk (proportional to degree),
// module exit rates follow from the cross-edge flow.
inline double map_equation(const Graph& g, const Partition& p) {
  if (g.node_count() != p.node_count())
    throw std::invalid_argument("map_equation: partition does not match graph");
  if (g.edge_count() == 0) throw std::invalid_argument("map_equation: graph has no edges");

  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  const int c_count = p.community_count();
  std::vector<double> cut(c_count, 0.0), vol(c_count, 0.0);
  for (int u = 0; u < g.node_count(); ++u) {
    int cu = p.community_of(u);
    vol[cu] += g.degree(u);
    for (int v : g.neighbors(u)) {
      if (p.community_of(v) != cu) cut[cu] += 1.0;
    }
  }

  double sum_q = 0.0, sum_plogp_q = 0.0, sum_plogp_qp = 0.0;
  for (int c = 0; c < c_count; ++c) {
    double qc = cut[c] / two_m;
    sum_q += qc;
    sum_plogp_q += detail::plogp(qc);
    sum_plogp_qp += detail::plogp(qc + vol[c] / two_m);
  }
  double node_term = 0.0;
  for (int u = 0; u < g.node_count(); ++u) node_term += detail::plogp(g.degree(u) / two_m);

  return detail::plogp(sum_q) - 2.0 * sum_plogp_q + sum_plogp_qp - node_term;
}

struct InfomapResult {
  Partition partition;
  double codelength = 0.0;
  // codelength of the flattened partition after each improving pass
  std::vector<double> pass_codelength;
};

namespace detail {

// One local-move phase minimizing the map equation on a level graph.
// Same sweep discipline as the Louvain phase: ascending node id, best
// strictly improving move, lowest community id on ties.
inline long long infomap_local_move(const WeightedGraph& g, std::vector<int>& comm) {
  const double two_w = g.total_strength;
  const double inv = 1.0 / two_w;

  std::vector<double> cut(g.n, 0.0), vol(g.n, 0.0);
  for (int u = 0; u < g.n; ++u) {
    vol[comm[u]] += g.strength[u];
    for (int i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
      if (comm[g.nbr[i]] != comm[u]) cut[comm[u]] += g.weight[i];
    }
  }
  double sum_q = 0.0;
  for (int c = 0; c < g.n; ++c) sum_q += cut[c] * inv;

  std::vector<double> link_w(g.n, 0.0);
  std::vector<int> touched;
  touched.reserve(64);

  long long total_moves = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int u = 0; u < g.n; ++u) {
      const int cu = comm[u];
      touched.clear();
      for (int i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
        int cv = comm[g.nbr[i]];
        if (link_w[cv] == 0.0 &&
            std::find(touched.begin(), touched.end(), cv) == touched.end()) {
          touched.push_back(cv);
        }
        link_w[cv] += g.weight[i];
      }
      if (std::find(touched.begin(), touched.end(), cu) == touched.end()) touched.push_back(cu);

      const double s_links = g.strength[u] - 2.0 * g.self_w[u];
      // state with u lifted out of its community
      const double cut_d = cut[cu] - s_links + 2.0 * link_w[cu];
      const double vol_d = vol[cu] - g.strength[u];
      const double base_q = sum_q + (cut_d - cut[cu]) * inv;
      const double fixed = -2.0 * (plogp(cut_d * inv) - plogp(cut[cu] * inv)) +
                           plogp((cut_d + vol_d) * inv) - plogp((cut[cu] + vol[cu]) * inv);

      double best_delta = 0.0;
      int best_comm = cu;
      for (int c : touched) {
        if (c == cu) continue;
        double cut_c = cut[c] + s_links - 2.0 * link_w[c];
        double vol_c = vol[c] + g.strength[u];
        double new_q = base_q + (cut_c - cut[c]) * inv;
        double delta = fixed + plogp(new_q) - plogp(sum_q) -
                       2.0 * (plogp(cut_c * inv) - plogp(cut[c] * inv)) +
                       plogp((cut_c + vol_c) * inv) - plogp((cut[c] + vol[c]) * inv);
        if (delta < best_delta - 1e-12 ||
            (delta < best_delta + 1e-12 && delta < -1e-12 && c < best_comm)) {
          best_delta = delta;
          best_comm = c;
        }
      }
      if (best_comm != cu) {
        double cut_c = cut[best_comm] + s_links - 2.0 * link_w[best_comm];
        sum_q += (cut_d - cut[cu]) * inv + (cut_c - cut[best_comm]) * inv;
        cut[cu] = cut_d;
        vol[cu] = vol_d;
        cut[best_comm] = cut_c;
        vol[best_comm] += g.strength[u];
        comm[u] = best_comm;
        moved = true;
        ++total_moves;
      }
      for (int c : touched) link_w[c] = 0.0;
    }
  }
  return total_moves;
}

}  // namespace detail

// InfoMap-style codelength minimization: Louvain-style local moves and
// aggregation passes, repeated until the improvement drops below 1e-10.
// The optimizer sweeps ids in order and breaks ties deterministically,
// so the seed does not affect the result; it is part of the signature
// for interface stability.
inline InfomapResult infomap(const Graph& g, std::uint64_t seed = 0) {
  (void)seed;
  if (g.edge_count() == 0) throw std::invalid_argument("infomap: graph has no edges");
  const int n = g.node_count();

  detail::WeightedGraph level = detail::WeightedGraph::from_graph(g);
  std::vector<int> node_to_comm(n);
  for (int u = 0; u < n; ++u) node_to_comm[u] = u;

  InfomapResult result{Partition::from_membership(node_to_comm), 0.0, {}};
  double prev_l = map_equation(g, result.partition);
  result.codelength = prev_l;

  while (true) {
    std::vector<int> comm(level.n);
    for (int c = 0; c < level.n; ++c) comm[c] = c;
    long long moves = detail::infomap_local_move(level, comm);
    if (moves == 0) break;

    std::vector<int> relabel(level.n, -1);
    int next = 0;
    for (int c = 0; c < level.n; ++c) {
      if (relabel[comm[c]] < 0) relabel[comm[c]] = next++;
      comm[c] = relabel[comm[c]];
    }
    for (int u = 0; u < n; ++u) node_to_comm[u] = comm[node_to_comm[u]];

    Partition flat = Partition::from_membership(node_to_comm);
    double l = map_equation(g, flat);
    if (l >= prev_l - 1e-10) break;
    result.partition = std::move(flat);
    result.codelength = l;
    result.pass_codelength.push_back(l);
    prev_l = l;

    if (next == level.n) break;
    level = level.aggregate(comm, next);
  }

  // the local search can stall in a singleton state that codes worse than
  // the trivial partition on small dense graphs; never return worse than
  // one module
  Partition single = Partition::from_membership(std::vector<int>(n, 0));
  double single_l = map_equation(g, single);
  if (single_l < result.codelength - 1e-12) {
    result.partition = std::move(single);
    result.codelength = single_l;
    result.pass_codelength.push_back(single_l);
  }
  return result;
}

}  // namespace commbench
