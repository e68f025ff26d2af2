#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/modularity.hpp"
#include "commbench/weighted_graph.hpp"

namespace commbench {

struct LouvainResult {
  Partition partition;
  // Modularity of the flattened partition after each completed pass.
  // Strictly increasing; the final pass that finds no improvement is
  // not recorded.
  std::vector<double> pass_modularity;
};

namespace detail {

// One local-move phase. Nodes are visited in ascending id order and moved
// to the neighboring community with the largest positive modularity gain
// (lowest community id on ties). Returns the number of accepted moves.
inline long long louvain_local_move(const WeightedGraph& g, std::vector<int>& comm) {
  const double two_w = g.total_strength;
  std::vector<double> tot(g.n, 0.0);
  for (int u = 0; u < g.n; ++u) tot[comm[u]] += g.strength[u];

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
      touched.push_back(cu);
      for (int i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
        int cv = comm[g.nbr[i]];
        if (link_w[cv] == 0.0 && cv != cu &&
            std::find(touched.begin(), touched.end(), cv) == touched.end()) {
          touched.push_back(cv);
        }
        link_w[cv] += g.weight[i];
      }
      if (std::find(touched.begin(), touched.end(), cu) == touched.end()) touched.push_back(cu);

      tot[cu] -= g.strength[u];
      const double base = link_w[cu];  // links from u into its own community, u excluded
      double best_gain = 0.0;
      int best_comm = cu;
      for (int c : touched) {
        double gain = (link_w[c] - base) / (two_w / 2.0) -
                      g.strength[u] * (tot[c] - tot[cu]) / (two_w * two_w / 2.0);
        if (gain > best_gain + 1e-12 ||
            (gain > best_gain - 1e-12 && gain > 1e-12 && c < best_comm)) {
          best_gain = gain;
          best_comm = c;
        }
      }
      tot[best_comm] += g.strength[u];
      if (best_comm != cu) {
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

// Louvain multilevel modularity optimization. Deterministic: nodes are
// swept in ascending id order and ties go to the lowest community id.
inline LouvainResult louvain(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("louvain: graph has no edges");
  const int n = g.node_count();

  detail::WeightedGraph level = detail::WeightedGraph::from_graph(g);
  std::vector<int> node_to_comm(n);  // original node -> flattened community
  for (int u = 0; u < n; ++u) node_to_comm[u] = u;

  LouvainResult result{Partition::from_membership(node_to_comm), {}};
  double prev_q = modularity(g, result.partition);

  while (true) {
    std::vector<int> comm(level.n);
    for (int c = 0; c < level.n; ++c) comm[c] = c;
    long long moves = detail::louvain_local_move(level, comm);
    if (moves == 0) break;

    std::vector<int> relabel(level.n, -1);
    int next = 0;
    for (int c = 0; c < level.n; ++c) {
      if (relabel[comm[c]] < 0) relabel[comm[c]] = next++;
      comm[c] = relabel[comm[c]];
    }
    for (int u = 0; u < n; ++u) node_to_comm[u] = comm[node_to_comm[u]];

    Partition flat = Partition::from_membership(node_to_comm);
    double q = modularity(g, flat);
    if (q <= prev_q + 1e-12) break;
    result.partition = std::move(flat);
    result.pass_modularity.push_back(q);
    prev_q = q;

    if (next == level.n) break;  // no coarsening left
    level = level.aggregate(comm, next);
  }
  return result;
}

}  // namespace commbench
