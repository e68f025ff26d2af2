#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "commbench/graph.hpp"

namespace commbench::detail {

// Weighted multigraph-free adjacency used internally by the aggregating
// optimizers (Louvain-style passes). Self-loop weight is kept per node and
// counts twice in the strength, matching the usual modularity conventions.
struct WeightedGraph {
  int n = 0;
  std::vector<int> offsets;   // CSR over non-self edges
  std::vector<int> nbr;
  std::vector<double> weight;
  std::vector<double> self_w;
  std::vector<double> strength;  // sum_v w(u,v) + 2 self_w(u)
  double total_strength = 0.0;   // sum of strengths = 2W

  static WeightedGraph from_graph(const Graph& g) {
    WeightedGraph w;
    w.n = g.node_count();
    w.offsets.assign(w.n + 1, 0);
    for (int u = 0; u < w.n; ++u) w.offsets[u + 1] = w.offsets[u] + g.degree(u);
    w.nbr.resize(w.offsets.back());
    w.weight.assign(w.offsets.back(), 1.0);
    for (int u = 0; u < w.n; ++u) {
      auto nb = g.neighbors(u);
      std::copy(nb.begin(), nb.end(), w.nbr.begin() + w.offsets[u]);
    }
    w.self_w.assign(w.n, 0.0);
    w.strength.resize(w.n);
    for (int u = 0; u < w.n; ++u) w.strength[u] = static_cast<double>(g.degree(u));
    w.total_strength = 2.0 * static_cast<double>(g.edge_count());
    return w;
  }

  // Collapse each community into one node; parallel edges merge, intra
  // edges become self-loops. `membership` must be dense 0..C-1.
  WeightedGraph aggregate(const std::vector<int>& membership, int community_count) const {
    WeightedGraph out;
    out.n = community_count;
    out.self_w.assign(out.n, 0.0);
    std::vector<std::vector<std::pair<int, double>>> rows(out.n);
    for (int u = 0; u < n; ++u) {
      int cu = membership[u];
      out.self_w[cu] += self_w[u];
      for (int i = offsets[u]; i < offsets[u + 1]; ++i) {
        int cv = membership[nbr[i]];
        if (cv == cu) {
          if (nbr[i] > u) out.self_w[cu] += weight[i];  // count each intra edge once
        } else {
          rows[cu].emplace_back(cv, weight[i]);
        }
      }
    }
    out.offsets.assign(out.n + 1, 0);
    for (int c = 0; c < out.n; ++c) {
      auto& row = rows[c];
      std::sort(row.begin(), row.end());
      int distinct = 0;
      for (std::size_t i = 0; i < row.size();) {
        std::size_t j = i;
        while (j < row.size() && row[j].first == row[i].first) ++j;
        ++distinct;
        i = j;
      }
      out.offsets[c + 1] = out.offsets[c] + distinct;
    }
    out.nbr.resize(out.offsets.back());
    out.weight.resize(out.offsets.back());
    for (int c = 0; c < out.n; ++c) {
      auto& row = rows[c];
      int cursor = out.offsets[c];
      for (std::size_t i = 0; i < row.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < row.size() && row[j].first == row[i].first) sum += row[j++].second;
        out.nbr[cursor] = row[i].first;
        out.weight[cursor] = sum;
        ++cursor;
        i = j;
      }
    }
    out.strength.assign(out.n, 0.0);
    for (int c = 0; c < out.n; ++c) {
      double s = 2.0 * out.self_w[c];
      for (int i = out.offsets[c]; i < out.offsets[c + 1]; ++i) s += out.weight[i];
      out.strength[c] = s;
    }
    out.total_strength = total_strength;
    return out;
  }
};

}  // namespace commbench::detail
