#pragma once

#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"

namespace commbench {

// Newman-Girvan modularity Q = sum_c [ m_c/m - (d_c/2m)^2 ].
inline double modularity(const Graph& g, const Partition& p) {
  long long m = g.edge_count();
  if (m < 1) throw std::invalid_argument("modularity: undefined on edgeless graph");
  std::vector<long long> internal(p.community_count(), 0);
  std::vector<long long> total(p.community_count(), 0);
  for (auto [u, v] : g.edges()) {
    if (p.community_of(u) == p.community_of(v)) internal[p.community_of(u)] += 1;
  }
  for (int u = 0; u < g.node_count(); ++u) total[p.community_of(u)] += g.degree(u);

  double q = 0.0;
  double two_m = 2.0 * static_cast<double>(m);
  for (int c = 0; c < p.community_count(); ++c) {
    double frac = static_cast<double>(internal[c]) / static_cast<double>(m);
    double share = static_cast<double>(total[c]) / two_m;
    q += frac - share * share;
  }
  return q;
}

}  // namespace commbench
