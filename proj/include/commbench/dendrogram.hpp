#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "commbench/graph.hpp"

namespace commbench {

// Agglomerative merge sequence. Each step merges two live communities (the
// merged community keeps the smaller id) and records the objective value of
// the flat partition after the merge. `best_cut` is the number of merges in
// the prefix maximizing the objective; 0 means the all-singletons start.
struct MergeDendrogram {
  struct Step {
    int a = 0;
    int b = 0;
    double objective = 0.0;
  };
  std::vector<Step> steps;
  int best_cut = 0;
  double best_objective = 0.0;
};

// Flat partition obtained by replaying the first `cut` merges on n initial
// singleton communities.
inline Partition partition_at_cut(int n, const MergeDendrogram& dendrogram, int cut) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < cut; ++i) {
    int ra = find(dendrogram.steps[i].a);
    int rb = find(dendrogram.steps[i].b);
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> labels(n);
  for (int u = 0; u < n; ++u) labels[u] = find(u);
  return Partition::from_membership(labels);
}

}  // namespace commbench
