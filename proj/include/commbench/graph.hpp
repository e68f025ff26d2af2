#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commbench {

using EdgeList = std::vector<std::pair<int, int>>;

inline std::string pair_str(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// Simple undirected unweighted graph over dense node ids 0..n-1.
// Immutable after construction; adjacency lists are sorted, edges are stored
// canonically (u < v, lexicographically sorted).
class Graph {
 public:
  Graph() = default;

  // Validating constructor: rejects out-of-range ids, self-loops and
  // duplicate edges, each reported with the offending pair.
  static Graph from_edges(int n, const EdgeList& edge_list) {
    if (n < 0) throw std::invalid_argument("graph: negative node count");
    EdgeList canon;
    canon.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("graph: node id out of range in edge " + pair_str(u, v));
      if (u == v) throw std::invalid_argument("graph: self-loop " + pair_str(u, v));
      canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    auto dup = std::adjacent_find(canon.begin(), canon.end());
    if (dup != canon.end())
      throw std::invalid_argument("graph: duplicate edge " + pair_str(dup->first, dup->second));
    return from_canonical(n, std::move(canon));
  }

  // Fast path for internally produced edge sets: pairs must already be
  // u < v, sorted, unique, in range.
  static Graph from_canonical(int n, EdgeList edges) {
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.build_adjacency_();
    return g;
  }

  int node_count() const { return n_; }
  long long edge_count() const { return static_cast<long long>(edges_.size()); }

  int degree(int u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const int> neighbors(int u) const {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }

  bool has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  const EdgeList& edges() const { return edges_; }

 private:
  void build_adjacency_() {
    offsets_.assign(n_ + 1, 0);
    for (auto [u, v] : edges_) {
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (int i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(2 * edges_.size());
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges_) {
      adj_[cursor[u]++] = v;
      adj_[cursor[v]++] = u;
    }
    for (int u = 0; u < n_; ++u)
      std::sort(adj_.begin() + offsets_[u], adj_.begin() + offsets_[u + 1]);
  }

  int n_ = 0;
  EdgeList edges_;
  std::vector<int> offsets_{0};
  std::vector<int> adj_;
};

inline Graph build_graph(int n, const EdgeList& edge_list) { return Graph::from_edges(n, edge_list); }

// Total mapping node -> community id. Community ids are contiguous 0..C-1
// with no empty community; arbitrary input labels are remapped by first
// appearance, which makes the representation canonical under relabeling.
class Partition {
 public:
  Partition() = default;

  static Partition from_membership(const std::vector<int>& raw) {
    Partition p;
    p.membership_.resize(raw.size());
    std::unordered_map<int, int> remap;
    for (std::size_t u = 0; u < raw.size(); ++u) {
      auto [it, inserted] = remap.try_emplace(raw[u], static_cast<int>(remap.size()));
      p.membership_[u] = it->second;
    }
    p.build_communities_();
    return p;
  }

  // Fast path: labels already contiguous 0..C-1 with no empty community.
  static Partition from_dense_membership(std::vector<int> membership, int community_count) {
    Partition p;
    p.membership_ = std::move(membership);
    p.communities_.resize(community_count);
    for (std::size_t u = 0; u < p.membership_.size(); ++u)
      p.communities_[p.membership_[u]].push_back(static_cast<int>(u));
    return p;
  }

  int node_count() const { return static_cast<int>(membership_.size()); }
  int community_count() const { return static_cast<int>(communities_.size()); }
  int community_of(int u) const { return membership_[u]; }
  const std::vector<int>& membership() const { return membership_; }
  const std::vector<std::vector<int>>& communities() const { return communities_; }
  const std::vector<int>& community(int c) const { return communities_[c]; }

  // First-appearance canonical form; two partitions are equal up to
  // community relabeling iff their canonical memberships are equal.
  std::vector<int> canonical_membership() const {
    std::vector<int> out(membership_.size());
    std::vector<int> remap(communities_.size(), -1);
    int next = 0;
    for (std::size_t u = 0; u < membership_.size(); ++u) {
      int c = membership_[u];
      if (remap[c] < 0) remap[c] = next++;
      out[u] = remap[c];
    }
    return out;
  }

  bool same_clustering(const Partition& other) const {
    return node_count() == other.node_count() &&
           canonical_membership() == other.canonical_membership();
  }

 private:
  void build_communities_() {
    int c_count = 0;
    for (int c : membership_) c_count = std::max(c_count, c + 1);
    communities_.assign(c_count, {});
    for (std::size_t u = 0; u < membership_.size(); ++u)
      communities_[membership_[u]].push_back(static_cast<int>(u));
  }

  std::vector<int> membership_;
  std::vector<std::vector<int>> communities_;
};

// Number of links from u to nodes of its own community.
inline int internal_degree(const Graph& g, const Partition& p, int u) {
  int c = p.community_of(u);
  int k_int = 0;
  for (int v : g.neighbors(u))
    if (p.community_of(v) == c) ++k_int;
  return k_int;
}

inline int external_degree(const Graph& g, const Partition& p, int u) {
  return g.degree(u) - internal_degree(g, p, u);
}

// One community per connected component. Components are labeled in order of
// their lowest node id, so the result is independent of edge order and
// stable under node relabeling up to community-id renaming.
inline Partition connected_components(const Graph& g) {
  int n = g.node_count();
  std::vector<int> comp(n, -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
    }
    ++c;
  }
  return Partition::from_dense_membership(std::move(comp), c);
}

// Shortest-path lengths restricted to the subgraph induced by `nodes`;
// paths may not leave the set. dist[i][j] == -1 flags unreachable pairs.
struct DistanceTable {
  std::vector<int> nodes;              // sorted
  std::vector<std::vector<int>> dist;  // dist[i][j] for nodes[i], nodes[j]
};

inline DistanceTable pairwise_distances_within(const Graph& g, const std::vector<int>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("pairwise_distances_within: empty node set");
  DistanceTable t;
  t.nodes = nodes;
  std::sort(t.nodes.begin(), t.nodes.end());
  int k = static_cast<int>(t.nodes.size());
  std::vector<int> local(g.node_count(), -1);
  for (int i = 0; i < k; ++i) local[t.nodes[i]] = i;

  t.dist.assign(k, std::vector<int>(k, -1));
  std::vector<int> frontier, next;
  for (int i = 0; i < k; ++i) {
    auto& row = t.dist[i];
    row[i] = 0;
    frontier.assign(1, t.nodes[i]);
    int d = 0;
    while (!frontier.empty()) {
      ++d;
      next.clear();
      for (int u : frontier)
        for (int v : g.neighbors(u)) {
          int j = local[v];
          if (j >= 0 && row[j] < 0) {
            row[j] = d;
            next.push_back(v);
          }
        }
      frontier.swap(next);
    }
  }
  return t;
}

}  // namespace commbench
