#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "commbench/fast_greedy.hpp"
#include "commbench/graph.hpp"
#include "commbench/louvain.hpp"
#include "commbench/map_equation.hpp"
#include "commbench/markov_cluster.hpp"
#include "commbench/walktrap.hpp"

namespace commbench {

// Table 1 row order.
enum class Algorithm { Louvain, FastGreedy, MarkovCluster, InfoMap, Walktrap };

inline constexpr std::array<Algorithm, 5> all_algorithms = {
    Algorithm::Louvain, Algorithm::FastGreedy, Algorithm::MarkovCluster, Algorithm::InfoMap,
    Algorithm::Walktrap};

inline const char* algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::Louvain: return "louvain";
    case Algorithm::FastGreedy: return "fastgreedy";
    case Algorithm::MarkovCluster: return "markovcluster";
    case Algorithm::InfoMap: return "infomap";
    case Algorithm::Walktrap: return "walktrap";
  }
  throw std::logic_error("algorithm_id: bad enum value");
}

inline const char* algorithm_label(Algorithm a) {
  switch (a) {
    case Algorithm::Louvain: return "Louvain";
    case Algorithm::FastGreedy: return "Fast Greedy";
    case Algorithm::MarkovCluster: return "MarkovCluster";
    case Algorithm::InfoMap: return "InfoMap";
    case Algorithm::Walktrap: return "Walktrap";
  }
  throw std::logic_error("algorithm_label: bad enum value");
}

inline Algorithm algorithm_from_id(const std::string& id) {
  for (Algorithm a : all_algorithms) {
    if (id == algorithm_id(a)) return a;
  }
  std::string msg = "unknown algorithm \"" + id + "\"; valid names:";
  for (Algorithm a : all_algorithms) msg += std::string(" ") + algorithm_id(a);
  throw std::invalid_argument(msg);
}

struct DetectionOptions {
  int walktrap_t = 4;
  MarkovClusterOptions mcl;
  std::uint64_t infomap_seed = 0;
};

namespace detail {

template <typename Solver>
Partition run_per_component(const Graph& g, Solver&& solve) {
  Partition comps = connected_components(g);
  if (comps.community_count() <= 1) return solve(g);

  std::vector<int> membership(g.node_count(), -1);
  int next_comm = 0;
  std::vector<int> local_id(g.node_count(), -1);
  for (int c = 0; c < comps.community_count(); ++c) {
    const auto& members = comps.community(c);
    if (members.size() == 1) {
      membership[members[0]] = next_comm++;
      continue;
    }
    for (std::size_t i = 0; i < members.size(); ++i) local_id[members[i]] = static_cast<int>(i);
    EdgeList edges;
    for (int u : members) {
      for (int v : g.neighbors(u)) {
        if (v > u) edges.emplace_back(local_id[u], local_id[v]);
      }
    }
    Graph sub = Graph::from_canonical(static_cast<int>(members.size()), std::move(edges));
    Partition local = solve(sub);
    for (std::size_t i = 0; i < members.size(); ++i) {
      membership[members[i]] = next_comm + local.community_of(static_cast<int>(i));
    }
    next_comm += local.community_count();
  }
  return Partition::from_membership(membership);
}

}  // namespace detail

// Canonical entry point: runs the chosen algorithm per connected component
// and unions the results with disjoint community ids.
inline Partition run_algorithm(const Graph& g, Algorithm alg, const DetectionOptions& opt = {}) {
  switch (alg) {
    case Algorithm::Louvain:
      return detail::run_per_component(g, [](const Graph& s) { return louvain(s).partition; });
    case Algorithm::FastGreedy:
      return detail::run_per_component(g, [](const Graph& s) { return fast_greedy(s).partition; });
    case Algorithm::MarkovCluster:
      return markov_cluster(g, opt.mcl).partition;  // flow never crosses components
    case Algorithm::InfoMap:
      return detail::run_per_component(
          g, [&](const Graph& s) { return infomap(s, opt.infomap_seed).partition; });
    case Algorithm::Walktrap:
      return detail::run_per_component(
          g, [&](const Graph& s) { return walktrap(s, opt.walktrap_t).partition; });
  }
  throw std::logic_error("run_algorithm: bad enum value");
}

}  // namespace commbench
