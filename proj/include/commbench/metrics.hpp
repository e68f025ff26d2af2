#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/rng.hpp"

namespace commbench {

// Per-community record of the mesoscopic property suite. Metrics that are
// undefined for the community (singletons, internally disconnected sets)
// are left empty rather than given sentinel values.
struct CommunityProfile {
  int community = 0;
  int size = 0;
  long long internal_edges = 0;
  std::optional<double> density;
  std::optional<double> scaled_density;
  std::optional<double> avg_distance;
  std::optional<double> hub_dominance;
  bool internally_connected = true;
};

// Ratio of internal to total degree of a node; undefined for isolated nodes.
inline double embeddedness(const Graph& g, const Partition& p, int u) {
  int k = g.degree(u);
  if (k == 0) throw std::invalid_argument("embeddedness: undefined for isolated node " + std::to_string(u));
  return static_cast<double>(internal_degree(g, p, u)) / k;
}

// Density times community size: 2 m_C / (n_C - 1). Equals 2 for trees and
// n_C for cliques.
inline double scaled_density(int n_c, long long m_c) {
  if (n_c < 2) throw std::invalid_argument("scaled_density: undefined for singleton community");
  return 2.0 * static_cast<double>(m_c) / (n_c - 1);
}

namespace detail {

inline long long internal_edge_count(const Graph& g, const Partition& p, int c) {
  long long twice = 0;
  for (int u : p.community(c)) twice += internal_degree(g, p, u);
  return twice / 2;
}

inline int max_internal_degree(const Graph& g, const Partition& p, int c) {
  int best = 0;
  for (int u : p.community(c)) best = std::max(best, internal_degree(g, p, u));
  return best;
}

struct AvgDistance {
  std::optional<double> value;  // mean over reachable pairs
  bool connected = true;
};

// Exact all-pairs BFS on the induced subgraph. When `sample_sources` > 0 the
// mean is estimated from BFS trees of that many randomly chosen sources
// instead (for very large communities).
inline AvgDistance induced_avg_distance(const Graph& g, const std::vector<int>& members,
                                        int sample_sources = 0, Rng* rng = nullptr) {
  AvgDistance res;
  int k = static_cast<int>(members.size());
  if (k < 2) {
    res.value = std::nullopt;
    return res;
  }

  std::vector<int> sources = members;
  bool sampled = sample_sources > 0 && sample_sources < k && rng != nullptr;
  if (sampled) {
    rng->shuffle(sources);
    sources.resize(sample_sources);
  }

  static thread_local std::vector<int> local;
  local.assign(g.node_count(), -1);
  for (int i = 0; i < k; ++i) local[members[i]] = i;

  long long pair_count = 0;
  long long dist_sum = 0;
  std::vector<int> dist(k);
  std::vector<int> frontier, next;
  for (int s : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[local[s]] = 0;
    frontier.assign(1, s);
    int d = 0, reached = 1;
    while (!frontier.empty()) {
      ++d;
      next.clear();
      for (int u : frontier)
        for (int v : g.neighbors(u)) {
          int j = local[v];
          if (j >= 0 && dist[j] < 0) {
            dist[j] = d;
            dist_sum += d;
            ++pair_count;
            ++reached;
            next.push_back(v);
          }
        }
      frontier.swap(next);
    }
    if (reached < k) res.connected = false;
  }

  if (pair_count == 0)
    res.value = std::nullopt;  // no reachable pair at all
  else
    res.value = static_cast<double>(dist_sum) / static_cast<double>(pair_count);
  return res;
}

}  // namespace detail

// Maximal internal degree over the community, scaled by the largest degree
// theoretically possible given the community size.
inline double hub_dominance(const Graph& g, const Partition& p, int c) {
  int n_c = static_cast<int>(p.community(c).size());
  if (n_c < 2) throw std::invalid_argument("hub_dominance: undefined for singleton community");
  return static_cast<double>(detail::max_internal_degree(g, p, c)) / (n_c - 1);
}

// Mean shortest-path length over reachable pairs inside the community's
// induced subgraph.
inline double community_avg_distance(const Graph& g, const Partition& p, int c) {
  int n_c = static_cast<int>(p.community(c).size());
  if (n_c < 2) throw std::invalid_argument("community_avg_distance: undefined for singleton community");
  auto res = detail::induced_avg_distance(g, p.community(c));
  if (!res.value)
    throw std::invalid_argument("community_avg_distance: no reachable pair in community " + std::to_string(c));
  return *res.value;
}

struct ProfileOptions {
  // When > 0, communities larger than `sample_threshold` have their average
  // distance estimated from `sample_sources` BFS sources. Off by default.
  int sample_threshold = 0;
  int sample_sources = 0;
  std::uint64_t sample_seed = 0;
};

struct ProfileResult {
  std::vector<CommunityProfile> profiles;                // one per community id
  std::vector<std::pair<int, double>> node_embeddedness; // isolated nodes excluded
  std::vector<int> isolated_nodes;
};

inline ProfileResult profile_partition(const Graph& g, const Partition& p,
                                       const ProfileOptions& opt = {}) {
  ProfileResult out;
  Rng rng(opt.sample_seed);
  out.profiles.reserve(p.community_count());
  for (int c = 0; c < p.community_count(); ++c) {
    const auto& members = p.community(c);
    CommunityProfile prof;
    prof.community = c;
    prof.size = static_cast<int>(members.size());
    prof.internal_edges = detail::internal_edge_count(g, p, c);
    if (prof.size >= 2) {
      prof.density = 2.0 * static_cast<double>(prof.internal_edges) /
                     (static_cast<double>(prof.size) * (prof.size - 1));
      prof.scaled_density = scaled_density(prof.size, prof.internal_edges);
      prof.hub_dominance = hub_dominance(g, p, c);
      bool sample = opt.sample_threshold > 0 && prof.size > opt.sample_threshold;
      auto ad = detail::induced_avg_distance(g, members, sample ? opt.sample_sources : 0, &rng);
      prof.avg_distance = ad.value;
      prof.internally_connected = ad.connected;
    }
    out.profiles.push_back(std::move(prof));
  }
  for (int u = 0; u < g.node_count(); ++u) {
    if (g.degree(u) == 0)
      out.isolated_nodes.push_back(u);
    else
      out.node_embeddedness.emplace_back(u, embeddedness(g, p, u));
  }
  return out;
}

// Mean of `value` over logarithmic bins of `size`. Bin i spans
// [10^(i/bpd), 10^((i+1)/bpd)); empty bins are omitted.
struct BinnedCurve {
  struct Bin {
    double lower = 0.0;
    double upper = 0.0;
    double mean = 0.0;
    int count = 0;
  };
  std::vector<Bin> bins;
};

inline BinnedCurve log_binned_curve(const std::vector<std::pair<double, double>>& points,
                                    int bins_per_decade) {
  if (bins_per_decade < 1) throw std::invalid_argument("log_binned_curve: bins_per_decade must be >= 1");
  struct Acc {
    double sum = 0.0;
    int count = 0;
  };
  std::vector<std::pair<int, Acc>> acc;  // bin index -> accumulator
  for (auto [size, value] : points) {
    if (size < 1.0) throw std::invalid_argument("log_binned_curve: sizes must be >= 1");
    int bin = static_cast<int>(std::floor(std::log10(size) * bins_per_decade + 1e-9));
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == bin; });
    if (it == acc.end()) {
      acc.push_back({bin, {}});
      it = acc.end() - 1;
    }
    it->second.sum += value;
    ++it->second.count;
  }
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  BinnedCurve curve;
  for (auto& [bin, a] : acc) {
    BinnedCurve::Bin b;
    b.lower = std::pow(10.0, static_cast<double>(bin) / bins_per_decade);
    b.upper = std::pow(10.0, static_cast<double>(bin + 1) / bins_per_decade);
    b.mean = a.sum / a.count;
    b.count = a.count;
    curve.bins.push_back(b);
  }
  return curve;
}

// Histogram of per-node embeddedness over `bins` equal-width cells of [0,1];
// the value 1.0 lands in the last cell.
inline std::vector<int> embeddedness_histogram(const std::vector<std::pair<int, double>>& values,
                                               int bins = 20) {
  std::vector<int> hist(bins, 0);
  for (auto [node, e] : values) {
    int b = std::min(bins - 1, static_cast<int>(e * bins));
    ++hist[b];
  }
  return hist;
}

}  // namespace commbench
