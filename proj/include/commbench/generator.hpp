#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/rng.hpp"
#include "commbench/sampling.hpp"

namespace commbench {

enum class WiringModel { ConfigurationModel, PreferentialAttachment };

struct GeneratorConfig {
  int n = 10000;
  double mean_degree = 30.0;
  int k_max = 1000;
  double gamma = 3.0;
  double beta = 2.0;
  MixingSpec mixing = MixingSpec::uniform(0.0, 1.0);
  WiringModel wiring = WiringModel::ConfigurationModel;
  std::optional<std::pair<int, int>> size_bounds;  // defaults to [k_min, k_max]
  double rewire_tolerance = 0.05;
  int rewire_max_sweeps = 50;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 10) throw std::invalid_argument("config: n must be >= 10");
    if (!(mean_degree > 1.0))
      throw std::invalid_argument("config: mean_degree must be > 1");
    if (!(static_cast<double>(k_max) > mean_degree))
      throw std::invalid_argument("config: k_max must exceed mean_degree");
    if (k_max >= n) throw std::invalid_argument("config: k_max must be < n");
    if (gamma <= 1.0) throw std::invalid_argument("config: gamma must be > 1");
    if (beta <= 1.0) throw std::invalid_argument("config: beta must be > 1");
    mixing.validate();
    if (size_bounds) {
      auto [lo, hi] = *size_bounds;
      if (lo < 2 || lo > hi || hi > n)
        throw std::invalid_argument("config: size_bounds must satisfy 2 <= min <= max <= n");
    }
    if (!(rewire_tolerance > 0.0) || rewire_tolerance > 1.0)
      throw std::invalid_argument("config: rewire_tolerance must lie in (0, 1]");
    if (rewire_max_sweeps < 1)
      throw std::invalid_argument("config: rewire_max_sweeps must be >= 1");
  }
};

struct WiringReport {
  long long requested_edges = 0;  // sum(k)/2
  long long realized_edges = 0;
  long long dropped_stubs = 0;    // stubs discarded after repair gave up
  int repair_rounds = 0;
};

struct WiredGraph {
  Graph graph;
  WiringReport report;
};

// Configuration model: random stub matching with repair rounds that
// re-shuffle the stubs left over from rejected (self-loop or duplicate)
// pairings. Stubs that survive every repair round are dropped; more than
// 5% loss is treated as an unrealizable sequence.
inline WiredGraph wire_configuration_model(const std::vector<int>& degrees, Rng& rng) {
  const int n = static_cast<int>(degrees.size());
  long long stub_count = 0;
  for (int i = 0; i < n; ++i) {
    if (degrees[i] < 0) throw std::invalid_argument("configuration model: negative degree");
    if (degrees[i] >= n)
      throw std::invalid_argument("configuration model: degree " + std::to_string(degrees[i]) +
                                  " impossible on " + std::to_string(n) + " nodes");
    stub_count += degrees[i];
  }
  if (stub_count % 2 != 0)
    throw std::invalid_argument("configuration model: odd degree sum");

  std::vector<int> stubs;
  stubs.reserve(stub_count);
  for (int u = 0; u < n; ++u) stubs.insert(stubs.end(), degrees[u], u);

  auto key = [](int u, int v) {
    return (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
           static_cast<std::uint64_t>(std::max(u, v));
  };
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(stub_count);
  EdgeList edges;
  edges.reserve(stub_count / 2);

  WiringReport report;
  report.requested_edges = stub_count / 2;

  std::vector<int> pending = std::move(stubs), leftover;
  int stalls = 0;
  const int max_rounds = 200;
  while (!pending.empty() && report.repair_rounds < max_rounds) {
    ++report.repair_rounds;
    rng.shuffle(pending);
    leftover.clear();
    std::size_t accepted = 0;
    for (std::size_t i = 0; i + 1 < pending.size(); i += 2) {
      int u = pending[i], v = pending[i + 1];
      if (u != v && seen.insert(key(u, v)).second) {
        edges.emplace_back(std::min(u, v), std::max(u, v));
        ++accepted;
      } else {
        leftover.push_back(u);
        leftover.push_back(v);
      }
    }
    pending.swap(leftover);
    stalls = accepted == 0 ? stalls + 1 : 0;
    if (stalls >= 20) break;
  }
  report.dropped_stubs = static_cast<long long>(pending.size());
  report.realized_edges = static_cast<long long>(edges.size());
  if (report.realized_edges < report.requested_edges -
                                  report.requested_edges / 20) {
    throw std::runtime_error(
        "configuration model: sequence not realizable as a simple graph, lost " +
        std::to_string(report.dropped_stubs) + " of " + std::to_string(stub_count) + " stubs");
  }
  std::sort(edges.begin(), edges.end());
  return {Graph::from_canonical(n, std::move(edges)), report};
}

// Barabasi-Albert growth with m = round(mean_degree/2) attachments per new
// node, seeded with a clique on m0 = max(5, m) nodes (m0 = m+1 when n is
// too small for that seed).
inline Graph wire_preferential_attachment(int n, double mean_degree, Rng& rng) {
  if (!(mean_degree > 0.0))
    throw std::invalid_argument("preferential attachment: mean_degree must be > 0");
  const int m = std::max(1, static_cast<int>(std::llround(mean_degree / 2.0)));
  int m0 = std::max(5, m);
  if (n <= m0) m0 = m + 1;
  if (n <= m0)
    throw std::invalid_argument("preferential attachment: n = " + std::to_string(n) +
                                " too small for attachment parameter m = " + std::to_string(m));

  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(m0) * (m0 - 1) / 2 +
                static_cast<std::size_t>(m) * (n - m0));
  std::vector<int> pool;  // one entry per edge endpoint, degree-proportional
  pool.reserve(2 * edges.capacity());
  for (int u = 0; u < m0; ++u) {
    for (int v = u + 1; v < m0; ++v) {
      edges.emplace_back(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }

  std::vector<int> chosen;
  chosen.reserve(m);
  for (int u = m0; u < n; ++u) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < m) {
      int t = pool[rng.below(pool.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (int t : chosen) {
      edges.emplace_back(std::min(t, u), std::max(t, u));
      pool.push_back(t);
      pool.push_back(u);
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_canonical(n, std::move(edges));
}

// Internal degree demanded by a node's mixing target: round half-up of
// (1-mu)k, clamped to what the largest community can host.
inline int required_internal_degree(int degree, double mu) {
  double want = (1.0 - mu) * degree;
  int k_int = static_cast<int>(std::floor(want + 0.5));
  return std::clamp(k_int, 0, degree);
}

struct AssignResult {
  Partition partition;
  int clamped_nodes = 0;  // nodes whose k_int was cut to (largest size - 1)
};

// Place every node into a community of size >= k_int(u)+1, picking uniformly
// among the communities that still have room. Nodes are placed in order of
// decreasing demand so the large communities are not squandered on easy
// nodes first.
inline AssignResult assign_communities(const Graph& g, const std::vector<int>& sizes,
                                       const std::vector<double>& mu, Rng& rng) {
  const int n = g.node_count();
  if (static_cast<int>(mu.size()) != n)
    throw std::invalid_argument("assignment: mu vector does not match node count");
  long long total = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("assignment: community size must be >= 1");
    total += s;
  }
  if (total != n)
    throw std::invalid_argument("assignment: community sizes sum to " + std::to_string(total) +
                                ", expected " + std::to_string(n));

  const int c_count = static_cast<int>(sizes.size());
  const int max_size = *std::max_element(sizes.begin(), sizes.end());

  AssignResult result;
  std::vector<int> need(n);
  for (int u = 0; u < n; ++u) {
    need[u] = required_internal_degree(g.degree(u), mu[u]);
    if (need[u] + 1 > max_size) {
      need[u] = max_size - 1;
      ++result.clamped_nodes;
    }
  }

  std::vector<int> order(n);
  for (int u = 0; u < n; ++u) order[u] = u;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (need[a] != need[b]) return need[a] > need[b];
    return a < b;
  });

  std::vector<int> capacity(sizes.begin(), sizes.end());
  std::vector<int> membership(n, -1);
  std::vector<int> feasible;
  feasible.reserve(c_count);
  for (int u : order) {
    feasible.clear();
    long long open = 0;
    for (int c = 0; c < c_count; ++c) {
      if (capacity[c] > 0 && sizes[c] >= need[u] + 1) {
        feasible.push_back(c);
        open += capacity[c];
      }
    }
    if (feasible.empty())
      throw std::runtime_error("assignment infeasible: node " + std::to_string(u) +
                               " needs internal degree " + std::to_string(need[u]) +
                               " but no open community is large enough");
    // every open slot is equally likely, so a community draws members in
    // proportion to its remaining capacity
    long long pick = static_cast<long long>(rng.below(static_cast<std::uint64_t>(open)));
    int chosen = feasible.back();
    for (int c : feasible) {
      pick -= capacity[c];
      if (pick < 0) {
        chosen = c;
        break;
      }
    }
    membership[u] = chosen;
    --capacity[chosen];
  }
  result.partition = Partition::from_membership(membership);
  return result;
}

struct RewireReport {
  double mean_abs_error = 0.0;
  int sweeps = 0;
  long long swaps = 0;
  bool converged = false;
};

struct RewireResult {
  Graph graph;
  RewireReport report;
};

namespace detail {

// Mutable adjacency with sorted neighbor lists, for the swap phase.
struct SwapState {
  std::vector<std::vector<int>> adj;
  std::vector<int> k_ext;
  const Partition* part;
  const std::vector<double>* mu;

  bool linked(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }
  void add(int u, int v) {
    adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
    int d = external(u, v) ? 1 : 0;
    k_ext[u] += d;
    k_ext[v] += d;
  }
  void remove(int u, int v) {
    adj[u].erase(std::lower_bound(adj[u].begin(), adj[u].end(), v));
    adj[v].erase(std::lower_bound(adj[v].begin(), adj[v].end(), u));
    int d = external(u, v) ? 1 : 0;
    k_ext[u] -= d;
    k_ext[v] -= d;
  }
  bool external(int u, int v) const {
    return part->community_of(u) != part->community_of(v);
  }
  double dev(int u) const {
    if (adj[u].empty()) return 0.0;
    return static_cast<double>(k_ext[u]) / static_cast<double>(adj[u].size()) - (*mu)[u];
  }
};

}  // namespace detail

// Degree-preserving double-edge swaps, greedily accepted only when the
// summed per-node |mu_realized - mu_target| strictly decreases. Each sweep
// works on the most deviating nodes first; convergence means the mean
// absolute deviation dropped to the tolerance.
inline RewireResult rewire_to_mixing(const Graph& g, const Partition& p,
                                     const std::vector<double>& mu, double tolerance,
                                     int max_sweeps, Rng& rng) {
  const int n = g.node_count();
  if (p.node_count() != n || static_cast<int>(mu.size()) != n)
    throw std::invalid_argument("rewire: partition or mu does not match the graph");

  detail::SwapState st;
  st.adj.resize(n);
  st.k_ext.assign(n, 0);
  st.part = &p;
  st.mu = &mu;
  for (int u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    st.adj[u].assign(nb.begin(), nb.end());
    st.k_ext[u] = external_degree(g, p, u);
  }

  int active = 0;
  for (int u = 0; u < n; ++u)
    if (!st.adj[u].empty()) ++active;

  RewireReport report;
  auto mean_abs = [&]() {
    if (active == 0) return 0.0;
    double s = 0.0;
    for (int u = 0; u < n; ++u) s += std::abs(st.dev(u));
    return s / active;
  };

  // the swap replaces (u,v) and (w,z) with (u,w) and (v,z); returns the
  // change in summed absolute deviation, or accepts and applies it
  auto try_swap = [&](int u) {
    double d = st.dev(u);
    const int cu = p.community_of(u);
    const bool internalize = d > 0.0;  // too many external links

    int v = -1;
    {
      int count = 0;
      for (int x : st.adj[u])
        if (st.external(u, x) == internalize) ++count;
      if (count == 0) return false;
      int pick = static_cast<int>(rng.below(count));
      for (int x : st.adj[u]) {
        if (st.external(u, x) == internalize && pick-- == 0) {
          v = x;
          break;
        }
      }
    }

    int w = -1;
    for (int attempt = 0; attempt < 8 && w < 0; ++attempt) {
      int cand;
      if (internalize) {
        const auto& members = p.community(cu);
        cand = members[rng.below(members.size())];
        if (cand == u) continue;
      } else {
        cand = static_cast<int>(rng.below(n));
        if (p.community_of(cand) == cu) continue;
      }
      if (st.adj[cand].empty() || st.linked(u, cand) || cand == u) continue;
      w = cand;
    }
    if (w < 0) return false;

    int z = st.adj[w][rng.below(st.adj[w].size())];
    if (z == v || z == u || st.linked(v, z)) return false;

    double before = std::abs(st.dev(u)) + std::abs(st.dev(v)) + std::abs(st.dev(w)) +
                    std::abs(st.dev(z));
    st.remove(u, v);
    st.remove(w, z);
    st.add(u, w);
    st.add(v, z);
    double after = std::abs(st.dev(u)) + std::abs(st.dev(v)) + std::abs(st.dev(w)) +
                   std::abs(st.dev(z));
    if (after < before - 1e-12) {
      ++report.swaps;
      return true;
    }
    st.remove(u, w);
    st.remove(v, z);
    st.add(u, v);
    st.add(w, z);
    return false;
  };

  std::vector<int> order;
  order.reserve(n);
  while (report.sweeps < max_sweeps) {
    report.mean_abs_error = mean_abs();
    if (report.mean_abs_error <= tolerance) {
      report.converged = true;
      break;
    }
    order.clear();
    for (int u = 0; u < n; ++u) {
      if (st.adj[u].empty()) continue;
      if (std::abs(st.dev(u)) > 0.5 / static_cast<double>(st.adj[u].size())) order.push_back(u);
    }
    if (order.empty()) break;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double da = std::abs(st.dev(a)), db = std::abs(st.dev(b));
      if (da != db) return da > db;
      return a < b;
    });

    ++report.sweeps;
    bool progress = false;
    for (int u : order) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        if (std::abs(st.dev(u)) <= 0.5 / static_cast<double>(st.adj[u].size())) break;
        if (try_swap(u)) progress = true;
      }
    }
    if (!progress) break;
  }
  report.mean_abs_error = mean_abs();
  report.converged = report.mean_abs_error <= tolerance;

  EdgeList edges;
  for (int u = 0; u < n; ++u) {
    for (int v : st.adj[u])
      if (v > u) edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  RewireResult out{Graph::from_canonical(n, std::move(edges)), report};
  return out;
}

struct GenerationStats {
  int solved_k_min = 0;
  WiringReport wiring;
  int assignment_attempts = 0;
  int clamped_nodes = 0;
  RewireReport rewire;
  double realized_mean_degree = 0.0;
  int community_count = 0;
};

struct GeneratedNetwork {
  Graph graph;
  Partition reference;
  std::vector<double> mu_target;
  std::vector<double> mu_realized;
  GenerationStats stats;
};

// Full pipeline: degree sampling + wiring, community sizes, capacity-aware
// assignment (with restarts on infeasible draws), then rewiring toward the
// per-node mixing targets. Deterministic given cfg.seed; every stage and
// every retry runs on its own derived stream.
inline GeneratedNetwork generate(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng root(cfg.seed);

  GeneratedNetwork net;
  net.stats.solved_k_min =
      std::max(2, solve_k_min(cfg.mean_degree, cfg.gamma, cfg.k_max));

  Graph wired;
  if (cfg.wiring == WiringModel::ConfigurationModel) {
    PowerLawSpec degree_spec{cfg.gamma, net.stats.solved_k_min, cfg.k_max};
    Rng deg_rng = root.child(1);
    std::vector<int> degrees = sample_power_law(cfg.n, degree_spec, deg_rng);
    ensure_even_degree_sum(degrees, cfg.k_max);
    Rng wire_rng = root.child(2);
    WiredGraph wg = wire_configuration_model(degrees, wire_rng);
    net.stats.wiring = wg.report;
    wired = std::move(wg.graph);
  } else {
    Rng wire_rng = root.child(2);
    wired = wire_preferential_attachment(cfg.n, cfg.mean_degree, wire_rng);
    net.stats.wiring.requested_edges = wired.edge_count();
    net.stats.wiring.realized_edges = wired.edge_count();
  }

  Rng mix_rng = root.child(3);
  net.mu_target = sample_mixing(cfg.n, cfg.mixing, mix_rng);

  auto [size_min, size_max] =
      cfg.size_bounds.value_or(std::make_pair(net.stats.solved_k_min, cfg.k_max));
  PowerLawSpec size_spec{cfg.beta, size_min, size_max};

  AssignResult assigned;
  const int max_attempts = 10;
  for (int attempt = 0;; ++attempt) {
    Rng size_rng = root.child(100 + attempt);
    std::vector<int> sizes = sample_community_sizes(cfg.n, size_spec, size_rng);
    try {
      Rng assign_rng = root.child(200 + attempt);
      assigned = assign_communities(wired, sizes, net.mu_target, assign_rng);
      net.stats.assignment_attempts = attempt + 1;
      break;
    } catch (const std::runtime_error&) {
      if (attempt + 1 >= max_attempts) throw;
    }
  }
  net.stats.clamped_nodes = assigned.clamped_nodes;
  net.reference = std::move(assigned.partition);

  Rng rewire_rng = root.child(6);
  RewireResult rewired = rewire_to_mixing(wired, net.reference, net.mu_target,
                                          cfg.rewire_tolerance, cfg.rewire_max_sweeps, rewire_rng);
  net.stats.rewire = rewired.report;
  net.graph = std::move(rewired.graph);

  net.mu_realized.resize(cfg.n);
  for (int u = 0; u < cfg.n; ++u) {
    int k = net.graph.degree(u);
    net.mu_realized[u] =
        k > 0 ? static_cast<double>(external_degree(net.graph, net.reference, u)) / k : 0.0;
  }
  net.stats.realized_mean_degree =
      2.0 * static_cast<double>(net.graph.edge_count()) / static_cast<double>(cfg.n);
  net.stats.community_count = net.reference.community_count();
  return net;
}

}  // namespace commbench
