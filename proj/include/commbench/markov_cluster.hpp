#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "commbench/graph.hpp"

namespace commbench {

struct MarkovClusterOptions {
  int expansion = 2;        // matrix power per iteration
  double inflation = 2.0;   // entrywise power
  double prune_eps = 1e-6;  // entries below this are dropped (column max survives)
  double tolerance = 1e-8;  // max-norm change that counts as converged
  int max_iterations = 1000;

  void validate() const {
    if (expansion < 2) throw std::invalid_argument("markov_cluster: expansion must be >= 2");
    if (inflation <= 1.0) throw std::invalid_argument("markov_cluster: inflation must be > 1");
    if (prune_eps <= 0.0 || prune_eps >= 1.0)
      throw std::invalid_argument("markov_cluster: prune_eps must be in (0, 1)");
    if (tolerance <= 0.0) throw std::invalid_argument("markov_cluster: tolerance must be > 0");
    if (max_iterations < 1)
      throw std::invalid_argument("markov_cluster: max_iterations must be >= 1");
  }
};

// Sparse column-stochastic transition matrix. Columns are sorted by row
// index; each column sums to 1 within 1e-12 and entries are nonnegative.
struct FlowMatrix {
  using Column = std::vector<std::pair<int, double>>;
  int n = 0;
  std::vector<Column> cols;

  // M = (A + I) D^-1: the random-walk matrix with a self-loop of weight 1
  // on every node, which guarantees aperiodicity.
  static FlowMatrix from_graph(const Graph& g) {
    FlowMatrix m;
    m.n = g.node_count();
    m.cols.resize(m.n);
    for (int j = 0; j < m.n; ++j) {
      auto nb = g.neighbors(j);
      Column& c = m.cols[j];
      c.reserve(nb.size() + 1);
      double w = 1.0 / (static_cast<double>(nb.size()) + 1.0);
      std::size_t i = 0;
      while (i < nb.size() && nb[i] < j) c.emplace_back(nb[i++], w);
      c.emplace_back(j, w);
      while (i < nb.size()) c.emplace_back(nb[i++], w);
    }
    return m;
  }
};

inline double flow_max_diff(const FlowMatrix& a, const FlowMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("flow_max_diff: size mismatch");
  double diff = 0.0;
  for (int j = 0; j < a.n; ++j) {
    const auto& ca = a.cols[j];
    const auto& cb = b.cols[j];
    std::size_t p = 0, q = 0;
    while (p < ca.size() || q < cb.size()) {
      if (q == cb.size() || (p < ca.size() && ca[p].first < cb[q].first)) {
        diff = std::max(diff, std::abs(ca[p].second));
        ++p;
      } else if (p == ca.size() || cb[q].first < ca[p].first) {
        diff = std::max(diff, std::abs(cb[q].second));
        ++q;
      } else {
        diff = std::max(diff, std::abs(ca[p].second - cb[q].second));
        ++p;
        ++q;
      }
    }
  }
  return diff;
}

// One MCL round: expansion (M^e), inflation (entrywise power r, column
// renormalization), pruning of entries below eps (the column max always
// survives) and a final renormalization.
inline FlowMatrix mcl_step(const FlowMatrix& m, const MarkovClusterOptions& opt) {
  FlowMatrix out;
  out.n = m.n;
  out.cols.resize(m.n);
  std::vector<double> acc(m.n, 0.0), tmp(m.n, 0.0);
  std::vector<int> touched, tmp_touched;
  touched.reserve(m.n);
  tmp_touched.reserve(m.n);

  for (int j = 0; j < m.n; ++j) {
    touched.clear();
    for (const auto& [i, v] : m.cols[j]) {
      acc[i] = v;
      touched.push_back(i);
    }
    for (int p = 1; p < opt.expansion; ++p) {
      tmp_touched.clear();
      for (int i : touched) {
        double v = acc[i];
        acc[i] = 0.0;
        for (const auto& [r, w] : m.cols[i]) {
          if (tmp[r] == 0.0) tmp_touched.push_back(r);
          tmp[r] += v * w;
        }
      }
      touched.clear();
      for (int r : tmp_touched) {
        acc[r] = tmp[r];
        tmp[r] = 0.0;
        touched.push_back(r);
      }
    }
    std::sort(touched.begin(), touched.end());

    double sum = 0.0;
    for (int i : touched) {
      acc[i] = std::pow(acc[i], opt.inflation);
      sum += acc[i];
    }
    for (int i : touched) acc[i] /= sum;

    int arg_max = touched.front();
    for (int i : touched) {
      if (acc[i] > acc[arg_max]) arg_max = i;
    }
    FlowMatrix::Column& col = out.cols[j];
    double kept = 0.0;
    for (int i : touched) {
      if (acc[i] >= opt.prune_eps || i == arg_max) {
        col.emplace_back(i, acc[i]);
        kept += acc[i];
      }
    }
    for (auto& [i, v] : col) v /= kept;
    for (int i : touched) acc[i] = 0.0;
  }
  return out;
}

struct MarkovClusterResult {
  Partition partition;
  int iterations = 0;
  bool converged = false;
};

// Markov Cluster algorithm: iterate mcl_step until the matrix is idempotent
// within the tolerance, then read clusters off the support's weakly
// connected components.
inline MarkovClusterResult markov_cluster(const Graph& g, MarkovClusterOptions opt = {}) {
  opt.validate();
  const int n = g.node_count();
  if (n == 0) throw std::invalid_argument("markov_cluster: empty graph");

  FlowMatrix m = FlowMatrix::from_graph(g);
  MarkovClusterResult result;
  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    FlowMatrix next = mcl_step(m, opt);
    double change = flow_max_diff(m, next);
    m = std::move(next);
    result.iterations = iter;
    if (change < opt.tolerance) {
      result.converged = true;
      break;
    }
  }

  std::vector<std::pair<int, int>> support;
  for (int j = 0; j < n; ++j) {
    for (const auto& [i, v] : m.cols[j]) {
      if (i != j) support.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  result.partition = connected_components(Graph::from_canonical(n, std::move(support)));
  return result;
}

}  // namespace commbench
