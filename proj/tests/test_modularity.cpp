#include "commbench/modularity.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/rng.hpp"
#include "oracles.hpp"

using commbench::Graph;
using commbench::modularity;
using commbench::Partition;
using commbench::Rng;

namespace {

// Two triangles joined by the bridge 2-3.
Graph bridged_triangles() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

}  // namespace

TEST(Modularity, SingleCommunityIsZero) {
  Graph g = bridged_triangles();
  Partition p = Partition::from_membership({0, 0, 0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(modularity(g, p), 0.0);
}

TEST(Modularity, BridgedTrianglesClosedForm) {
  Graph g = bridged_triangles();
  Partition p = Partition::from_membership({0, 0, 0, 1, 1, 1});
  EXPECT_NEAR(modularity(g, p), 5.0 / 14.0, 1e-12);
}

TEST(Modularity, AllSingletonsIsNegative) {
  Graph g = bridged_triangles();
  Partition p = Partition::from_membership({0, 1, 2, 3, 4, 5});
  double want = 0.0;
  for (int u = 0; u < 6; ++u) {
    double share = g.degree(u) / (2.0 * static_cast<double>(g.edge_count()));
    want -= share * share;
  }
  EXPECT_LT(modularity(g, p), 0.0);
  EXPECT_NEAR(modularity(g, p), want, 1e-12);
}

TEST(Modularity, EdgelessGraphThrows) {
  Graph g = Graph::from_edges(3, {});
  Partition p = Partition::from_membership({0, 0, 1});
  EXPECT_THROW(modularity(g, p), std::invalid_argument);
}

TEST(Modularity, MatchesDoubleLoopOracle) {
  Rng rng(31);
  for (int round = 0; round < 100; ++round) {
    int n = 4 + static_cast<int>(rng.below(27));
    Graph g = oracle::random_graph(n, 0.1 + 0.6 * rng.real01(), rng);
    if (g.edge_count() == 0) continue;
    Partition p = oracle::random_partition(n, 1 + static_cast<int>(rng.below(6)), rng);
    EXPECT_NEAR(modularity(g, p), oracle::modularity(g, p), 1e-10);
  }
}

TEST(Modularity, StaysInContractRange) {
  Rng rng(32);
  for (int round = 0; round < 100; ++round) {
    int n = 4 + static_cast<int>(rng.below(20));
    Graph g = oracle::random_graph(n, 0.3, rng);
    if (g.edge_count() == 0) continue;
    Partition p = oracle::random_partition(n, 1 + static_cast<int>(rng.below(6)), rng);
    double q = modularity(g, p);
    EXPECT_GE(q, -0.5);
    EXPECT_LT(q, 1.0);
  }
}
