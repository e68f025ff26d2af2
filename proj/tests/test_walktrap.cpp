#include "commbench/walktrap.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/modularity.hpp"
#include "commbench/rng.hpp"
#include "oracles.hpp"

using commbench::Graph;
using commbench::modularity;
using commbench::Partition;
using commbench::partition_at_cut;
using commbench::Rng;
using commbench::walktrap;

namespace {

Graph bridged_triangles() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

Graph k4() {
  return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST(Walktrap, RecoversBridgedTriangles) {
  auto res = walktrap(bridged_triangles(), 4);
  Partition want = Partition::from_membership({0, 0, 0, 1, 1, 1});
  EXPECT_TRUE(res.partition.same_clustering(want));
}

TEST(Walktrap, CompleteGraphStaysWhole) {
  auto res = walktrap(k4(), 4);
  EXPECT_EQ(res.partition.community_count(), 1);
}

TEST(Walktrap, ParameterValidation) {
  EXPECT_THROW(walktrap(k4(), 0), std::invalid_argument);
  EXPECT_THROW(walktrap(Graph::from_edges(2, {}), 4), std::invalid_argument);
}

TEST(Walktrap, StructurallyEquivalentNodesHaveZeroDistance) {
  // Nodes 0 and 1 both link to exactly {2, 3}: identical transition rows.
  Graph g = Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  std::vector<double> cur, nxt;
  std::vector<float> v0, v1;
  commbench::detail::walk_row(g, 0, 4, cur, nxt, v0);
  commbench::detail::walk_row(g, 1, 4, cur, nxt, v1);
  EXPECT_EQ(commbench::detail::sq_dist(v0, v1), 0.0);
}

TEST(Walktrap, DendrogramObjectivesMatchRecomputedModularity) {
  Rng rng(71);
  for (int round = 0; round < 15; ++round) {
    int n = 6 + static_cast<int>(rng.below(12));
    Graph g = oracle::random_connected_graph(n, 0.2, rng);
    auto res = walktrap(g, 4);
    EXPECT_EQ(res.dendrogram.steps.size(), static_cast<std::size_t>(n - 1));
    for (std::size_t cut = 1; cut <= res.dendrogram.steps.size(); ++cut) {
      Partition p = partition_at_cut(n, res.dendrogram, static_cast<int>(cut));
      EXPECT_NEAR(res.dendrogram.steps[cut - 1].objective, modularity(g, p), 1e-10);
    }
  }
}

TEST(Walktrap, ChosenCutMaximizesModularityAlongTheMergeSequence) {
  Rng rng(72);
  for (int round = 0; round < 15; ++round) {
    int n = 6 + static_cast<int>(rng.below(12));
    Graph g = oracle::random_connected_graph(n, 0.25, rng);
    auto res = walktrap(g, 4);
    double best = modularity(g, partition_at_cut(n, res.dendrogram, 0));
    for (std::size_t cut = 1; cut <= res.dendrogram.steps.size(); ++cut)
      best = std::max(best, res.dendrogram.steps[cut - 1].objective);
    EXPECT_NEAR(res.dendrogram.best_objective, best, 1e-12);
    EXPECT_NEAR(modularity(g, res.partition), best, 1e-10);
  }
}

TEST(Walktrap, WalkLengthOneStillWorks) {
  auto res = walktrap(bridged_triangles(), 1);
  EXPECT_GE(res.partition.community_count(), 1);
  EXPECT_EQ(res.partition.node_count(), 6);
}

TEST(Walktrap, IsolatedNodesStaySingletons) {
  Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}});
  auto res = walktrap(g, 4);
  EXPECT_EQ(res.partition.community(res.partition.community_of(3)).size(), 1u);
  EXPECT_EQ(res.partition.community(res.partition.community_of(4)).size(), 1u);
}
