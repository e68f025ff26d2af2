#include "commbench/fast_greedy.hpp"

#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "commbench/graph.hpp"
#include "commbench/modularity.hpp"
#include "commbench/rng.hpp"
#include "oracles.hpp"

using commbench::fast_greedy;
using commbench::Graph;
using commbench::modularity;
using commbench::Partition;
using commbench::partition_at_cut;
using commbench::Rng;

namespace {

Graph bridged_triangles() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

}  // namespace

TEST(FastGreedy, RecoversBridgedTriangles) {
  auto res = fast_greedy(bridged_triangles());
  Partition want = Partition::from_membership({0, 0, 0, 1, 1, 1});
  EXPECT_TRUE(res.partition.same_clustering(want));
  EXPECT_NEAR(res.dendrogram.best_objective, 5.0 / 14.0, 1e-12);
}

TEST(FastGreedy, SingleEdgeMergesEndpoints) {
  Graph g = Graph::from_edges(2, {{0, 1}});
  auto res = fast_greedy(g);
  EXPECT_EQ(res.partition.community_count(), 1);
  EXPECT_NEAR(res.dendrogram.best_objective, 0.0, 1e-12);
}

TEST(FastGreedy, EdgelessGraphThrows) {
  EXPECT_THROW(fast_greedy(Graph::from_edges(3, {})), std::invalid_argument);
}

TEST(FastGreedy, DendrogramObjectivesMatchRecomputedModularity) {
  Rng rng(51);
  for (int round = 0; round < 20; ++round) {
    int n = 6 + static_cast<int>(rng.below(15));
    Graph g = oracle::random_connected_graph(n, 0.2, rng);
    auto res = fast_greedy(g);
    for (std::size_t cut = 1; cut <= res.dendrogram.steps.size(); ++cut) {
      Partition p = partition_at_cut(n, res.dendrogram, static_cast<int>(cut));
      EXPECT_NEAR(res.dendrogram.steps[cut - 1].objective, modularity(g, p), 1e-10);
    }
  }
}

TEST(FastGreedy, BestCutIsArgmaxOfTheMergeSequence) {
  Rng rng(52);
  for (int round = 0; round < 20; ++round) {
    int n = 6 + static_cast<int>(rng.below(15));
    Graph g = oracle::random_connected_graph(n, 0.25, rng);
    auto res = fast_greedy(g);
    double best = modularity(g, partition_at_cut(n, res.dendrogram, 0));
    for (std::size_t cut = 1; cut <= res.dendrogram.steps.size(); ++cut)
      best = std::max(best, res.dendrogram.steps[cut - 1].objective);
    EXPECT_NEAR(res.dendrogram.best_objective, best, 1e-12);
    EXPECT_NEAR(modularity(g, res.partition), best, 1e-10);
  }
}

TEST(FastGreedy, MergesEndWithOneCommunityPerComponent) {
  Rng rng(53);
  Graph g = oracle::random_connected_graph(12, 0.2, rng);
  auto res = fast_greedy(g);
  EXPECT_EQ(res.dendrogram.steps.size(), 11u);
  Partition final_cut = partition_at_cut(12, res.dendrogram, 11);
  EXPECT_EQ(final_cut.community_count(), 1);
}

TEST(FastGreedy, RelabelingEquivariantOnFixture) {
  Graph g = bridged_triangles();
  std::vector<int> perm{4, 2, 0, 5, 1, 3};
  Graph h = oracle::permute_graph(g, perm);
  Partition direct = fast_greedy(g).partition;
  Partition pulled = oracle::unpermute_partition(fast_greedy(h).partition, perm);
  EXPECT_TRUE(direct.same_clustering(pulled));
}
