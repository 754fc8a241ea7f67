// Copyright 2026 The ptolemaic-deletion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptolemaic/ptolemaic.hpp"

namespace ptolemaic::oracle {
namespace {

WeightedGraph with_zero_weight_vertex(const WeightedGraph& g, std::mt19937_64& rng) {
  WeightedGraph h(g.size() + 1);
  for (Vertex v = 0; v < g.size(); ++v) {
    h.set_weight(v, g.weight(v));
    for (Vertex u : g.neighbors(v))
      if (u < v) h.add_edge(u, v);
  }
  h.set_weight(g.size(), 0.0);
  std::bernoulli_distribution coin(0.5);
  for (Vertex v = 0; v < g.size(); ++v)
    if (coin(rng)) h.add_edge(v, g.size());
  return h;
}

TEST(ExactPtolemaicDeletion, Examples) {
  const ExactResult p4 = exact_ptolemaic_deletion(path_graph(4));
  EXPECT_EQ(p4.weight, 0.0);
  EXPECT_EQ(p4.set, std::vector<int>{});

  const ExactResult c5 = exact_ptolemaic_deletion(cycle_graph(5));
  EXPECT_EQ(c5.weight, 1.0);
  EXPECT_EQ(c5.set, std::vector<int>{0});

  const WeightedGraph gem = *fixture("gem");
  const ExactResult r = exact_ptolemaic_deletion(gem);
  EXPECT_EQ(r.weight, 1.0);
  ASSERT_EQ(r.set.size(), 1u);
  EXPECT_TRUE(testing::ptolemaic_brute(gem.without(r.set).first));
}

TEST(ExactFvsp, Examples) {
  FvspInstance forest(3, 1.0);
  forest.add_arc(0, 1);
  forest.add_arc(0, 2);
  EXPECT_EQ(exact_fvsp(forest).weight, 0.0);

  const ExactResult st = exact_fvsp(st_instance());
  EXPECT_EQ(st.weight, 1.0);
  EXPECT_EQ(st.set, std::vector<int>{2});

  const InterCliqueDigraph icd = build_icd(cycle_graph(5));
  const ExactResult c5 = exact_fvsp(FvspInstance(icd.hasse, icd.weights()));
  EXPECT_EQ(c5.weight, 1.0);
  ASSERT_EQ(c5.set.size(), 1u);
  EXPECT_EQ(icd.nodes[c5.set.front()].clique.size(), 1u);
}

TEST(ExactC4GemHitting, Examples) {
  EXPECT_EQ(exact_c4gem_hitting(path_graph(5)).weight, 0.0);
  EXPECT_EQ(exact_c4gem_hitting(cycle_graph(4)).weight, 1.0);
  const ExactResult house = exact_c4gem_hitting(*fixture("house"));
  EXPECT_EQ(house.weight, 1.0);
  ASSERT_EQ(house.set.size(), 1u);
  EXPECT_LT(house.set.front(), 4);  // the square is 0-1-2-3
}

TEST(Budget, ExceededIsReported) {
  EXPECT_THROW(exact_ptolemaic_deletion(path_graph(15)), BudgetExceeded);
  EXPECT_THROW(exact_c4gem_hitting(path_graph(4), OracleBudget{.max_vertices = 3}), BudgetExceeded);
  EXPECT_THROW(exact_fvsp(FvspInstance(19)), BudgetExceeded);
  EXPECT_NO_THROW(exact_fvsp(FvspInstance(18)));
}

TEST(ForEachDownwardClosed, MatchesSubsetFilter) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const FvspInstance inst = random_fvsp_instance(2 + trial % 9, 0.4, rng);
    std::vector<std::uint32_t> seen;
    for_each_downward_closed(inst, [&](std::uint32_t m) { seen.push_back(m); });
    std::sort(seen.begin(), seen.end());
    std::vector<std::uint32_t> expected;
    for (std::uint32_t m = 0; m < (1u << inst.size()); ++m)
      if (!find_downward_closure_violation(inst.graph, inst.graph.to_mask(testing::bits(m)))) expected.push_back(m);
    EXPECT_EQ(seen, expected);
  }
}

TEST(Oracles, AgreeWithDefinitionsAndPassVerifiers) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 120; ++trial) {
    const WeightedGraph g = erdos_renyi(3 + trial % 7, 0.5, rng, 0.0, 10.0);
    const ExactResult pd = exact_ptolemaic_deletion(g);
    EXPECT_NEAR(pd.weight, testing::ptolemaic_deletion_opt_brute(g), 1e-9);
    EXPECT_TRUE(is_ptolemaic(g.without(pd.set).first).ptolemaic);
    EXPECT_NEAR(total_weight(g, pd.set), pd.weight, 1e-9);

    const ExactResult hit = exact_c4gem_hitting(g);
    EXPECT_NEAR(hit.weight, testing::hitting_opt_brute(g), 1e-9);
    EXPECT_TRUE(is_c4_gem_free(g.without(hit.set).first));
    EXPECT_LE(hit.weight, pd.weight + 1e-9);

    const FvspInstance inst = random_fvsp_instance(3 + trial % 10, 0.5, rng);
    const ExactResult f = exact_fvsp(inst);
    EXPECT_NEAR(f.weight, testing::fvsp_opt_brute(inst), 1e-9);
    EXPECT_TRUE(verify_fvsp_solution(inst, f.set).ok);
  }
}

TEST(Oracles, ZeroWeightVertexNeverIncreasesOptimum) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 80; ++trial) {
    const WeightedGraph g = erdos_renyi(3 + trial % 6, 0.5, rng, 0.0, 10.0);
    const WeightedGraph h = with_zero_weight_vertex(g, rng);
    EXPECT_LE(exact_ptolemaic_deletion(h).weight, exact_ptolemaic_deletion(g).weight + 1e-9);
    EXPECT_LE(exact_c4gem_hitting(h).weight, exact_c4gem_hitting(g).weight + 1e-9);

    const FvspInstance inst = random_fvsp_instance(3 + trial % 8, 0.5, rng);
    FvspInstance bigger(inst.size() + 1, 0.0);
    for (NodeId v = 0; v < inst.size(); ++v) bigger.weight[v] = inst.weight[v];
    for (const Arc& a : inst.graph.arcs()) bigger.add_arc(a.tail, a.head);
    bigger.add_arc(0, inst.size());  // a zero-weight leaf below node 0
    ASSERT_TRUE(validate_instance(bigger).ok);
    EXPECT_LE(exact_fvsp(bigger).weight, exact_fvsp(inst).weight + 1e-9);
  }
}

TEST(MinimalizeDeletionSet, DropsRedundantVertices) {
  const WeightedGraph c5 = cycle_graph(5);
  EXPECT_EQ(minimalize_deletion_set(c5, {0, 1, 2}), VertexSet{2});
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedGraph g = erdos_renyi(4 + trial % 5, 0.5, rng);
    const VertexSet s = minimalize_deletion_set(g, g.vertices());
    EXPECT_TRUE(is_ptolemaic(g.without(s).first).ptolemaic);
    for (std::size_t i = 0; i < s.size(); ++i) {
      VertexSet fewer = s;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      EXPECT_FALSE(is_ptolemaic(g.without(fewer).first).ptolemaic);
    }
  }
}

}  // namespace
}  // namespace ptolemaic::oracle
