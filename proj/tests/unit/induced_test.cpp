#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "mwis/induced.hpp"
#include "mwis/verify.hpp"

using namespace mwis;

namespace {

// Tries every injective map V(H) -> V(G).
bool naive_contains(const Graph& g, const Graph& h) {
  std::vector<VertexId> gv = g.vertices().to_vector();
  std::vector<VertexId> hv = h.vertices().to_vector();
  if (hv.size() > gv.size()) return false;
  std::vector<VertexId> pick;
  std::vector<bool> used(g.universe(), false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == hv.size()) return true;
    for (VertexId x : gv) {
      if (used[x]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = g.adjacent(x, pick[j]) == h.adjacent(hv[i], hv[j]);
      if (!ok) continue;
      used[x] = true;
      pick.push_back(x);
      if (self(self, i + 1)) return true;
      pick.pop_back();
      used[x] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

// The copy returned must induce a graph isomorphic to H; checked by search
// restricted to the copy.
bool is_copy(const Graph& g, const VertexSet& x, const Graph& h) {
  return x.size() == h.num_vertices() && naive_contains(induced_subgraph(g, x), h);
}

}  // namespace

TEST(FindInducedCopy, SingleVertexPicksSmallestId) {
  Graph g = remove_vertex(cycle_graph(5), 0);
  auto x = find_induced_copy(g, Graph(1, {}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, VertexSet(5, {1}));
}

TEST(FindInducedCopy, P4InC5) {
  Graph g = cycle_graph(5);
  auto x = find_induced_copy(g, path_graph(4));
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(is_copy(g, *x, path_graph(4)));
}

TEST(FindInducedCopy, NoP5InC5) { EXPECT_FALSE(find_induced_copy(cycle_graph(5), path_graph(5)).has_value()); }

TEST(FindInducedCopy, PatternLargerThanGraph) {
  EXPECT_FALSE(find_induced_copy(path_graph(2), path_graph(3)).has_value());
}

TEST(IsHFree, Examples) {
  EXPECT_TRUE(is_h_free(complete_graph(5), path_graph(3)));
  EXPECT_TRUE(is_h_free(cycle_graph(5), path_graph(5)));
  EXPECT_TRUE(is_h_free(cycle_graph(5), disjoint_union({path_graph(2), path_graph(2)})));
  EXPECT_FALSE(is_h_free(cycle_graph(6), disjoint_union({path_graph(2), path_graph(2)})));
  EXPECT_FALSE(is_h_free(petersen_graph(), claw_graph()));
}

TEST(FindInducedCopy, AgreesWithNaiveSearch) {
  const std::vector<Graph> patterns = {
      path_graph(3), path_graph(4), complete_graph(3), claw_graph(), fork_graph(), cycle_graph(4),
      disjoint_union({path_graph(2), path_graph(2)}), disjoint_union({complete_graph(3), path_graph(2)}),
      disjoint_union({path_graph(3), path_graph(3)}), disjoint_union({path_graph(1), path_graph(1), path_graph(1)}),
  };
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Rng rng(seed);
    Graph g = random_gnp(1 + rng.below(12), 0.1 + 0.8 * rng.unit(), rng);
    for (const auto& h : patterns) {
      auto x = find_induced_copy(g, h);
      ASSERT_EQ(x.has_value(), naive_contains(g, h)) << "seed " << seed;
      if (x) {
        EXPECT_TRUE(is_copy(g, *x, h));
      }
    }
  }
}

TEST(FindInducedCopy, WorksInsideSubgraphs) {
  Graph g = remove_vertex(path_graph(6), 2);  // 0-1   3-4-5
  auto x = find_induced_copy(g, path_graph(3));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, VertexSet(6, {3, 4, 5}));
}

TEST(FindInducedPath, ReturnsInducedPath) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    Rng rng(seed);
    Graph g = random_gnp(2 + rng.below(14), 0.3, rng);
    for (int k = 1; k <= 6; ++k) {
      auto p = find_induced_path(g, k);
      EXPECT_EQ(p.has_value(), naive_contains(g, path_graph(k)));
      if (p) {
        EXPECT_EQ(p->size(), static_cast<std::size_t>(k));
        EXPECT_TRUE(is_induced_path(g, *p));
      }
    }
  }
}

TEST(LongestInducedPathAtMost, Examples) {
  EXPECT_TRUE(longest_induced_path_at_most(complete_graph(6), 3));
  EXPECT_FALSE(longest_induced_path_at_most(path_graph(7), 7));
  EXPECT_TRUE(longest_induced_path_at_most(path_graph(7), 8));
  EXPECT_TRUE(longest_induced_path_at_most(cycle_graph(5), 5));
  EXPECT_FALSE(longest_induced_path_at_most(cycle_graph(5), 4));
  EXPECT_TRUE(is_pk_free(Graph(), 1));
  EXPECT_FALSE(is_pk_free(Graph(1, {}), 1));
}
