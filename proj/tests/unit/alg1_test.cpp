#include <gtest/gtest.h>

#include "mwis/alg1.hpp"
#include "mwis/induced.hpp"
#include "mwis/report.hpp"
#include "mwis/verify.hpp"

using namespace mwis;

namespace {

SolverOptions paranoid(std::optional<int> k = std::nullopt) {
  SolverOptions o;
  o.assert_level = AssertLevel::paranoid;
  o.k_hint = k;
  return o;
}

void expect_sound(const Graph& g, const WeightMap& w, const SolveResult& r) {
  EXPECT_TRUE(r.witness_available);
  EXPECT_TRUE(is_independent(g, r.witness));
  EXPECT_EQ(w.total(r.witness), r.weight);
  EXPECT_EQ(r.stats.total_violations(), 0u);
}

}  // namespace

TEST(SolvePkfree, EmptyGraph) {
  SolveResult r = solve_pkfree(Graph(), WeightMap(std::vector<Weight>{}), paranoid());
  EXPECT_EQ(r.weight, 0);
  EXPECT_TRUE(r.witness.empty());
}

TEST(SolvePkfree, SingleVertex) {
  SolveResult r = solve_pkfree(Graph(1, {}), WeightMap({9}), paranoid(2));
  EXPECT_EQ(r.weight, 9);
  EXPECT_EQ(r.witness, VertexSet(1, {0}));
}

TEST(SolvePkfree, ZeroWeightVertexMayBeTaken) {
  SolveResult r = solve_pkfree(Graph(1, {}), WeightMap({0}), paranoid());
  EXPECT_EQ(r.weight, 0);
  EXPECT_LE(r.witness.size(), 1u);
}

TEST(SolvePkfree, P3HeavyMiddle) {
  Graph g = path_graph(3);
  WeightMap w({1, 5, 1});
  SolveResult r = solve_pkfree(g, w, paranoid(4));
  EXPECT_EQ(r.weight, 5);
  EXPECT_EQ(r.witness, VertexSet(3, {1}));
  expect_sound(g, w, r);
}

TEST(SolvePkfree, C5Unit) {
  Graph g = cycle_graph(5);
  WeightMap w = WeightMap::uniform(5);
  SolveResult r = solve_pkfree(g, w, paranoid(5));
  EXPECT_EQ(r.weight, 2);
  EXPECT_EQ(r.witness.size(), 2u);
  expect_sound(g, w, r);
}

TEST(SolvePkfree, Petersen) {
  Graph g = petersen_graph();
  SolveResult r = solve_pkfree(g, WeightMap::uniform(10), paranoid());
  EXPECT_EQ(r.weight, 4);
}

TEST(SolvePkfree, RejectsFalseHintInParanoidMode) {
  EXPECT_THROW(solve_pkfree(path_graph(5), WeightMap::uniform(5), paranoid(4)), std::invalid_argument);
  SolverOptions fair;
  fair.k_hint = 4;
  EXPECT_NO_THROW(solve_pkfree(path_graph(5), WeightMap::uniform(5), fair));
  EXPECT_THROW(solve_pkfree(path_graph(3), WeightMap::uniform(2)), std::invalid_argument);
  EXPECT_THROW(solve_pkfree(path_graph(3), WeightMap::uniform(3), paranoid(0)), std::invalid_argument);
}

TEST(SolvePkfree, WorksOnInducedSubgraphs) {
  Graph g = remove_vertices(petersen_graph(), VertexSet(10, {0, 1}));
  WeightMap w = WeightMap::uniform(10);
  SolveResult r = solve_pkfree(g, w, paranoid());
  EXPECT_EQ(r.weight, brute_force_mwis(g, w).weight);
  expect_sound(g, w, r);
}

TEST(SolvePkfree, MatchesBruteForceOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(16);
    const double p[] = {0.1, 0.3, 0.5, 0.8};
    Graph g = random_gnp(n, p[seed % 4], rng);
    WeightMap w = random_weights(n, 0, 100, rng);
    SolveResult r = solve_pkfree(g, w, paranoid());
    ASSERT_EQ(r.weight, brute_force_mwis(g, w).weight) << "seed " << seed;
    expect_sound(g, w, r);
  }
}

TEST(SolvePkfree, BoundChecksHoldOnCographs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Graph g = random_cograph(10 + rng.below(30), rng);
    WeightMap w = random_weights(g.universe(), 1, 50, rng);
    SolveResult r = solve_pkfree(g, w, paranoid(4));
    expect_sound(g, w, r);
    EXPECT_GT(r.stats.invariants["measure-upper-bound"].checked, 0u);
    EXPECT_EQ(r.weight, brute_force_mwis(g, w, 64).weight);
  }
}

TEST(Alg1Call, K2HandTrace) {
  Graph g = path_graph(2);
  SolverOptions o = paranoid(2);
  SolveResult r = alg1_call({g, WeightMap::uniform(2), 2, VertexMultiFamily(2)}, o);
  EXPECT_EQ(r.weight, 1);
  EXPECT_EQ(r.stats.separators_added, 1u);
  EXPECT_EQ(r.stats.branches, 1u);
  EXPECT_EQ(r.stats.component_recursions, 0u);
  // Ties keep the delete branch: vertex 0 is dropped.
  EXPECT_EQ(r.witness, VertexSet(2, {1}));
  EXPECT_EQ(r.stats.total_violations(), 0u);
}

TEST(Alg1Call, TwoTrianglesUseComponentRule) {
  Graph g = disjoint_union({complete_graph(3), complete_graph(3)});
  SolveResult r = alg1_call({g, WeightMap::uniform(6), 6, VertexMultiFamily(6)}, paranoid(3));
  EXPECT_EQ(r.weight, 2);
  EXPECT_EQ(r.stats.component_recursions, 1u);
  EXPECT_EQ(r.stats.component_subcalls, 2u);
  EXPECT_EQ(r.stats.total_violations(), 0u);
}

TEST(Alg1Call, BranchResultDominatesDeleteBranch) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t n = 3 + rng.below(10);
    Graph g = random_gnp(n, 0.4, rng);
    WeightMap w = random_weights(n, 0, 20, rng);
    VertexMultiFamily f(n);
    for (int j = 0; j < 3; ++j) {
      VertexSet s(n);
      for (VertexId v = 0; v < n; ++v)
        if (rng.bernoulli(0.6)) s.insert(v);
      f.add(s);
    }
    const std::uint64_t cap = n;
    auto b = find_branchable(g, LevelView(f, cap));
    SolverOptions off;
    off.assert_level = AssertLevel::off;
    SolveResult full = alg1_call({g, w, cap, f}, off);
    EXPECT_EQ(full.weight, brute_force_mwis(g, w).weight);
    if (!b) continue;
    SolveResult del = alg1_call({remove_vertex(g, b->vertex), w, cap, family_subtract(f, b->vertex)}, off);
    EXPECT_GE(full.weight, del.weight);
  }
}

TEST(Alg1Call, RejectsMismatchedFamily) {
  VertexMultiFamily f(3);
  f.add(VertexSet(3));
  EXPECT_THROW(alg1_call({path_graph(2), WeightMap::uniform(2), 2, f}), std::invalid_argument);
}

TEST(Alg1Call, ChecksOffStillExact) {
  SolverOptions off;
  off.assert_level = AssertLevel::off;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    Graph g = random_gnp(1 + rng.below(14), 0.4, rng);
    WeightMap w = random_weights(g.universe(), 0, 9, rng);
    SolveResult r = solve_pkfree(g, w, off);
    EXPECT_EQ(r.weight, brute_force_mwis(g, w).weight);
    EXPECT_TRUE(r.stats.invariants.empty());
  }
}

TEST(Parallel, SameResultAndStatsAsSequential) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Graph g = seed % 2 ? random_cograph(30, rng) : random_gnp(16, 0.3, rng);
    WeightMap w = random_weights(g.universe(), 0, 100, rng);
    SolverOptions seq = paranoid();
    SolverOptions par = seq;
    par.threads = 4;
    SolveResult a = solve_pkfree(g, w, seq);
    SolveResult b = solve_pkfree(g, w, par);
    EXPECT_EQ(a.weight, b.weight);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(dump_report(solve_report("solve", a, AssertLevel::paranoid, {true, true})),
              dump_report(solve_report("solve", b, AssertLevel::paranoid, {true, true})));
  }
}

namespace {
// Each frame pins a buffer so the compiler cannot turn this into a loop.
std::uint64_t deep(std::uint64_t n) {
  volatile char pad[512];
  pad[0] = static_cast<char>(n);
  return n == 0 ? static_cast<std::uint64_t>(pad[0]) : 1 + deep(n - 1);
}
}  // namespace

TEST(DeepStack, RecursionBeyondDefaultStack) {
  // About 100 MiB of frames; far beyond an 8 MiB default stack.
  EXPECT_EQ(run_on_deep_stack([] { return deep(200000); }), 200000u);
}

TEST(DeepStack, ExceptionsPropagate) {
  EXPECT_THROW(run_on_deep_stack([]() -> int { throw std::runtime_error("boom"); }), std::runtime_error);
}

TEST(SolvePkfree, ModeratePath) {
  Graph g = path_graph(24);
  WeightMap w = WeightMap::uniform(24);
  SolveResult r = solve_pkfree(g, w, paranoid(25));
  EXPECT_EQ(r.weight, 12);
  EXPECT_EQ(r.stats.total_violations(), 0u);
}
