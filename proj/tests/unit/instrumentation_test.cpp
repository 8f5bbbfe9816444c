#include <gtest/gtest.h>

#include "mwis/instrumentation.hpp"
#include "mwis/verify.hpp"

using namespace mwis;

namespace {
RecurrenceParams alg1_params(int k) { return RecurrenceParams{RecurrenceParams::Algorithm::alg1, k, 1, 1}; }
}  // namespace

TEST(MeasureK, K2EmptyFamily) {
  Graph g = path_graph(2);
  MeasureK m = measure_k(g, VertexMultiFamily(2), 2, 5);
  EXPECT_EQ(m.separator_term, Int128{40000});
  EXPECT_EQ(m.level_term, Int128{0});
  EXPECT_EQ(m.family_term, Int128{8000});
  EXPECT_EQ(m.value, Int128{48000});
}

TEST(MeasureK, CapacityOneVanishes) {
  for (int k = 1; k <= 7; ++k) {
    EXPECT_EQ(measure_k(Graph(1, {}), VertexMultiFamily(1), 1, k).value, Int128{0});
    EXPECT_EQ(measure_k(Graph(), VertexMultiFamily(0), 1, k).value, Int128{0});
  }
}

TEST(MeasureK, LevelTermWeightsByPowerOfTwo) {
  Graph g = path_graph(4);
  VertexMultiFamily f(4);
  f.add(VertexSet(4, {0, 1}));
  f.add(VertexSet(4, {1}));
  MeasureK m = measure_k(g, f, 4, 1);
  EXPECT_EQ(m.level_term, Int128{2 + 2});
}

TEST(MeasureK, RejectsOversizedFamilyAndGraph) {
  Graph g = path_graph(2);
  VertexMultiFamily f(2);
  for (int j = 0; j < 11; ++j) f.add(VertexSet(2));
  EXPECT_THROW(measure_k(g, f, 2, 1), InvariantViolation);
  EXPECT_THROW(measure_k(path_graph(3), VertexMultiFamily(3), 2, 1), std::invalid_argument);
}

TEST(MeasureK, AtLeastVertexCount) {
  // Holds once N >= 2; at N = 1 every term carries a factor log N = 0.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Graph g = random_gnp(2 + rng.below(20), 0.3, rng);
    MeasureK m = measure_k(g, VertexMultiFamily(g.universe()), g.num_vertices(), 4);
    EXPECT_GE(m.value, static_cast<Int128>(g.num_vertices()));
  }
}

TEST(MeasureH, EmptyGraphTwoK2) {
  MeasureH m = measure_h(Graph(2, {}).restrict_to(VertexSet(2)), VertexMultiFamily(2), 2, 4, 2);
  EXPECT_EQ(m.size_term, Int128{0});
  EXPECT_EQ(m.value, Int128{128});
}

TEST(MeasureH, CapacityOneIsVertexCount) {
  EXPECT_EQ(measure_h(Graph(1, {}), VertexMultiFamily(1), 1, 4, 2).value, Int128{1});
}

TEST(MeasureH, AtLeastVertexCount) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Graph g = random_gnp(1 + rng.below(20), 0.3, rng);
    EXPECT_GE(measure_h(g, VertexMultiFamily(g.universe()), g.num_vertices(), 4, 2).value,
              static_cast<Int128>(g.num_vertices()));
  }
}

TEST(Recurrence, BranchDeleteBoundary) {
  EXPECT_FALSE(assert_recurrence_step(100, 99, Rule::branch_delete, alg1_params(3)).has_value());
  EXPECT_TRUE(assert_recurrence_step(100, 100, Rule::branch_delete, alg1_params(3)).has_value());
}

TEST(Recurrence, ComponentRecurseNeedsDecrease) {
  auto v = assert_recurrence_step(1000, 1000, Rule::component_recurse, alg1_params(3));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->rule, Rule::component_recurse);
  EXPECT_NE(v->describe().find("1000"), std::string::npos);
  EXPECT_FALSE(assert_recurrence_step(1000, 950, Rule::component_recurse, alg1_params(3)).has_value());
  EXPECT_TRUE(assert_recurrence_step(1000, 951, Rule::component_recurse, alg1_params(3)).has_value());
}

TEST(Recurrence, TakeAndAddBoundaries) {
  // μ = 1024: ⌈log₂μ⌉ = 10; k = 1: D = 2100 * 100, A = 2000.
  const Int128 mu = 1024;
  const Int128 d = 210000, a = 2000;
  // Largest child with child*D <= mu*(D-1) is floor(mu*(D-1)/D) = 1023.
  EXPECT_FALSE(assert_recurrence_step(mu, mu * (d - 1) / d, Rule::branch_take, alg1_params(1)).has_value());
  EXPECT_TRUE(assert_recurrence_step(mu, mu, Rule::branch_take, alg1_params(1)).has_value());
  EXPECT_FALSE(assert_recurrence_step(mu, mu * (a - 1) / a, Rule::add_separator, alg1_params(1)).has_value());
  EXPECT_TRUE(assert_recurrence_step(mu, mu, Rule::add_separator, alg1_params(1)).has_value());
  // |H| = 4, c = 2: A = 4 * 4 * 2 * 10 = 320.
  RecurrenceParams h{RecurrenceParams::Algorithm::alg2, 1, 4, 2};
  EXPECT_FALSE(assert_recurrence_step(mu, mu * 319 / 320, Rule::add_neighborhood, h).has_value());
  EXPECT_TRUE(assert_recurrence_step(mu, mu * 319 / 320 + 1, Rule::add_neighborhood, h).has_value());
}

TEST(Recurrence, NegativeMeasuresFail) {
  EXPECT_TRUE(assert_recurrence_step(-1, 0, Rule::base, alg1_params(1)).has_value());
}

TEST(RunStats, CheckCountsAndCapsMessages) {
  RunStats s;
  for (int i = 0; i < 40; ++i) s.check("a", false, "x");
  s.check("b", true);
  EXPECT_EQ(s.invariants["a"].checked, 40u);
  EXPECT_EQ(s.invariants["a"].violated, 40u);
  EXPECT_EQ(s.invariants["b"].violated, 0u);
  EXPECT_EQ(s.total_violations(), 40u);
  EXPECT_EQ(s.violation_messages.size(), RunStats::kMessageCap);
}

TEST(RunStats, TraceIsARingBuffer) {
  RunStats s;
  s.trace_capacity = 3;
  for (int i = 0; i < 5; ++i) s.trace(0, Rule::base, i);
  ASSERT_EQ(s.measure_trace.size(), 3u);
  EXPECT_EQ(s.measure_trace.front().call, 2u);
  EXPECT_EQ(s.measure_trace_total, 5u);
}

TEST(RunStats, MergeEqualsSequentialRecording) {
  RunStats seq, a;
  for (int i = 0; i < 3; ++i) {
    seq.trace(1, Rule::branch_delete, i);
    a.trace(1, Rule::branch_delete, i);
  }
  RunStats b = a.fork();
  for (int i = 3; i < 6; ++i) {
    seq.trace(2, Rule::branch_take, i);
    b.trace(2, Rule::branch_take, i);
  }
  seq.check("x", true);
  b.check("x", true);
  seq.calls = 6;
  a.calls = 3;
  b.calls = 3;
  seq.max_depth = 2;
  b.max_depth = 2;
  a.merge(b);
  EXPECT_EQ(a.calls, seq.calls);
  EXPECT_EQ(a.max_depth, seq.max_depth);
  EXPECT_EQ(a.invariants, seq.invariants);
  EXPECT_EQ(a.measure_trace, seq.measure_trace);
  EXPECT_EQ(a.measure_trace_total, seq.measure_trace_total);
}

TEST(AssertLevel, ParseAndPrint) {
  EXPECT_EQ(parse_assert_level("paranoid"), AssertLevel::paranoid);
  EXPECT_EQ(parse_assert_level("off"), AssertLevel::off);
  EXPECT_FALSE(parse_assert_level("loud").has_value());
  EXPECT_EQ(to_string(AssertLevel::fair), "fair");
  EXPECT_EQ(to_string(Rule::branch_take), "branch-take");
}

TEST(Int128, Printing) {
  EXPECT_EQ(to_string_i128(0), "0");
  EXPECT_EQ(to_string_i128(-42), "-42");
  EXPECT_EQ(to_string_i128(Int128{1} << 100), "1267650600228229401496703205376");
}
