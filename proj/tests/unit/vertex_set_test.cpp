#include <gtest/gtest.h>

#include "mwis/vertex_set.hpp"

using mwis::VertexId;
using mwis::VertexSet;

TEST(VertexSet, InsertEraseContains) {
  VertexSet s(130);
  EXPECT_TRUE(s.empty());
  s.insert(0);
  s.insert(64);
  s.insert(129);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(63));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_EQ(s.to_vector(), (std::vector<VertexId>{0, 129}));
}

TEST(VertexSet, IterationIsAscending) {
  VertexSet s(200, {150, 3, 77, 64, 63});
  EXPECT_EQ(s.to_vector(), (std::vector<VertexId>{3, 63, 64, 77, 150}));
  EXPECT_EQ(s.first(), 3u);
  EXPECT_EQ(VertexSet(10).first(), 10u);
}

TEST(VertexSet, FullHasNoBitsPastUniverse) {
  VertexSet f = VertexSet::full(70);
  EXPECT_EQ(f.size(), 70u);
  EXPECT_EQ(f, VertexSet::from_range(70, f.to_vector()));
  EXPECT_EQ(VertexSet::full(0).size(), 0u);
}

TEST(VertexSet, SetAlgebra) {
  VertexSet a(10, {1, 2, 3}), b(10, {3, 4});
  EXPECT_EQ((a | b).to_vector(), (std::vector<VertexId>{1, 2, 3, 4}));
  EXPECT_EQ((a & b).to_vector(), (std::vector<VertexId>{3}));
  EXPECT_EQ((a - b).to_vector(), (std::vector<VertexId>{1, 2}));
  EXPECT_EQ(a.intersection_size(b), 1u);
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE(VertexSet(10, {1, 3}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
}

TEST(VertexSet, RejectsOutOfRangeAndMismatchedUniverse) {
  VertexSet s(5);
  EXPECT_THROW(s.insert(5), std::out_of_range);
  EXPECT_THROW(s |= VertexSet(6), std::invalid_argument);
}
