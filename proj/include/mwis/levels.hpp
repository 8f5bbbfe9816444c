#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mwis/graph.hpp"
#include "mwis/separators.hpp"

namespace mwis {

/// ⌈log₂ x⌉ for x >= 1; ceil_log2(1) == 0.
inline int ceil_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("ceil_log2(0) is undefined");
  return x == 1 ? 0 : 64 - std::countl_zero(x - 1);
}

/// Ordered multiset of vertex sets. Empty members are kept and counted.
class VertexMultiFamily {
 public:
  explicit VertexMultiFamily(std::size_t universe = 0) : universe_(universe) {}

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const VertexSet& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<VertexSet>& members() const { return members_; }

  void add(VertexSet s) {
    if (s.universe() != universe_) throw std::invalid_argument("family member over a different universe");
    members_.push_back(std::move(s));
  }
  /// F ∪ {s}, multiplicities added.
  VertexMultiFamily with(VertexSet s) const {
    VertexMultiFamily f = *this;
    f.add(std::move(s));
    return f;
  }

  friend bool operator==(const VertexMultiFamily&, const VertexMultiFamily&) = default;

 private:
  std::size_t universe_;
  std::vector<VertexSet> members_;
};

/// F - X: every member replaced by S \ X; order and count preserved.
inline VertexMultiFamily family_subtract(const VertexMultiFamily& f, const VertexSet& x) {
  VertexMultiFamily out(f.universe());
  for (const auto& s : f.members()) out.add(s - x);
  return out;
}

inline VertexMultiFamily family_subtract(const VertexMultiFamily& f, VertexId v) {
  VertexSet x(f.universe());
  x.insert(v);
  return family_subtract(f, x);
}

/// Number of members containing each vertex, indexed by id.
inline std::vector<std::uint32_t> multiplicities(const VertexMultiFamily& f) {
  std::vector<std::uint32_t> count(f.universe(), 0);
  for (const auto& s : f.members())
    for (VertexId v : s) ++count[v];
  return count;
}

/// L(F, i): vertices lying in at least i members.
inline VertexSet level_set(const VertexMultiFamily& f, int i) {
  if (i < 1) throw std::invalid_argument("level index must be >= 1");
  auto count = multiplicities(f);
  VertexSet out(f.universe());
  for (std::size_t v = 0; v < count.size(); ++v)
    if (count[v] >= static_cast<std::uint32_t>(i)) out.insert(static_cast<VertexId>(v));
  return out;
}

/// Δ_i = N / 2^i.
inline Ratio branch_threshold(std::uint64_t capacity, int i) {
  if (capacity < 1) throw std::invalid_argument("capacity N must be >= 1");
  if (i < 1) throw std::invalid_argument("threshold index must be >= 1");
  return over_power_of_two(capacity, i);
}

/// All non-empty level sets of a family, relative to a capacity N.
class LevelView {
 public:
  LevelView(const VertexMultiFamily& family, std::uint64_t capacity)
      : capacity_(capacity), universe_(family.universe()) {
    if (capacity < 1) throw std::invalid_argument("capacity N must be >= 1");
    auto count = multiplicities(family);
    std::uint32_t top = count.empty() ? 0 : *std::max_element(count.begin(), count.end());
    levels_.assign(top, VertexSet(family.universe()));
    for (std::size_t v = 0; v < count.size(); ++v)
      for (std::uint32_t i = 0; i < count[v]; ++i) levels_[i].insert(static_cast<VertexId>(v));
  }

  std::uint64_t capacity() const { return capacity_; }
  /// Largest i with L(F, i) non-empty (0 for an empty family).
  int depth() const { return static_cast<int>(levels_.size()); }
  std::size_t level_size(int i) const { return i >= 1 && i <= depth() ? levels_[i - 1].size() : 0; }
  /// L(F, i); empty set for i beyond depth().
  VertexSet level(int i) const {
    if (i < 1) throw std::invalid_argument("level index must be >= 1");
    if (i > depth()) return VertexSet(universe_);
    return levels_[i - 1];
  }
  const VertexSet* level_ptr(int i) const { return i >= 1 && i <= depth() ? &levels_[i - 1] : nullptr; }

  /// Σ_i |L(F, i)| · 2^(i-1), i.e. Σ_i |L(F,i)| · N/Δ_{i-1}.
  unsigned __int128 weighted_level_mass() const {
    unsigned __int128 sum = 0;
    for (int i = 1; i <= depth(); ++i) sum += static_cast<unsigned __int128>(level_size(i)) << (i - 1);
    return sum;
  }

  /// Highest level searched for branchable vertices: ⌈log₂N⌉ + 1.
  int search_cap() const { return ceil_log2(capacity_) + 1; }

 private:
  std::uint64_t capacity_;
  std::size_t universe_;
  std::vector<VertexSet> levels_;
};

struct BranchableVertex {
  VertexId vertex = 0;
  /// Level i witnessing the violation |N[v] ∩ L(F,i)| >= Δ_i.
  int level = 0;
  /// max_i |N[v] ∩ L(F,i)| · 2^i over witnessing levels.
  unsigned __int128 score = 0;
};

/// A vertex v with |N[v] ∩ L(F,i)| · 2^i >= N for some 1 <= i <= ⌈log₂N⌉+1.
/// Picks the largest normalized violation, then the smallest id.
inline std::optional<BranchableVertex> find_branchable(const Graph& g, const LevelView& view) {
  std::optional<BranchableVertex> best;
  const int cap = std::min(view.search_cap(), view.depth());
  const unsigned __int128 n = view.capacity();
  for (VertexId v : g.vertices()) {
    for (int i = 1; i <= cap; ++i) {
      const VertexSet* level = view.level_ptr(i);
      unsigned __int128 score = static_cast<unsigned __int128>(g.closed_neighbors_in(v, *level)) << i;
      if (score < n) continue;
      if (!best || score > best->score) best = BranchableVertex{v, i, score};
    }
  }
  return best;
}

}  // namespace mwis
