#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace mwis {

using VertexId = std::uint32_t;

/// Fixed-universe bitset of vertex ids.
///
/// Every graph derived from one root shares the root's universe, so sets
/// taken from different induced subgraphs can be combined directly. Binary
/// operations require equal universes. Iteration is in increasing id order.
class VertexSet {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t kBlockBits = 64;

  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), blocks_((universe + kBlockBits - 1) / kBlockBits, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<VertexId> ids) : VertexSet(universe) {
    for (VertexId v : ids) insert(v);
  }
  template <typename Range>
  static VertexSet from_range(std::size_t universe, const Range& ids) {
    VertexSet s(universe);
    for (auto v : ids) s.insert(static_cast<VertexId>(v));
    return s;
  }
  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (auto& b : s.blocks_) b = ~Block{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(VertexId v) const {
    return v < universe_ && ((blocks_[v / kBlockBits] >> (v % kBlockBits)) & 1U) != 0;
  }
  void insert(VertexId v) {
    check_id(v);
    blocks_[v / kBlockBits] |= Block{1} << (v % kBlockBits);
  }
  void erase(VertexId v) {
    if (v < universe_) blocks_[v / kBlockBits] &= ~(Block{1} << (v % kBlockBits));
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (Block b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
    return n;
  }
  bool empty() const {
    for (Block b : blocks_)
      if (b != 0) return false;
    return true;
  }

  /// Smallest member, or universe() when empty.
  VertexId first() const { return next(0); }
  /// Smallest member >= from, or universe() when none.
  VertexId next(std::size_t from) const {
    if (from >= universe_) return static_cast<VertexId>(universe_);
    std::size_t bi = from / kBlockBits;
    Block b = blocks_[bi] & (~Block{0} << (from % kBlockBits));
    while (true) {
      if (b != 0) return static_cast<VertexId>(bi * kBlockBits + static_cast<std::size_t>(std::countr_zero(b)));
      if (++bi == blocks_.size()) return static_cast<VertexId>(universe_);
      b = blocks_[bi];
    }
  }

  std::size_t intersection_size(const VertexSet& o) const {
    check_same(o);
    std::size_t n = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      n += static_cast<std::size_t>(std::popcount(blocks_[i] & o.blocks_[i]));
    return n;
  }
  bool intersects(const VertexSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((blocks_[i] & o.blocks_[i]) != 0) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((blocks_[i] & ~o.blocks_[i]) != 0) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.blocks_ == b.blocks_;
  }

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = VertexId;
    using difference_type = std::ptrdiff_t;
    using pointer = const VertexId*;
    using reference = VertexId;

    const_iterator() = default;
    const_iterator(const VertexSet* s, VertexId pos) : set_(s), pos_(pos) {}
    VertexId operator*() const { return pos_; }
    const_iterator& operator++() {
      pos_ = set_->next(static_cast<std::size_t>(pos_) + 1);
      return *this;
    }
    const_iterator operator++(int) {
      auto c = *this;
      ++*this;
      return c;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.pos_ == b.pos_; }

   private:
    const VertexSet* set_ = nullptr;
    VertexId pos_ = 0;
  };
  const_iterator begin() const { return {this, first()}; }
  const_iterator end() const { return {this, static_cast<VertexId>(universe_)}; }

  std::vector<VertexId> to_vector() const { return {begin(), end()}; }

 private:
  void check_id(VertexId v) const {
    if (v >= universe_) throw std::out_of_range("vertex id outside the set universe");
  }
  void check_same(const VertexSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("vertex sets over different universes");
  }
  void trim() {
    if (universe_ % kBlockBits != 0 && !blocks_.empty())
      blocks_.back() &= (Block{1} << (universe_ % kBlockBits)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<Block> blocks_;
};

}  // namespace mwis
