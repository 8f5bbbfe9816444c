#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>

#include "mwis/graph.hpp"
#include "mwis/instrumentation.hpp"

namespace mwis {

struct SolverOptions {
  AssertLevel assert_level = AssertLevel::fair;
  /// ALG₁: the caller asserts the root is P_k-free; enables k-dependent checks.
  std::optional<int> k_hint;
  /// ALG₂: the caller asserts the root is H-free; enables the fair-run bounds.
  bool h_free_hint = false;
  /// Worker threads for independent branches; 1 runs sequentially.
  unsigned threads = 1;
  std::size_t trace_capacity = 256;
};

struct SolveResult {
  Weight weight = 0;
  VertexSet witness;
  /// False only when an ALG₂ oracle returned a weight without a witness.
  bool witness_available = true;
  RunStats stats;
};

namespace detail {

struct CallResult {
  Weight weight = 0;
  VertexSet witness;
  bool witness_available = true;
};

/// Measure of the calling instance and the rule that produced the child.
struct ParentEdge {
  Int128 measure = 0;
  Rule rule = Rule::base;
};

/// Spare worker slots shared by one solve.
class TaskBudget {
 public:
  explicit TaskBudget(unsigned threads) : free_(threads > 1 ? static_cast<int>(threads) - 1 : 0) {}
  bool try_acquire() {
    int cur = free_.load();
    while (cur > 0)
      if (free_.compare_exchange_weak(cur, cur - 1)) return true;
    return false;
  }
  void release() { free_.fetch_add(1); }

 private:
  std::atomic<int> free_;
};

/// Returns an acquired slot on scope exit.
class SlotGuard {
 public:
  explicit SlotGuard(TaskBudget* b) : budget_(b) {}
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;
  ~SlotGuard() { budget_->release(); }

 private:
  TaskBudget* budget_;
};

// Picks the better of the delete/take branches; ties stay with delete.
inline CallResult pick_branch(CallResult del, CallResult take) {
  return take.weight > del.weight ? std::move(take) : std::move(del);
}

inline void check_witness(const Graph& g, const WeightMap& w, const SolveResult& r, RunStats& stats) {
  if (!r.witness_available) return;
  stats.check("witness-independent", is_independent(g, r.witness));
  stats.check("witness-weight", w.total(r.witness) == r.weight,
              "witness weighs " + std::to_string(w.total(r.witness)) + ", reported " + std::to_string(r.weight));
}

/// Upper bound on consecutive separator/neighborhood additions.
inline std::uint64_t consecutive_add_bound(std::size_t vertices, std::uint64_t capacity) {
  return static_cast<std::uint64_t>(vertices) * static_cast<std::uint64_t>(std::max(1, ceil_log2(capacity)));
}

}  // namespace detail

}  // namespace mwis
