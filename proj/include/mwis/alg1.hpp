#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwis/deep_stack.hpp"
#include "mwis/graph.hpp"
#include "mwis/induced.hpp"
#include "mwis/instrumentation.hpp"
#include "mwis/levels.hpp"
#include "mwis/separators.hpp"
#include "mwis/solver_common.hpp"

namespace mwis {

/// One ALG₁ call: (G, w, N, F).
struct Alg1Instance {
  Graph graph;
  WeightMap weights;
  std::uint64_t capacity = 0;
  VertexMultiFamily family;
};

namespace detail {

/// The four-rule recursion for P_k-free graphs. Correct on every input;
/// the k-dependent bounds are only checked when a k hint is supplied.
class Alg1Runner {
 public:
  Alg1Runner(const WeightMap& w, const SolverOptions& opt, TaskBudget* budget)
      : w_(w), opt_(opt), budget_(budget), checks_(opt.assert_level != AssertLevel::off),
        paranoid_(opt.assert_level == AssertLevel::paranoid), k_(opt.k_hint.value_or(0)) {}

  CallResult call(const Graph& g, std::uint64_t cap, const VertexMultiFamily& fam, std::uint32_t depth,
                  std::uint32_t adds, const ParentEdge* edge, RunStats& stats) const {
    ++stats.calls;
    stats.max_depth = std::max<std::uint64_t>(stats.max_depth, depth);
    stats.max_family_size = std::max<std::uint64_t>(stats.max_family_size, fam.size());
    const std::size_t n = g.num_vertices();

    if (n <= 1 && !checks_) return base(g, stats);
    if (cap == 0) return base(g, stats);

    std::optional<LevelView> levels;
    Int128 mu = 0;
    if (checks_) {
      levels.emplace(fam, cap);
      mu = entry_checks(g, cap, fam, *levels, edge, depth, stats);
    }

    // Rule 1.
    if (n <= 1) return base(g, stats);

    // Rule 2: every component fits in N/2.
    auto comps = connected_components(g);
    std::size_t biggest = comps[largest_component_index(comps)].size();
    if (2 * biggest <= cap) return recurse_components(g, comps, depth, mu, stats);

    // Rule 3.
    if (!levels) levels.emplace(fam, cap);
    if (auto b = find_branchable(g, *levels)) return branch(g, cap, fam, b->vertex, depth, mu, stats);

    // Rule 4.
    return add_separator(g, cap, fam, *levels, depth, adds, mu, stats);
  }

 private:
  CallResult base(const Graph& g, RunStats& stats) const {
    ++stats.base_cases;
    CallResult r{w_.total(g.vertices()), g.vertices(), true};
    return r;
  }

  Int128 entry_checks(const Graph& g, std::uint64_t cap, const VertexMultiFamily& fam, const LevelView& levels,
                      const ParentEdge* edge, std::uint32_t depth, RunStats& stats) const {
    const int lg = ceil_log2(cap);
    stats.note_level_sizes(levels);
    stats.check("top-level-empty", levels.level_size(lg + 1) == 0,
                "L(F, log N + 1) has " + std::to_string(levels.level_size(lg + 1)) + " vertices");
    const bool within = g.num_vertices() <= cap;
    stats.check("capacity-bound", within, "|V(G)| exceeds N");
    if (paranoid_) {
      const Ratio quarter = over_power_of_two(cap, 2);
      for (std::size_t j = 0; j < fam.size(); ++j)
        stats.check("fair-run-balanced-separator", verify_balanced(g, fam[j], quarter),
                    "member " + std::to_string(j) + " of F is not an N/4-balanced separator");
    }
    Int128 mu = 0;
    if (k_ > 0 && within) {
      const Int128 k = k_;
      const Int128 n = static_cast<Int128>(cap);
      stats.check("family-size", static_cast<Int128>(fam.size()) <= 10 * k * lg,
                  "|F| = " + std::to_string(fam.size()) + " > 10k log N");
      for (int i = 1; i <= levels.depth(); ++i) {
        Int128 lhs = static_cast<Int128>(levels.level_size(i)) << (i - 1);
        stats.check("level-size", lhs <= 8 * k * n * static_cast<Int128>(fam.size()),
                    "|L(F," + std::to_string(i) + ")| too large");
      }
      try {
        MeasureK m = measure_k(g, levels, fam.size(), k_);
        mu = m.value;
        stats.check("measure-nonnegative", m.value >= 0);
        stats.check("measure-upper-bound", m.value <= 1050 * k * k * n * lg * lg,
                    "mu = " + to_string_i128(m.value));
        if (edge) {
          RecurrenceParams p{RecurrenceParams::Algorithm::alg1, k_, 1, 1};
          auto v = assert_recurrence_step(edge->measure, m.value, edge->rule, p);
          stats.check("recurrence-" + std::string(to_string(edge->rule)), !v, v ? v->describe() : "");
        }
        stats.trace(depth, edge ? edge->rule : Rule::base, m.value);
      } catch (const InvariantViolation& e) {
        stats.check("measure-nonnegative", false, e.what());
      }
    }
    return mu;
  }

  CallResult recurse_components(const Graph& g, const std::vector<VertexSet>& comps, std::uint32_t depth, Int128 mu,
                                RunStats& stats) const {
    ++stats.component_recursions;
    stats.component_subcalls += comps.size();
    stats.max_component_fanout = std::max<std::uint64_t>(stats.max_component_fanout, comps.size());
    const ParentEdge edge{mu, Rule::component_recurse};
    const ParentEdge* ep = k_ > 0 ? &edge : nullptr;
    CallResult total{0, g.empty_set(), true};

    auto solve_one = [&](const VertexSet& c, RunStats& s) {
      return call(induced_subgraph(g, c), c.size(), VertexMultiFamily(g.universe()), depth + 1, 0, ep, s);
    };

    if (!budget_) {
      for (const auto& c : comps) {
        CallResult r = solve_one(c, stats);
        total.weight += r.weight;
        total.witness |= r.witness;
      }
      return total;
    }

    // Parallel: every component gets its own stats, merged back in order.
    std::vector<CallResult> results(comps.size());
    std::vector<RunStats> sub(comps.size(), stats.fork());
    std::vector<std::unique_ptr<DeepStackThread>> workers(comps.size());
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (j + 1 < comps.size() && budget_->try_acquire()) {
        workers[j] = std::make_unique<DeepStackThread>([&, j] {
          SlotGuard slot(budget_);
          results[j] = solve_one(comps[j], sub[j]);
        });
      } else {
        results[j] = solve_one(comps[j], sub[j]);
      }
    }
    for (auto& t : workers)
      if (t) t->join();
    for (std::size_t j = 0; j < comps.size(); ++j) {
      stats.merge(sub[j]);
      total.weight += results[j].weight;
      total.witness |= results[j].witness;
    }
    return total;
  }

  CallResult branch(const Graph& g, std::uint64_t cap, const VertexMultiFamily& fam, VertexId v, std::uint32_t depth,
                    Int128 mu, RunStats& stats) const {
    ++stats.branches;
    const ParentEdge del_edge{mu, Rule::branch_delete};
    const ParentEdge take_edge{mu, Rule::branch_take};
    const bool edges = k_ > 0;
    const VertexSet closed = g.closed_neighbors(v);

    auto run_take = [&](RunStats& s) {
      CallResult r = call(remove_vertices(g, closed), cap, family_subtract(fam, closed), depth + 1, 0,
                          edges ? &take_edge : nullptr, s);
      r.weight += w_[v];
      r.witness.insert(v);
      return r;
    };
    auto run_delete = [&](RunStats& s) {
      return call(remove_vertex(g, v), cap, family_subtract(fam, v), depth + 1, 0, edges ? &del_edge : nullptr, s);
    };

    if (budget_ && budget_->try_acquire()) {
      RunStats take_stats = stats.fork();
      CallResult take;
      DeepStackThread worker([&] {
        SlotGuard slot(budget_);
        take = run_take(take_stats);
      });
      CallResult del = run_delete(stats);
      worker.join();
      stats.merge(take_stats);
      return pick_branch(std::move(del), std::move(take));
    }
    CallResult del = run_delete(stats);
    CallResult take = run_take(stats);
    return pick_branch(std::move(del), std::move(take));
  }

  CallResult add_separator(const Graph& g, std::uint64_t cap, const VertexMultiFamily& fam, const LevelView& levels,
                           std::uint32_t depth, std::uint32_t adds, Int128 mu, RunStats& stats) const {
    ++stats.separators_added;
    const std::uint32_t run = adds + 1;
    stats.max_consecutive_adds = std::max<std::uint64_t>(stats.max_consecutive_adds, run);
    SeparatorCore x = balanced_separator_core(g, 2);
    VertexSet sep = closed_neighborhood(g, x.core);
    VertexMultiFamily next = fam.with(sep);
    if (checks_) {
      stats.check("consecutive-adds", run <= consecutive_add_bound(g.num_vertices(), cap));
      stats.check("separator-nonempty", !sep.empty());
      if (k_ > 0) {
        stats.check("separator-core-size", x.core.size() <= static_cast<std::size_t>(8 * k_),
                    "|X| = " + std::to_string(x.core.size()) + " > 8k");
        LevelView after(next, cap);
        const Int128 bound = 8 * Int128{k_} * static_cast<Int128>(cap);
        for (int i = 1; i <= after.depth(); ++i) {
          Int128 grow = static_cast<Int128>(after.level_size(i)) - static_cast<Int128>(levels.level_size(i));
          stats.check("level-growth", (grow << (i - 1)) <= bound,
                      "level " + std::to_string(i) + " grew by " + to_string_i128(grow));
        }
      }
    }
    const ParentEdge edge{mu, Rule::add_separator};
    return call(g, cap, next, depth + 1, run, k_ > 0 ? &edge : nullptr, stats);
  }

  const WeightMap& w_;
  const SolverOptions& opt_;
  TaskBudget* budget_;
  bool checks_;
  bool paranoid_;
  int k_;
};

inline void validate_alg1(const Graph& g, const WeightMap& w, const SolverOptions& opt) {
  require_weights_cover(g, w);
  if (opt.k_hint && *opt.k_hint < 1) throw std::invalid_argument("k hint must be >= 1");
}

inline SolveResult run_alg1(const Alg1Instance& inst, const SolverOptions& opt) {
  SolveResult out;
  out.stats.trace_capacity = opt.trace_capacity;
  std::unique_ptr<TaskBudget> budget = opt.threads > 1 ? std::make_unique<TaskBudget>(opt.threads) : nullptr;
  Alg1Runner runner(inst.weights, opt, budget.get());
  CallResult r = run_on_deep_stack(
      [&] { return runner.call(inst.graph, inst.capacity, inst.family, 0, 0, nullptr, out.stats); });
  out.weight = r.weight;
  out.witness = std::move(r.witness);
  out.witness_available = r.witness_available;
  if (opt.assert_level != AssertLevel::off) check_witness(inst.graph, inst.weights, out, out.stats);
  return out;
}

}  // namespace detail

/// Runs ALG₁ on an arbitrary instance (G, w, N, F).
inline SolveResult alg1_call(const Alg1Instance& inst, const SolverOptions& opt = {}) {
  detail::validate_alg1(inst.graph, inst.weights, opt);
  if (inst.family.universe() != inst.graph.universe() && !inst.family.empty())
    throw std::invalid_argument("family universe does not match the graph");
  Alg1Instance copy = inst;
  if (copy.family.universe() != copy.graph.universe()) copy.family = VertexMultiFamily(copy.graph.universe());
  return detail::run_alg1(copy, opt);
}

/// Maximum weight independent set via ALG₁ rooted at (G, w, |V(G)|, ∅).
/// The result is exact for every graph; `k_hint` (through opt) only turns on
/// the P_k-free bound checks. Paranoid mode verifies the hint first.
inline SolveResult solve_pkfree(const Graph& g, const WeightMap& w, const SolverOptions& opt = {}) {
  detail::validate_alg1(g, w, opt);
  if (opt.k_hint && opt.assert_level == AssertLevel::paranoid && !is_pk_free(g, *opt.k_hint))
    throw std::invalid_argument("graph is not P" + std::to_string(*opt.k_hint) + "-free");
  return detail::run_alg1(Alg1Instance{g, w, g.num_vertices(), VertexMultiFamily(g.universe())}, opt);
}

}  // namespace mwis
