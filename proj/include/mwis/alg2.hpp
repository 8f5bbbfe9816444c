#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwis/alg1.hpp"
#include "mwis/deep_stack.hpp"
#include "mwis/graph.hpp"
#include "mwis/induced.hpp"
#include "mwis/instrumentation.hpp"
#include "mwis/levels.hpp"
#include "mwis/solver_common.hpp"
#include "mwis/verify.hpp"

namespace mwis {

/// H = H_0 + ... + H_{c-1}, components ordered by smallest vertex id.
struct PatternGraph {
  Graph whole;
  std::vector<Graph> components;
  std::size_t total_size = 0;

  static PatternGraph from_graph(const Graph& h) {
    if (h.empty()) throw std::invalid_argument("pattern graph must be non-empty");
    PatternGraph p{h, {}, h.num_vertices()};
    for (const auto& c : connected_components(h)) p.components.push_back(induced_subgraph(h, c));
    return p;
  }
  std::size_t component_count() const { return components.size(); }
};

struct OracleResult {
  Weight weight = 0;
  std::optional<VertexSet> witness;
};

/// MWIS oracle for H_i-free graphs. Behavior on inputs that contain H_i is
/// unspecified; ALG₂ only calls it on H_i-free graphs.
struct ComponentOracle {
  std::string name;
  std::function<OracleResult(const Graph&, const WeightMap&)> callable;
  std::optional<Graph> claimed_pattern;
  /// Serial oracles are never invoked concurrently.
  bool serial = false;
  std::shared_ptr<std::mutex> lock = std::make_shared<std::mutex>();

  OracleResult operator()(const Graph& g, const WeightMap& w) const {
    if (serial) {
      std::lock_guard<std::mutex> hold(*lock);
      return callable(g, w);
    }
    return callable(g, w);
  }
};

/// Exact exponential-time oracle for any pattern, capped at `cap` vertices.
inline ComponentOracle make_bruteforce_oracle(std::size_t cap = default_brute_force_cap()) {
  ComponentOracle o;
  o.name = "bruteforce";
  o.callable = [cap](const Graph& g, const WeightMap& w) {
    MwisSolution s = brute_force_mwis(g, w, cap);
    return OracleResult{s.weight, std::move(s.witness)};
  };
  return o;
}

/// Oracle for a P_k component, backed by ALG₁.
inline ComponentOracle make_pk_oracle(int k, SolverOptions inner = {AssertLevel::off, std::nullopt, false, 1, 0}) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  ComponentOracle o;
  o.name = "pk:" + std::to_string(k);
  o.claimed_pattern = path_graph(static_cast<std::size_t>(k));
  o.callable = [inner](const Graph& g, const WeightMap& w) {
    SolveResult r = solve_pkfree(g, w, inner);
    return OracleResult{r.weight, std::move(r.witness)};
  };
  return o;
}

namespace detail {

class Alg2Runner {
 public:
  Alg2Runner(const PatternGraph& h, const std::vector<ComponentOracle>& oracles, const WeightMap& w,
             const SolverOptions& opt, std::uint64_t cap, TaskBudget* budget)
      : h_(h), oracles_(oracles), w_(w), opt_(opt), cap_(cap), budget_(budget),
        checks_(opt.assert_level != AssertLevel::off), paranoid_(opt.assert_level == AssertLevel::paranoid),
        fair_(opt.h_free_hint && cap > 1) {}

  CallResult call(const Graph& g, const VertexMultiFamily& fam, std::uint32_t depth, std::uint32_t adds,
                  const ParentEdge* edge, RunStats& stats) const {
    ++stats.calls;
    stats.max_depth = std::max<std::uint64_t>(stats.max_depth, depth);
    stats.max_family_size = std::max<std::uint64_t>(stats.max_family_size, fam.size());
    const std::size_t c = h_.component_count();
    const std::size_t i = fam.size() % c;
    if (cap_ == 0) return oracle(g, i, stats);

    LevelView levels(fam, cap_);
    Int128 mu = checks_ ? entry_checks(g, fam, levels, edge, depth, stats) : 0;

    if (auto b = find_branchable(g, levels)) return branch(g, fam, b->vertex, depth, mu, stats);

    if (auto x = find_induced_copy(g, h_.components[i])) {
      ++stats.neighborhoods_added;
      const std::uint32_t run = adds + 1;
      stats.max_consecutive_adds = std::max<std::uint64_t>(stats.max_consecutive_adds, run);
      stats.record_copy(*x);
      VertexSet nbhd = closed_neighborhood(g, *x);
      VertexMultiFamily next = fam.with(nbhd);
      if (checks_) {
        stats.check("consecutive-adds", run <= consecutive_add_bound(g.num_vertices(), cap_));
        LevelView after(next, cap_);
        const Int128 bound = static_cast<Int128>(h_.total_size) * static_cast<Int128>(cap_);
        for (int lvl = 1; lvl <= after.depth(); ++lvl) {
          Int128 grow = static_cast<Int128>(after.level_size(lvl)) - static_cast<Int128>(levels.level_size(lvl));
          stats.check("level-growth", (grow << (lvl - 1)) <= bound,
                      "level " + std::to_string(lvl) + " grew by " + to_string_i128(grow));
        }
      }
      const ParentEdge e{mu, Rule::add_neighborhood};
      return call(g, next, depth + 1, run, fair_ ? &e : nullptr, stats);
    }
    return oracle(g, i, stats);
  }

 private:
  Int128 entry_checks(const Graph& g, const VertexMultiFamily& fam, const LevelView& levels, const ParentEdge* edge,
                      std::uint32_t depth, RunStats& stats) const {
    const int lg = ceil_log2(cap_);
    stats.note_level_sizes(levels);
    stats.check("top-level-empty", levels.level_size(lg + 1) == 0,
                "L(F, log N + 1) has " + std::to_string(levels.level_size(lg + 1)) + " vertices");
    if (!fair_) return 0;
    const Int128 h = static_cast<Int128>(h_.total_size);
    const Int128 c = static_cast<Int128>(h_.component_count());
    const Int128 n = static_cast<Int128>(cap_);
    stats.check("family-size", static_cast<Int128>(fam.size()) < c * h * lg,
                "|F| = " + std::to_string(fam.size()) + " >= c|H| log N");
    for (int i = 1; i <= levels.depth(); ++i) {
      Int128 lhs = static_cast<Int128>(levels.level_size(i)) << (i - 1);
      stats.check("level-size", lhs <= h * n * static_cast<Int128>(fam.size()),
                  "|L(F," + std::to_string(i) + ")| too large");
    }
    Int128 mu = 0;
    try {
      MeasureH m = measure_h(g, levels, fam.size(), h_.total_size, h_.component_count());
      mu = m.value;
      stats.check("measure-nonnegative", m.value >= 0);
      stats.check("measure-upper-bound", m.value <= 4 * h * h * c * n * lg * lg, "mu = " + to_string_i128(m.value));
      if (edge) {
        RecurrenceParams p{RecurrenceParams::Algorithm::alg2, 1, h_.total_size, h_.component_count()};
        auto v = assert_recurrence_step(edge->measure, m.value, edge->rule, p);
        stats.check("recurrence-" + std::string(to_string(edge->rule)), !v, v ? v->describe() : "");
      }
      stats.trace(depth, edge ? edge->rule : Rule::base, m.value);
    } catch (const InvariantViolation& e) {
      stats.check("measure-nonnegative", false, e.what());
    }
    return mu;
  }

  CallResult oracle(const Graph& g, std::size_t i, RunStats& stats) const {
    ++stats.oracle_calls;
    if (paranoid_) stats.check("oracle-input-h-free", is_h_free(g, h_.components[i]));
    OracleResult r = oracles_[i](g, w_);
    CallResult out{r.weight, g.empty_set(), r.witness.has_value()};
    if (r.witness) {
      out.witness = std::move(*r.witness);
      if (checks_)
        stats.check("oracle-witness", is_independent(g, out.witness) && w_.total(out.witness) == r.weight,
                    "oracle " + oracles_[i].name + " returned an inconsistent witness");
    }
    return out;
  }

  CallResult branch(const Graph& g, const VertexMultiFamily& fam, VertexId v, std::uint32_t depth, Int128 mu,
                    RunStats& stats) const {
    ++stats.branches;
    const ParentEdge del_edge{mu, Rule::branch_delete};
    const ParentEdge take_edge{mu, Rule::branch_take};
    const VertexSet closed = g.closed_neighbors(v);

    auto run_take = [&](RunStats& s) {
      CallResult r =
          call(remove_vertices(g, closed), family_subtract(fam, closed), depth + 1, 0, fair_ ? &take_edge : nullptr, s);
      r.weight += w_[v];
      r.witness.insert(v);
      return r;
    };
    auto run_delete = [&](RunStats& s) {
      return call(remove_vertex(g, v), family_subtract(fam, v), depth + 1, 0, fair_ ? &del_edge : nullptr, s);
    };

    CallResult del, take;
    if (budget_ && budget_->try_acquire()) {
      RunStats take_stats = stats.fork();
      DeepStackThread worker([&] {
        SlotGuard slot(budget_);
        take = run_take(take_stats);
      });
      del = run_delete(stats);
      worker.join();
      stats.merge(take_stats);
    } else {
      del = run_delete(stats);
      take = run_take(stats);
    }
    bool available = del.witness_available && take.witness_available;
    CallResult best = pick_branch(std::move(del), std::move(take));
    best.witness_available = available;
    return best;
  }

  const PatternGraph& h_;
  const std::vector<ComponentOracle>& oracles_;
  const WeightMap& w_;
  const SolverOptions& opt_;
  std::uint64_t cap_;
  TaskBudget* budget_;
  bool checks_;
  bool paranoid_;
  bool fair_;
};

}  // namespace detail

/// Maximum weight independent set via ALG₂ rooted at (H, G, w, |V(G)|, ∅),
/// with one oracle per component of H in component order. Exact whenever
/// the oracles meet their contract. `opt.h_free_hint` enables the fair-run
/// bound checks; paranoid mode verifies the hint first.
inline SolveResult solve_hfree(const PatternGraph& h, const Graph& g, const WeightMap& w,
                               const std::vector<ComponentOracle>& oracles, const SolverOptions& opt = {}) {
  require_weights_cover(g, w);
  if (oracles.size() != h.component_count())
    throw std::invalid_argument("expected " + std::to_string(h.component_count()) + " oracles, got " +
                                std::to_string(oracles.size()));
  for (const auto& o : oracles)
    if (!o.callable) throw std::invalid_argument("oracle without a callable");
  if (opt.h_free_hint && opt.assert_level == AssertLevel::paranoid && !is_h_free(g, h.whole))
    throw std::invalid_argument("graph is not H-free");

  SolveResult out;
  out.stats.trace_capacity = opt.trace_capacity;
  std::unique_ptr<detail::TaskBudget> budget =
      opt.threads > 1 ? std::make_unique<detail::TaskBudget>(opt.threads) : nullptr;
  detail::Alg2Runner runner(h, oracles, w, opt, g.num_vertices(), budget.get());
  detail::CallResult r = run_on_deep_stack(
      [&] { return runner.call(g, VertexMultiFamily(g.universe()), 0, 0, nullptr, out.stats); });
  out.weight = r.weight;
  out.witness = std::move(r.witness);
  out.witness_available = r.witness_available;
  if (opt.assert_level != AssertLevel::off) detail::check_witness(g, w, out, out.stats);
  return out;
}

}  // namespace mwis
