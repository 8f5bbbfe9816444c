#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwis/graph.hpp"
#include "mwis/levels.hpp"

namespace mwis {

enum class AssertLevel { off, fair, paranoid };

inline std::optional<AssertLevel> parse_assert_level(std::string_view s) {
  if (s == "off") return AssertLevel::off;
  if (s == "fair") return AssertLevel::fair;
  if (s == "paranoid") return AssertLevel::paranoid;
  return std::nullopt;
}

inline std::string_view to_string(AssertLevel a) {
  switch (a) {
    case AssertLevel::off: return "off";
    case AssertLevel::fair: return "fair";
    case AssertLevel::paranoid: return "paranoid";
  }
  return "off";
}

/// Default assertion level: MWIS_ASSERT_LEVEL if set and valid, else fair.
inline AssertLevel default_assert_level() {
  if (const char* env = std::getenv("MWIS_ASSERT_LEVEL")) {
    if (auto a = parse_assert_level(env)) return *a;
  }
  return AssertLevel::fair;
}

/// Raised when a measure term that the analysis proves non-negative is not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Kind of recursive step taken by a call.
enum class Rule { base, component_recurse, branch_delete, branch_take, add_separator, add_neighborhood, oracle };

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::base: return "base";
    case Rule::component_recurse: return "component-recurse";
    case Rule::branch_delete: return "branch-delete";
    case Rule::branch_take: return "branch-take";
    case Rule::add_separator: return "add-separator";
    case Rule::add_neighborhood: return "add-neighborhood";
    case Rule::oracle: return "oracle";
  }
  return "base";
}

using Int128 = __int128;

inline std::string to_string_i128(Int128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

/// μ_k = 400k²·log²N·(N+|V(G)|) + Σ_i |L(F,i)|·2^(i-1) + 16k·N·logN·(10k·logN − |F|).
struct MeasureK {
  Int128 value = 0;
  Int128 separator_term = 0;
  Int128 level_term = 0;
  Int128 family_term = 0;
};

/// μ_H = |V(G)| + Σ_i |L(F,i)|·2^(i-1) + 2|H|·N·logN·(|H|·c·logN − |F|).
struct MeasureH {
  Int128 value = 0;
  Int128 size_term = 0;
  Int128 level_term = 0;
  Int128 family_term = 0;
};

/// Computes μ_k for a call on (G, N, F). Throws InvariantViolation when the
/// family term is negative, which means |F| exceeds 10k·⌈log₂N⌉.
inline MeasureK measure_k(const Graph& g, const LevelView& levels, std::size_t family_size, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const Int128 n = static_cast<Int128>(levels.capacity());
  if (static_cast<Int128>(g.num_vertices()) > n) throw std::invalid_argument("|V(G)| exceeds N");
  const Int128 lg = ceil_log2(levels.capacity());
  const Int128 kk = k;
  MeasureK m;
  m.separator_term = 400 * kk * kk * lg * lg * (n + static_cast<Int128>(g.num_vertices()));
  m.level_term = static_cast<Int128>(levels.weighted_level_mass());
  m.family_term = 16 * kk * n * lg * (10 * kk * lg - static_cast<Int128>(family_size));
  if (m.family_term < 0)
    throw InvariantViolation("measure family term negative: |F| = " + std::to_string(family_size) +
                             " exceeds 10k*log(N)");
  m.value = m.separator_term + m.level_term + m.family_term;
  return m;
}

inline MeasureK measure_k(const Graph& g, const VertexMultiFamily& f, std::uint64_t capacity, int k) {
  return measure_k(g, LevelView(f, capacity), f.size(), k);
}

/// Computes μ_H for an ALG₂ call; `pattern_size` is |H|, `components` is c.
inline MeasureH measure_h(const Graph& g, const LevelView& levels, std::size_t family_size,
                          std::size_t pattern_size, std::size_t components) {
  const Int128 n = static_cast<Int128>(levels.capacity());
  if (static_cast<Int128>(g.num_vertices()) > n) throw std::invalid_argument("|V(G)| exceeds N");
  const Int128 lg = ceil_log2(levels.capacity());
  const Int128 h = static_cast<Int128>(pattern_size);
  const Int128 c = static_cast<Int128>(components);
  MeasureH m;
  m.size_term = static_cast<Int128>(g.num_vertices());
  m.level_term = static_cast<Int128>(levels.weighted_level_mass());
  m.family_term = 2 * h * n * lg * (h * c * lg - static_cast<Int128>(family_size));
  if (m.family_term < 0)
    throw InvariantViolation("measure family term negative: |F| = " + std::to_string(family_size) +
                             " exceeds |H|*c*log(N)");
  m.value = m.size_term + m.level_term + m.family_term;
  return m;
}

inline MeasureH measure_h(const Graph& g, const VertexMultiFamily& f, std::uint64_t capacity,
                          std::size_t pattern_size, std::size_t components) {
  return measure_h(g, LevelView(f, capacity), f.size(), pattern_size, components);
}

/// Parameters of the recurrence being checked.
struct RecurrenceParams {
  enum class Algorithm { alg1, alg2 } algorithm = Algorithm::alg1;
  int k = 1;                     // ALG₁
  std::size_t pattern_size = 1;  // ALG₂: |H|
  std::size_t components = 1;    // ALG₂: |CC(H)|
};

struct RecurrenceViolation {
  Int128 parent = 0;
  Int128 child = 0;
  Rule rule = Rule::base;
  std::string describe() const {
    return std::string(to_string(rule)) + ": parent measure " + to_string_i128(parent) + ", child measure " +
           to_string_i128(child);
  }
};

/// Checks the per-rule measure decrease between a call and one of its
/// children, in cross-multiplied integer form. Returns the violation, if any.
///
///   component-recurse  20μ' <= 19μ                                    (ALG₁)
///   branch-delete      μ' <= μ − 1
///   branch-take        μ'·D <= μ·(D − 1),  D = 2100k²⌈log₂μ⌉²  or  8|H|²c⌈log₂μ⌉²
///   add-separator      μ'·A <= μ·(A − 1),  A = 200k⌈log₂μ⌉              (ALG₁)
///   add-neighborhood   μ'·A <= μ·(A − 1),  A = 4|H|c⌈log₂μ⌉             (ALG₂)
inline std::optional<RecurrenceViolation> assert_recurrence_step(Int128 parent, Int128 child, Rule rule,
                                                                 const RecurrenceParams& p) {
  auto fail = [&]() { return std::optional<RecurrenceViolation>(RecurrenceViolation{parent, child, rule}); };
  if (parent < 0 || child < 0) return fail();
  const bool alg1 = p.algorithm == RecurrenceParams::Algorithm::alg1;
  const Int128 lg = parent >= 1 ? ceil_log2(static_cast<std::uint64_t>(parent)) : 0;
  switch (rule) {
    case Rule::component_recurse:
      return 20 * child <= 19 * parent ? std::nullopt : fail();
    case Rule::branch_delete:
      return child <= parent - 1 ? std::nullopt : fail();
    case Rule::branch_take: {
      const Int128 h = static_cast<Int128>(p.pattern_size);
      const Int128 d = alg1 ? 2100 * Int128{p.k} * p.k * lg * lg : 8 * h * h * static_cast<Int128>(p.components) * lg * lg;
      return child * d <= parent * (d - 1) ? std::nullopt : fail();
    }
    case Rule::add_separator:
    case Rule::add_neighborhood: {
      const Int128 a = alg1 ? 200 * Int128{p.k} * lg
                            : 4 * static_cast<Int128>(p.pattern_size) * static_cast<Int128>(p.components) * lg;
      return child * a <= parent * (a - 1) ? std::nullopt : fail();
    }
    default:
      return std::nullopt;
  }
}

struct InvariantTally {
  std::uint64_t checked = 0;
  std::uint64_t violated = 0;
  friend bool operator==(const InvariantTally&, const InvariantTally&) = default;
};

struct TraceEntry {
  std::uint64_t call = 0;
  std::uint32_t depth = 0;
  Rule rule = Rule::base;
  Int128 measure = 0;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Exact per-run counters. Stats from independent subtrees merge by
/// appending, so a parallel run that merges children in call order yields
/// the same stats as the sequential run.
struct RunStats {
  std::uint64_t calls = 0;
  std::uint64_t base_cases = 0;
  std::uint64_t component_recursions = 0;
  std::uint64_t component_subcalls = 0;
  std::uint64_t max_component_fanout = 0;
  std::uint64_t branches = 0;
  std::uint64_t separators_added = 0;
  std::uint64_t neighborhoods_added = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t max_family_size = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t max_consecutive_adds = 0;
  /// Index i-1 holds the largest |L(F, i)| observed.
  std::vector<std::uint64_t> max_level_occupancy;
  std::map<std::string, InvariantTally> invariants;
  std::vector<std::string> violation_messages;
  std::deque<TraceEntry> measure_trace;
  std::uint64_t measure_trace_total = 0;
  /// Induced copies X added by ALG₂, in order (bounded).
  std::vector<std::vector<VertexId>> copies;
  std::uint64_t copies_total = 0;

  std::size_t trace_capacity = 256;
  std::size_t copies_capacity = 256;
  static constexpr std::size_t kMessageCap = 32;

  std::uint64_t total_violations() const {
    std::uint64_t v = 0;
    for (const auto& [_, t] : invariants) v += t.violated;
    return v;
  }

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    auto& t = invariants[name];
    ++t.checked;
    if (!ok) {
      ++t.violated;
      if (violation_messages.size() < kMessageCap) violation_messages.push_back(name + ": " + detail);
    }
  }

  void note_level_sizes(const LevelView& levels) {
    if (max_level_occupancy.size() < static_cast<std::size_t>(levels.depth()))
      max_level_occupancy.resize(static_cast<std::size_t>(levels.depth()), 0);
    for (int i = 1; i <= levels.depth(); ++i)
      max_level_occupancy[i - 1] = std::max<std::uint64_t>(max_level_occupancy[i - 1], levels.level_size(i));
  }

  void trace(std::uint32_t depth, Rule rule, Int128 measure) {
    if (trace_capacity == 0) return;
    measure_trace.push_back(TraceEntry{measure_trace_total++, depth, rule, measure});
    while (measure_trace.size() > trace_capacity) measure_trace.pop_front();
  }

  void record_copy(const VertexSet& x) {
    ++copies_total;
    if (copies.size() < copies_capacity) copies.push_back(x.to_vector());
  }

  /// Appends the stats of a subtree that ran after everything recorded here.
  void merge(const RunStats& o) {
    calls += o.calls;
    base_cases += o.base_cases;
    component_recursions += o.component_recursions;
    component_subcalls += o.component_subcalls;
    max_component_fanout = std::max(max_component_fanout, o.max_component_fanout);
    branches += o.branches;
    separators_added += o.separators_added;
    neighborhoods_added += o.neighborhoods_added;
    oracle_calls += o.oracle_calls;
    max_family_size = std::max(max_family_size, o.max_family_size);
    max_depth = std::max(max_depth, o.max_depth);
    max_consecutive_adds = std::max(max_consecutive_adds, o.max_consecutive_adds);
    if (max_level_occupancy.size() < o.max_level_occupancy.size())
      max_level_occupancy.resize(o.max_level_occupancy.size(), 0);
    for (std::size_t i = 0; i < o.max_level_occupancy.size(); ++i)
      max_level_occupancy[i] = std::max(max_level_occupancy[i], o.max_level_occupancy[i]);
    for (const auto& [name, t] : o.invariants) {
      auto& mine = invariants[name];
      mine.checked += t.checked;
      mine.violated += t.violated;
    }
    for (const auto& m : o.violation_messages)
      if (violation_messages.size() < kMessageCap) violation_messages.push_back(m);
    for (const auto& e : o.measure_trace) {
      TraceEntry shifted = e;
      shifted.call = measure_trace_total + e.call;
      measure_trace.push_back(shifted);
    }
    measure_trace_total += o.measure_trace_total;
    while (measure_trace.size() > trace_capacity) measure_trace.pop_front();
    for (const auto& c : o.copies)
      if (copies.size() < copies_capacity) copies.push_back(c);
    copies_total += o.copies_total;
  }

  /// Fresh stats for a subtree, with this run's retention settings.
  RunStats fork() const {
    RunStats s;
    s.trace_capacity = trace_capacity;
    s.copies_capacity = copies_capacity;
    return s;
  }
};

}  // namespace mwis
