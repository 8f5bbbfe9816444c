#pragma once

#include <limits>
#include <string>

#include <json.hpp>

#include "mwis/instrumentation.hpp"
#include "mwis/separators.hpp"
#include "mwis/solver_common.hpp"

namespace mwis {

// Report documents are JSON objects with stable keys. Vertex ids are 1-based
// to match the graph file format. No timing is included, so equal inputs
// give byte-identical output.

inline constexpr int kReportFormatVersion = 1;

using Json = nlohmann::ordered_json;

inline Json int128_json(Int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(to_string_i128(v));
}

inline Json ids_json(const VertexSet& s) {
  Json a = Json::array();
  for (VertexId v : s) a.push_back(v + 1);
  return a;
}

inline Json stats_json(const RunStats& s) {
  Json j;
  j["calls"] = s.calls;
  j["base_cases"] = s.base_cases;
  j["component_recursions"] = s.component_recursions;
  j["component_subcalls"] = s.component_subcalls;
  j["max_component_fanout"] = s.max_component_fanout;
  j["branches"] = s.branches;
  j["separators_added"] = s.separators_added;
  j["neighborhoods_added"] = s.neighborhoods_added;
  j["oracle_calls"] = s.oracle_calls;
  j["max_family_size"] = s.max_family_size;
  j["max_depth"] = s.max_depth;
  j["max_consecutive_adds"] = s.max_consecutive_adds;
  j["max_level_occupancy"] = s.max_level_occupancy;

  Json trace = Json::array();
  for (const auto& e : s.measure_trace)
    trace.push_back(Json{{"call", e.call}, {"depth", e.depth}, {"rule", to_string(e.rule)},
                         {"measure", int128_json(e.measure)}});
  j["measure_trace_total"] = s.measure_trace_total;
  j["measure_trace"] = std::move(trace);

  Json copies = Json::array();
  for (const auto& c : s.copies) {
    Json a = Json::array();
    for (VertexId v : c) a.push_back(v + 1);
    copies.push_back(std::move(a));
  }
  j["copies_total"] = s.copies_total;
  j["copies"] = std::move(copies);
  return j;
}

inline Json assertions_json(AssertLevel level, const RunStats& s) {
  Json inv = Json::object();
  for (const auto& [name, t] : s.invariants) inv[name] = Json{{"checked", t.checked}, {"violated", t.violated}};
  return Json{{"level", to_string(level)},
              {"violations", s.total_violations()},
              {"invariants", std::move(inv)},
              {"messages", s.violation_messages}};
}

struct ReportOptions {
  bool include_witness = false;
  bool include_stats = true;
};

inline Json solve_report(std::string_view command, const SolveResult& r, AssertLevel level,
                         const ReportOptions& ro = {}) {
  Json j;
  j["format_version"] = kReportFormatVersion;
  j["command"] = command;
  j["weight"] = r.weight;
  j["witness_available"] = r.witness_available;
  if (ro.include_witness && r.witness_available) j["witness"] = ids_json(r.witness);
  if (ro.include_stats) j["stats"] = stats_json(r.stats);
  j["assertions"] = assertions_json(level, r.stats);
  return j;
}

inline Json separator_report(const SeparatorCore& core, bool balanced) {
  Json j;
  j["format_version"] = kReportFormatVersion;
  j["command"] = "separator";
  j["i"] = core.parameter_i;
  j["graph_size"] = core.graph_size;
  j["path_calls"] = core.path_calls;
  j["core_size"] = core.core.size();
  j["core"] = ids_json(core.core);
  j["balanced"] = balanced;
  return j;
}

inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mwis
