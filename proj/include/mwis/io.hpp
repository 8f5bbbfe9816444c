#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "mwis/graph.hpp"
#include "mwis/verify.hpp"

namespace mwis {

// Text graph format (DIMACS-like, 1-based ids):
//
//   c <comment>
//   p <n> <m>
//   n <id> <weight>     optional; missing weights default to 1
//   e <u> <v>
//
// emit_graph writes the header, then one "n" line per vertex, then edges
// with u < v in lexicographic order.

enum class ParseErrorKind {
  malformed,
  missing_header,
  id_out_of_range,
  duplicate_edge,
  self_loop,
  duplicate_weight,
  invalid_weight,
  edge_count_mismatch,
};

inline std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::malformed: return "malformed";
    case ParseErrorKind::missing_header: return "missing-header";
    case ParseErrorKind::id_out_of_range: return "id-out-of-range";
    case ParseErrorKind::duplicate_edge: return "duplicate-edge";
    case ParseErrorKind::self_loop: return "self-loop";
    case ParseErrorKind::duplicate_weight: return "duplicate-weight";
    case ParseErrorKind::invalid_weight: return "invalid-weight";
    case ParseErrorKind::edge_count_mismatch: return "edge-count-mismatch";
  }
  return "malformed";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) + ": " + msg),
        kind_(kind), line_(line) {}
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

struct ParsedGraph {
  Graph graph;
  WeightMap weights;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace detail

inline ParsedGraph parse_graph(std::string_view text) {
  std::optional<std::size_t> n;
  std::uint64_t declared_edges = 0;
  std::vector<Weight> weights;
  std::vector<bool> weight_seen;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto f = detail::split_fields(line);
    if (f.empty() || f[0] == "c") continue;

    auto id = [&](std::string_view s) -> VertexId {
      auto v = detail::parse_number<std::uint64_t>(s);
      if (!v) throw ParseError(ParseErrorKind::malformed, line_no, "bad vertex id '" + std::string(s) + "'");
      if (*v < 1 || *v > *n) throw ParseError(ParseErrorKind::id_out_of_range, line_no, "vertex id " + std::string(s));
      return static_cast<VertexId>(*v - 1);
    };

    if (f[0] == "p") {
      if (n) throw ParseError(ParseErrorKind::malformed, line_no, "second problem line");
      // Accept an optional format word: "p edge <n> <m>".
      std::size_t at = (f.size() == 4) ? 2 : 1;
      if (f.size() != 3 && f.size() != 4) throw ParseError(ParseErrorKind::malformed, line_no, "expected 'p <n> <m>'");
      auto nv = detail::parse_number<std::uint64_t>(f[at]);
      auto mv = detail::parse_number<std::uint64_t>(f[at + 1]);
      if (!nv || !mv || *nv > (std::uint64_t{1} << 31))
        throw ParseError(ParseErrorKind::malformed, line_no, "bad problem line counts");
      n = static_cast<std::size_t>(*nv);
      declared_edges = *mv;
      weights.assign(*n, 1);
      weight_seen.assign(*n, false);
      continue;
    }
    if (!n) throw ParseError(ParseErrorKind::missing_header, line_no, "record before 'p' line");
    if (f[0] == "n") {
      if (f.size() != 3) throw ParseError(ParseErrorKind::malformed, line_no, "expected 'n <id> <weight>'");
      VertexId v = id(f[1]);
      auto w = detail::parse_number<std::int64_t>(f[2]);
      if (!w || *w < 0) throw ParseError(ParseErrorKind::invalid_weight, line_no, "weight '" + std::string(f[2]) + "'");
      if (weight_seen[v]) throw ParseError(ParseErrorKind::duplicate_weight, line_no, "vertex " + std::string(f[1]));
      weight_seen[v] = true;
      weights[v] = *w;
    } else if (f[0] == "e") {
      if (f.size() != 3) throw ParseError(ParseErrorKind::malformed, line_no, "expected 'e <u> <v>'");
      VertexId u = id(f[1]);
      VertexId v = id(f[2]);
      if (u == v) throw ParseError(ParseErrorKind::self_loop, line_no, "vertex " + std::string(f[1]));
      Edge key{std::min(u, v), std::max(u, v)};
      if (!seen.insert(key).second)
        throw ParseError(ParseErrorKind::duplicate_edge, line_no, std::string(f[1]) + " " + std::string(f[2]));
      edges.push_back(key);
    } else {
      throw ParseError(ParseErrorKind::malformed, line_no, "unknown record '" + std::string(f[0]) + "'");
    }
  }
  if (!n) throw ParseError(ParseErrorKind::missing_header, line_no, "no 'p' line");
  if (edges.size() != declared_edges)
    throw ParseError(ParseErrorKind::edge_count_mismatch, line_no,
                     "header declares " + std::to_string(declared_edges) + " edges, found " +
                         std::to_string(edges.size()));
  return {Graph(*n, edges), WeightMap(std::move(weights))};
}

inline ParsedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

/// Serializes a root graph (vertex set 0..n-1) and its weights.
inline std::string emit_graph(const Graph& g, const WeightMap& w) {
  if (g.num_vertices() != g.universe()) throw GraphError("emit_graph needs a graph on ids 0..n-1; compact it first");
  require_weights_cover(g, w);
  auto edges = g.edges();
  std::string out = "p " + std::to_string(g.num_vertices()) + " " + std::to_string(edges.size()) + "\n";
  for (VertexId v = 0; v < g.universe(); ++v)
    out += "n " + std::to_string(v + 1) + " " + std::to_string(w[v]) + "\n";
  for (auto [u, v] : edges) out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}


/// Parses a pattern expression such as "2K2", "P3+P3", "K3+P2" or "P4+fork".
/// Terms are joined by '+'; each is an optional multiplicity followed by
/// P<n>, K<n>, C<n>, S<n> (star with n leaves), fork or claw.
inline Graph parse_pattern_expression(std::string_view expr) {
  std::vector<Graph> parts;
  std::size_t pos = 0;
  while (pos <= expr.size()) {
    std::size_t end = expr.find('+', pos);
    if (end == std::string_view::npos) end = expr.size();
    std::string_view term = expr.substr(pos, end - pos);
    pos = end + 1;
    while (!term.empty() && term.front() == ' ') term.remove_prefix(1);
    while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
    if (term.empty()) throw std::invalid_argument("empty term in pattern '" + std::string(expr) + "'");

    std::size_t digits = 0;
    while (digits < term.size() && term[digits] >= '0' && term[digits] <= '9') ++digits;
    std::size_t mult = 1;
    if (digits > 0) {
      auto m = detail::parse_number<std::size_t>(term.substr(0, digits));
      if (!m || *m == 0 || *m > 64) throw std::invalid_argument("bad multiplicity in '" + std::string(term) + "'");
      mult = *m;
      term.remove_prefix(digits);
    }
    Graph piece;
    if (term == "fork") {
      piece = fork_graph();
    } else if (term == "claw") {
      piece = claw_graph();
    } else if (term.size() >= 2 && (term[0] == 'P' || term[0] == 'K' || term[0] == 'C' || term[0] == 'S')) {
      auto n = detail::parse_number<std::size_t>(term.substr(1));
      if (!n || *n == 0 || *n > 64) throw std::invalid_argument("bad size in '" + std::string(term) + "'");
      switch (term[0]) {
        case 'P': piece = path_graph(*n); break;
        case 'K': piece = complete_graph(*n); break;
        case 'C':
          if (*n < 3) throw std::invalid_argument("cycles need at least 3 vertices");
          piece = cycle_graph(*n);
          break;
        default: piece = star_graph(*n); break;
      }
    } else {
      throw std::invalid_argument("unknown pattern term '" + std::string(term) + "'");
    }
    for (std::size_t j = 0; j < mult; ++j) parts.push_back(piece);
  }
  return disjoint_union(parts);
}

}  // namespace mwis
