#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mwis/graph.hpp"

namespace mwis {

/// Exact non-negative rational num/den. Thresholds in the solver are never
/// floating point.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// x <= num/den, by cross-multiplication.
  bool bounds(std::uint64_t x) const {
    return static_cast<unsigned __int128>(x) * den <= static_cast<unsigned __int128>(num);
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// Ratio n / 2^i.
inline Ratio over_power_of_two(std::uint64_t n, int i) {
  if (i < 0 || i > 62) throw std::invalid_argument("exponent out of range");
  return Ratio{n, std::uint64_t{1} << i};
}

/// A core set X whose closed neighborhood N[X] is a
/// graph_size/2^parameter_i-balanced separator of the graph it was built from.
struct SeparatorCore {
  VertexSet core;
  int parameter_i = 1;
  std::size_t graph_size = 0;
  /// Number of Gyárfás-path constructions performed.
  std::size_t path_calls = 0;

  Ratio balance_bound() const { return over_power_of_two(graph_size, parameter_i); }
};

/// Largest component size of G - S.
inline std::size_t max_component_after_removal(const Graph& g, const VertexSet& s) {
  std::size_t best = 0;
  for (const auto& c : connected_components(remove_vertices(g, s))) best = std::max(best, c.size());
  return best;
}

/// True iff no component of G - S has more than c vertices.
inline bool verify_balanced(const Graph& g, const VertexSet& s, Ratio c) {
  return c.bounds(max_component_after_removal(g, s));
}

/// Induced path P starting at `start` such that every component of
/// G - N[V(P)] has at most |V(G)|/2 vertices. G must be connected.
///
/// From v, let C be a largest component of G - N[v]. If C is small enough
/// we stop; otherwise descend through the smallest neighbor u of v that
/// touches C, continuing in G({u} ∪ C). Since C avoids N[v], the path
/// stays induced, and components left behind never exceed the current
/// graph's half.
inline std::vector<VertexId> gyarfas_path(const Graph& g, VertexId start) {
  if (!g.contains(start)) throw GraphError("start vertex not in graph");
  if (!is_connected(g)) throw GraphError("gyarfas_path requires a connected graph");

  std::vector<VertexId> path;
  Graph current = g;
  VertexId v = start;
  while (true) {
    path.push_back(v);
    VertexSet closed = current.closed_neighbors(v);
    auto comps = connected_components(remove_vertices(current, closed));
    if (comps.empty()) break;
    const VertexSet& big = comps[largest_component_index(comps)];
    if (2 * big.size() <= current.num_vertices()) break;
    VertexId next = static_cast<VertexId>(current.universe());
    for (VertexId u : current.neighbors(v)) {
      if (current.neighbors(u).intersects(big)) {
        next = u;
        break;
      }
    }
    // Connectivity guarantees an attachment vertex.
    if (next == current.universe()) throw GraphError("internal: component not attached to N(v)");
    VertexSet sub = big;
    sub.insert(next);
    current = induced_subgraph(current, sub);
    v = next;
  }
  return path;
}

namespace detail {

inline void refine_separator(const Graph& g, int i, SeparatorCore& out) {
  const std::size_t n = g.num_vertices();
  if (i == 1) {
    auto comps = connected_components(g);
    if (comps.empty()) return;
    const VertexSet& big = comps[largest_component_index(comps)];
    if (2 * big.size() <= n) return;
    ++out.path_calls;
    for (VertexId v : gyarfas_path(induced_subgraph(g, big), big.first())) out.core.insert(v);
    return;
  }
  refine_separator(g, i - 1, out);
  VertexSet closed = closed_neighborhood(g, out.core);
  const Ratio bound = over_power_of_two(n, i);
  for (const auto& c : connected_components(remove_vertices(g, closed))) {
    if (bound.bounds(c.size())) continue;
    ++out.path_calls;
    for (VertexId v : gyarfas_path(induced_subgraph(g, c), c.first())) out.core.insert(v);
  }
}

}  // namespace detail

/// Core X with N[X] a |V(G)|/2^i-balanced separator of G; on a P_k-free
/// graph |X| <= 2^(i+1)·k. When 2^i >= |V(G)| the whole vertex set is
/// returned, which satisfies both bounds trivially.
inline SeparatorCore balanced_separator_core(const Graph& g, int i) {
  if (i < 1) throw std::invalid_argument("separator parameter i must be >= 1");
  SeparatorCore out{g.empty_set(), i, g.num_vertices(), 0};
  const std::size_t n = g.num_vertices();
  if (i >= 63 || (std::uint64_t{1} << i) >= n) {
    out.core = g.vertices();
    return out;
  }
  detail::refine_separator(g, i, out);
  return out;
}

}  // namespace mwis
