#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "mwis/graph.hpp"

namespace mwis {

namespace detail {

inline bool extend_induced_path(const Graph& g, std::vector<VertexId>& path, VertexSet& forbidden, int k) {
  if (static_cast<int>(path.size()) >= k) return true;
  const VertexId last = path.back();
  VertexSet next = g.neighbors(last) - forbidden;
  if (next.empty()) return false;
  // Everything adjacent to `last` is off-limits once we step past it.
  VertexSet saved = forbidden;
  forbidden |= g.closed_neighbors(last);
  for (VertexId u : next) {
    path.push_back(u);
    if (extend_induced_path(g, path, forbidden, k)) return true;
    path.pop_back();
  }
  forbidden = std::move(saved);
  return false;
}

}  // namespace detail

/// An induced path on exactly k vertices, if one exists.
inline std::optional<std::vector<VertexId>> find_induced_path(const Graph& g, int k) {
  if (k <= 0) return std::vector<VertexId>{};
  for (VertexId v : g.vertices()) {
    std::vector<VertexId> path{v};
    VertexSet forbidden = g.empty_set();
    forbidden.insert(v);
    if (detail::extend_induced_path(g, path, forbidden, k)) return path;
  }
  return std::nullopt;
}

/// True iff G has no induced path on k vertices (G is P_k-free).
inline bool longest_induced_path_at_most(const Graph& g, int k) { return !find_induced_path(g, k).has_value(); }

inline bool is_pk_free(const Graph& g, int k) { return longest_induced_path_at_most(g, k); }

namespace detail {

struct EmbeddingSearch {
  const Graph& g;
  const Graph& h;
  std::vector<VertexId> order;         // pattern vertices in placement order
  std::vector<int> anchor;             // index in `order` of an earlier neighbor, or -1
  std::vector<std::size_t> h_degree;   // by position in `order`
  std::vector<VertexId> image;         // by position in `order`
  VertexSet used;

  EmbeddingSearch(const Graph& graph, const Graph& pattern) : g(graph), h(pattern), used(graph.empty_set()) {
    VertexSet placed = h.empty_set();
    const std::size_t m = h.num_vertices();
    while (order.size() < m) {
      // Most edges into the placed prefix, then highest degree, then smallest id.
      VertexId pick = 0;
      std::size_t best_links = 0, best_deg = 0;
      bool have = false;
      for (VertexId v : h.vertices()) {
        if (placed.contains(v)) continue;
        std::size_t links = h.neighbors(v).intersection_size(placed);
        std::size_t deg = h.degree(v);
        if (!have || links > best_links || (links == best_links && deg > best_deg)) {
          pick = v;
          best_links = links;
          best_deg = deg;
          have = true;
        }
      }
      int a = -1;
      for (std::size_t j = 0; j < order.size(); ++j) {
        if (h.adjacent(order[j], pick)) {
          a = static_cast<int>(j);
          break;
        }
      }
      order.push_back(pick);
      anchor.push_back(a);
      h_degree.push_back(h.degree(pick));
      placed.insert(pick);
    }
    image.resize(m);
  }

  bool consistent(std::size_t pos, VertexId cand) const {
    if (used.contains(cand) || g.degree(cand) < h_degree[pos]) return false;
    for (std::size_t j = 0; j < pos; ++j)
      if (h.adjacent(order[j], order[pos]) != g.adjacent(image[j], cand)) return false;
    return true;
  }

  bool search(std::size_t pos) {
    if (pos == order.size()) return true;
    const VertexSet candidates = anchor[pos] >= 0 ? g.neighbors(image[static_cast<std::size_t>(anchor[pos])]) : g.vertices();
    for (VertexId cand : candidates) {
      if (!consistent(pos, cand)) continue;
      image[pos] = cand;
      used.insert(cand);
      if (search(pos + 1)) return true;
      used.erase(cand);
    }
    return false;
  }
};

}  // namespace detail

/// Vertex set X of G with G(X) isomorphic to H, or nullopt. Works for
/// disconnected H as well: all pattern pairs, including cross-component
/// non-edges, are matched. The first embedding in a fixed pattern order,
/// with candidates in increasing id, is returned.
inline std::optional<VertexSet> find_induced_copy(const Graph& g, const Graph& h) {
  if (h.num_vertices() > g.num_vertices()) return std::nullopt;
  if (h.empty()) return g.empty_set();
  detail::EmbeddingSearch s(g, h);
  if (!s.search(0)) return std::nullopt;
  return VertexSet::from_range(g.universe(), s.image);
}

inline bool is_h_free(const Graph& g, const Graph& h) { return !find_induced_copy(g, h).has_value(); }

}  // namespace mwis
