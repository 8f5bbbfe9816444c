#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mwis/vertex_set.hpp"

namespace mwis {

using Weight = std::int64_t;
using Edge = std::pair<VertexId, VertexId>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct RootGraph {
  std::size_t n = 0;
  std::vector<VertexSet> adjacency;  // open neighborhoods in the root
};

}  // namespace detail

/// Simple undirected graph viewed as an induced subgraph of a shared root.
///
/// Vertex ids are the root's ids and never change under induced_subgraph or
/// remove_vertices, so vertex sets stay meaningful across the whole
/// recursion. Values are immutable after construction.
class Graph {
 public:
  Graph() : Graph(0, {}) {}

  /// Root graph on ids 0..n-1. Duplicate edges are merged; self-loops and
  /// out-of-range ids throw GraphError.
  Graph(std::size_t n, std::span<const Edge> edges) {
    auto root = std::make_shared<detail::RootGraph>();
    root->n = n;
    root->adjacency.assign(n, VertexSet(n));
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw GraphError("edge endpoint out of range");
      if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
      root->adjacency[u].insert(v);
      root->adjacency[v].insert(u);
    }
    root_ = std::move(root);
    members_ = VertexSet::full(n);
  }
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  /// Size of the id space shared by every graph derived from the same root.
  std::size_t universe() const { return root_->n; }
  const VertexSet& vertices() const { return members_; }
  std::size_t num_vertices() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const { return members_.contains(v); }

  bool adjacent(VertexId u, VertexId v) const {
    return contains(u) && contains(v) && root_->adjacency[u].contains(v);
  }
  /// N(v) within this graph.
  VertexSet neighbors(VertexId v) const {
    require(v);
    return root_->adjacency[v] & members_;
  }
  /// N[v] within this graph.
  VertexSet closed_neighbors(VertexId v) const {
    VertexSet s = neighbors(v);
    s.insert(v);
    return s;
  }
  std::size_t degree(VertexId v) const {
    require(v);
    return root_->adjacency[v].intersection_size(members_);
  }
  /// |N[v] ∩ s| without materializing N[v]; s must lie inside this graph.
  std::size_t closed_neighbors_in(VertexId v, const VertexSet& s) const {
    return root_->adjacency[v].intersection_size(s) + (s.contains(v) ? 1 : 0);
  }

  std::size_t num_edges() const {
    std::size_t twice = 0;
    for (VertexId v : members_) twice += degree(v);
    return twice / 2;
  }
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (VertexId u : members_)
      for (VertexId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  VertexSet empty_set() const { return VertexSet(universe()); }

  // Restriction to a subset of this graph's vertices; ids are preserved.
  Graph restrict_to(VertexSet keep) const {
    Graph g;
    g.root_ = root_;
    g.members_ = std::move(keep);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.universe() != b.universe() || a.members_ != b.members_) return false;
    if (a.root_ == b.root_) return true;
    for (VertexId v : a.members_)
      if (a.neighbors(v) != b.neighbors(v)) return false;
    return true;
  }

 private:
  void require(VertexId v) const {
    if (!contains(v)) throw GraphError("vertex " + std::to_string(v) + " not in graph");
  }

  std::shared_ptr<const detail::RootGraph> root_;
  VertexSet members_;
};

inline void require_subset(const Graph& g, const VertexSet& x) {
  if (x.universe() != g.universe() || !x.is_subset_of(g.vertices()))
    throw GraphError("vertex set is not contained in the graph");
}

/// N[X] = union of N[x] over x in X.
inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& x) {
  require_subset(g, x);
  VertexSet out = x;
  for (VertexId v : x) out |= g.neighbors(v);
  return out;
}

/// N(X) = N[X] \ X.
inline VertexSet open_neighborhood(const Graph& g, const VertexSet& x) {
  return closed_neighborhood(g, x) - x;
}

/// G(X); ids preserved.
inline Graph induced_subgraph(const Graph& g, const VertexSet& x) {
  require_subset(g, x);
  return g.restrict_to(x);
}

/// G - X. X may contain vertices outside G.
inline Graph remove_vertices(const Graph& g, const VertexSet& x) {
  if (x.universe() != g.universe()) throw GraphError("vertex set over a different universe");
  return g.restrict_to(g.vertices() - x);
}

inline Graph remove_vertex(const Graph& g, VertexId v) {
  VertexSet keep = g.vertices();
  keep.erase(v);
  return g.restrict_to(std::move(keep));
}

/// Component containing `start`, by BFS over the graph's vertices.
inline VertexSet component_of(const Graph& g, VertexId start) {
  VertexSet seen = g.empty_set();
  std::vector<VertexId> stack{start};
  seen.insert(start);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : g.neighbors(v)) {
      if (!seen.contains(u)) {
        seen.insert(u);
        stack.push_back(u);
      }
    }
  }
  return seen;
}

/// Connected components ordered by their smallest vertex id.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> out;
  VertexSet rest = g.vertices();
  while (!rest.empty()) {
    VertexSet c = component_of(g, rest.first());
    rest -= c;
    out.push_back(std::move(c));
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  return g.empty() || component_of(g, g.vertices().first()).size() == g.num_vertices();
}

/// Index of a largest component; ties go to the earliest (smallest id).
inline std::size_t largest_component_index(const std::vector<VertexSet>& comps) {
  std::size_t best = 0;
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::size_t s = comps[i].size();
    if (s > best_size) {
      best = i;
      best_size = s;
    }
  }
  return best;
}

/// A shortest a-b path as a vertex sequence, or nullopt when disconnected.
/// BFS explores neighbors in increasing id order, so the result is
/// deterministic.
inline std::optional<std::vector<VertexId>> shortest_path(const Graph& g, VertexId a, VertexId b) {
  if (!g.contains(a) || !g.contains(b)) throw GraphError("path endpoint not in graph");
  if (a == b) return std::vector<VertexId>{a};
  std::vector<VertexId> parent(g.universe(), static_cast<VertexId>(g.universe()));
  VertexSet seen = g.empty_set();
  seen.insert(a);
  std::deque<VertexId> queue{a};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : g.neighbors(v)) {
      if (seen.contains(u)) continue;
      seen.insert(u);
      parent[u] = v;
      if (u == b) {
        std::vector<VertexId> path{b};
        while (path.back() != a) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(u);
    }
  }
  return std::nullopt;
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.universe() || !s.is_subset_of(g.vertices())) return false;
  for (VertexId v : s)
    if (g.neighbors(v).intersects(s)) return false;
  return true;
}

/// True iff `seq` is an induced path of g: consecutive vertices adjacent,
/// all others non-adjacent, no repeats.
inline bool is_induced_path(const Graph& g, std::span<const VertexId> seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!g.contains(seq[i])) return false;
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return false;
      if (g.adjacent(seq[i], seq[j]) != (j == i + 1)) return false;
    }
  }
  return true;
}

/// Non-negative vertex weights indexed by root id.
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(std::vector<Weight> weights) : weights_(std::move(weights)) {
    for (Weight w : weights_)
      if (w < 0) throw GraphError("negative vertex weight");
  }
  static WeightMap uniform(std::size_t n, Weight w = 1) { return WeightMap(std::vector<Weight>(n, w)); }

  std::size_t size() const { return weights_.size(); }
  Weight operator[](VertexId v) const { return weights_.at(v); }
  Weight total(const VertexSet& s) const {
    Weight sum = 0;
    for (VertexId v : s) sum += weights_.at(v);
    return sum;
  }
  const std::vector<Weight>& values() const { return weights_; }

  friend bool operator==(const WeightMap&, const WeightMap&) = default;

 private:
  std::vector<Weight> weights_;
};

inline void require_weights_cover(const Graph& g, const WeightMap& w) {
  if (w.size() < g.universe()) throw GraphError("weight map does not cover the graph");
}

}  // namespace mwis
