#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwis/graph.hpp"
#include "mwis/induced.hpp"

namespace mwis {

class OracleCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kBruteForceHardCap = 64;

/// Default brute-force size cap: MWIS_BRUTE_FORCE_CAP if set, else 25.
inline std::size_t default_brute_force_cap() {
  if (const char* env = std::getenv("MWIS_BRUTE_FORCE_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<std::size_t>(v, kBruteForceHardCap);
  }
  return 25;
}

struct MwisSolution {
  Weight weight = 0;
  VertexSet witness;
};

namespace detail {

// G compacted to 64-bit masks over local indices 0..m-1 (increasing id).
struct CompactGraph {
  std::vector<VertexId> ids;
  std::vector<std::uint64_t> adj;
  std::vector<Weight> weight;

  CompactGraph(const Graph& g, const WeightMap& w) : ids(g.vertices().to_vector()) {
    std::vector<int> local(g.universe(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);
    adj.assign(ids.size(), 0);
    weight.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      weight[i] = w[ids[i]];
      for (VertexId u : g.neighbors(ids[i])) adj[i] |= std::uint64_t{1} << local[u];
    }
  }

  VertexSet expand(std::uint64_t mask, std::size_t universe) const {
    VertexSet s(universe);
    for (; mask != 0; mask &= mask - 1) s.insert(ids[static_cast<std::size_t>(std::countr_zero(mask))]);
    return s;
  }
};

struct CliqueCoverSearch {
  const CompactGraph& g;
  Weight best = -1;
  std::uint64_t best_set = 0;

  // Greedy clique cover: each clique contributes its heaviest vertex.
  Weight cover_bound(std::uint64_t p) const {
    Weight bound = 0;
    while (p != 0) {
      int v = std::countr_zero(p);
      std::uint64_t clique = std::uint64_t{1} << v;
      std::uint64_t cand = p & g.adj[static_cast<std::size_t>(v)];
      Weight heaviest = g.weight[static_cast<std::size_t>(v)];
      while (cand != 0) {
        int u = std::countr_zero(cand);
        clique |= std::uint64_t{1} << u;
        cand &= g.adj[static_cast<std::size_t>(u)];
        heaviest = std::max(heaviest, g.weight[static_cast<std::size_t>(u)]);
      }
      bound += heaviest;
      p &= ~clique;
    }
    return bound;
  }

  void search(std::uint64_t p, Weight cur, std::uint64_t chosen) {
    // Vertices with no neighbor left in p are always taken.
    std::uint64_t free_now = 0;
    for (std::uint64_t q = p; q != 0; q &= q - 1) {
      int v = std::countr_zero(q);
      if ((g.adj[static_cast<std::size_t>(v)] & p) == 0) free_now |= std::uint64_t{1} << v;
    }
    for (std::uint64_t q = free_now; q != 0; q &= q - 1) cur += g.weight[static_cast<std::size_t>(std::countr_zero(q))];
    chosen |= free_now;
    p &= ~free_now;

    if (p == 0) {
      if (cur > best) {
        best = cur;
        best_set = chosen;
      }
      return;
    }
    if (best >= 0 && cur + cover_bound(p) <= best) return;

    int pick = -1;
    int pick_deg = -1;
    for (std::uint64_t q = p; q != 0; q &= q - 1) {
      int v = std::countr_zero(q);
      int deg = std::popcount(g.adj[static_cast<std::size_t>(v)] & p);
      if (deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    search(p & ~bit & ~g.adj[static_cast<std::size_t>(pick)], cur + g.weight[static_cast<std::size_t>(pick)],
           chosen | bit);
    search(p & ~bit, cur, chosen);
  }
};

}  // namespace detail

/// Exact MWIS by branch and bound with a greedy clique-cover bound.
/// Refuses graphs with more than `cap` vertices.
inline MwisSolution brute_force_mwis(const Graph& g, const WeightMap& w, std::size_t cap = default_brute_force_cap()) {
  require_weights_cover(g, w);
  cap = std::min(cap, kBruteForceHardCap);
  if (g.num_vertices() > cap)
    throw OracleCapExceeded("brute-force oracle refuses " + std::to_string(g.num_vertices()) +
                            " vertices (cap " + std::to_string(cap) + ")");
  detail::CompactGraph cg(g, w);
  const std::uint64_t all = cg.ids.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cg.ids.size()) - 1;
  detail::CliqueCoverSearch s{cg};
  s.search(all, 0, 0);
  return {s.best, cg.expand(s.best_set, g.universe())};
}

/// Plain enumeration of all 2^n vertex subsets; n <= 24. Used to validate
/// the branch-and-bound oracle itself.
inline MwisSolution enumerate_mwis(const Graph& g, const WeightMap& w) {
  require_weights_cover(g, w);
  if (g.num_vertices() > 24) throw OracleCapExceeded("enumeration limited to 24 vertices");
  detail::CompactGraph cg(g, w);
  const std::size_t m = cg.ids.size();
  Weight best = 0;
  std::uint64_t best_set = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool independent = true;
    Weight total = 0;
    for (std::uint64_t q = mask; q != 0 && independent; q &= q - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(q));
      independent = (cg.adj[v] & mask) == 0;
      total += cg.weight[v];
    }
    if (independent && total > best) {
      best = total;
      best_set = mask;
    }
  }
  return {best, cg.expand(best_set, g.universe())};
}

// ---------------------------------------------------------------------------
// Named graphs.

inline Graph empty_graph(std::size_t n) { return Graph(n, std::span<const Edge>{}); }

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(static_cast<VertexId>(i - 1), static_cast<VertexId>(i));
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

/// K_{1,leaves}; the center is vertex 0.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (VertexId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

/// Path 0-1-2-3 plus vertex 4 attached to 1.
inline Graph fork_graph() { return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}}); }

inline Graph claw_graph() { return star_graph(3); }

inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (VertexId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph(10, e);
}

/// Copy of g relabeled onto 0..|V(g)|-1 in id order.
inline Graph compact(const Graph& g) {
  std::vector<VertexId> local(g.universe(), 0);
  VertexId next = 0;
  for (VertexId v : g.vertices()) local[v] = next++;
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(local[u], local[v]);
  return Graph(g.num_vertices(), e);
}

/// G_0 + G_1 + ...; each part's vertices are placed after the previous ones.
inline Graph disjoint_union(const std::vector<Graph>& parts) {
  std::vector<Edge> e;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    Graph c = compact(p);
    for (auto [u, v] : c.edges())
      e.emplace_back(static_cast<VertexId>(u + offset), static_cast<VertexId>(v + offset));
    offset += c.num_vertices();
  }
  return Graph(offset, e);
}

// ---------------------------------------------------------------------------
// Generators.

/// Deterministic PRNG: std::mt19937_64 seeded with the given value. Bounded
/// integers use rejection on the raw 64-bit output and probabilities use the
/// top 53 bits, so streams are identical across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GeneratorKind { random_gnp, cograph, pk_free_rejection, h_free_rejection, path, cycle, star, complete };

/// per_edge: candidate edges arrive in random order, each kept with
/// probability p and only if the graph stays free. whole_graph: redraw
/// G(n, p) until it is free, up to attempt_cap times.
enum class RejectionMode { per_edge, whole_graph };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::random_gnp;
  std::size_t size = 0;
  double edge_probability = 0.5;
  int k = 4;  // pk-free-rejection
  std::optional<Graph> pattern;  // h-free-rejection
  RejectionMode rejection = RejectionMode::per_edge;
  std::uint64_t seed = 0;
  Weight min_weight = 1;
  Weight max_weight = 1;
  std::size_t attempt_cap = 100000;
};

struct GeneratedGraph {
  Graph graph;
  WeightMap weights;
};

inline Graph random_gnp(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.emplace_back(u, v);
  return Graph(n, e);
}

namespace detail {

// Cograph on vertices[lo, hi) by random union/join splits.
inline void cograph_edges(const std::vector<VertexId>& vs, std::size_t lo, std::size_t hi, Rng& rng,
                          std::vector<Edge>& out) {
  if (hi - lo <= 1) return;
  std::size_t mid = lo + 1 + static_cast<std::size_t>(rng.below(hi - lo - 1));
  bool join = rng.bernoulli(0.5);
  cograph_edges(vs, lo, mid, rng, out);
  cograph_edges(vs, mid, hi, rng, out);
  if (join)
    for (std::size_t i = lo; i < mid; ++i)
      for (std::size_t j = mid; j < hi; ++j) out.emplace_back(vs[i], vs[j]);
}

}  // namespace detail

/// Random cograph: a recursive union/join tree over shuffled vertex ids.
inline Graph random_cograph(std::size_t n, Rng& rng) {
  std::vector<VertexId> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<VertexId>(i);
  rng.shuffle(vs);
  std::vector<Edge> e;
  detail::cograph_edges(vs, 0, n, rng, e);
  return Graph(n, e);
}

inline WeightMap random_weights(std::size_t n, Weight lo, Weight hi, Rng& rng) {
  std::vector<Weight> w(n);
  for (auto& x : w) x = rng.uniform(lo, hi);
  return WeightMap(std::move(w));
}

/// Builds the graph and weights described by `spec`. The same spec always
/// yields the same output.
inline GeneratedGraph generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = spec.size;
  std::optional<Graph> g;
  switch (spec.kind) {
    case GeneratorKind::random_gnp:
      g = random_gnp(n, spec.edge_probability, rng);
      break;
    case GeneratorKind::cograph:
      g = random_cograph(n, rng);
      break;
    case GeneratorKind::pk_free_rejection:
    case GeneratorKind::h_free_rejection: {
      const bool pk = spec.kind == GeneratorKind::pk_free_rejection;
      if (!pk && !spec.pattern) throw std::invalid_argument("h-free-rejection needs a pattern");
      auto accepted = [&](const Graph& cand) { return pk ? is_pk_free(cand, spec.k) : is_h_free(cand, *spec.pattern); };
      if (spec.rejection == RejectionMode::per_edge) {
        if (!accepted(empty_graph(n))) throw GenerationFailed("the edgeless graph already contains the pattern");
        std::vector<Edge> pairs, kept;
        for (VertexId u = 0; u < n; ++u)
          for (VertexId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        rng.shuffle(pairs);
        for (const Edge& e : pairs) {
          if (!rng.bernoulli(spec.edge_probability)) continue;
          kept.push_back(e);
          if (!accepted(Graph(n, kept))) kept.pop_back();
        }
        g = Graph(n, kept);
        break;
      }
      for (std::size_t attempt = 0; attempt < spec.attempt_cap && !g; ++attempt) {
        Graph cand = random_gnp(n, spec.edge_probability, rng);
        if (accepted(cand)) g = std::move(cand);
      }
      if (!g) throw GenerationFailed("no accepted graph within " + std::to_string(spec.attempt_cap) + " attempts");
      break;
    }
    case GeneratorKind::path:
      g = path_graph(n);
      break;
    case GeneratorKind::cycle:
      g = cycle_graph(n);
      break;
    case GeneratorKind::star:
      g = star_graph(n == 0 ? 0 : n - 1);
      break;
    case GeneratorKind::complete:
      g = complete_graph(n);
      break;
  }
  WeightMap w = random_weights(g->universe(), spec.min_weight, spec.max_weight, rng);
  return {std::move(*g), std::move(w)};
}

}  // namespace mwis
