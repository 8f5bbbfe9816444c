#pragma once

#include <initializer_list>
#include <vector>

#include "mwis/graph.hpp"

namespace mwis::test {

inline VertexSet ids(const Graph& g, std::initializer_list<VertexId> vs) { return VertexSet(g.universe(), vs); }

inline std::vector<VertexId> as_vector(const VertexSet& s) { return s.to_vector(); }

}  // namespace mwis::test
