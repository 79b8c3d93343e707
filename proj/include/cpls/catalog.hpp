#pragma once

#include <optional>
#include <vector>

#include "cpls/graph.hpp"

namespace cpls {

// All connected graphs on exactly n vertices up to isomorphism (n <= 7),
// canonical representatives in deterministic order.
std::vector<Graph> connected_graph_catalog(int n);

// Planar subset of the above.
std::vector<Graph> connected_planar_catalog(int n);

// A proper 2-coloring, or absent when the graph is not bipartite.
std::optional<std::vector<int>> bipartition_of(const Graph& g);

}  // namespace cpls
