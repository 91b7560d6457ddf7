#pragma once

#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

// Centralized Δ-coloring following the constructive proof of Brooks'
// theorem. Colors are 1..Δ. Throws IllegalSpec if some component is
// K_{Δ+1}, or Δ < 3 and the graph is not Δ-colorable.
std::vector<int> brooks_color(const Graph& g);

// Articulation points of g (iterative Tarjan).
std::vector<Node> cut_vertices(const Graph& g);

}  // namespace dcolor
