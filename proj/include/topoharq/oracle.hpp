#pragma once

#include <utility>

#include "topoharq/cubical.hpp"
#include "topoharq/filtration.hpp"

namespace topoharq {

/// Brute-force cross-checks for the reduction pipeline. Nothing in this
/// header touches the boundary matrix: Betti numbers come from union-find
/// plus the Euler characteristic of the sublevel complex, and bottleneck
/// distance from a feasibility search over explicit bipartite matchings.

/// (beta_0, beta_1) of the sublevel complex at threshold eta. Uses
/// beta_1 = beta_0 - V + E - F, valid because a planar sublevel complex has
/// no 2-cycles.
std::pair<int, int> betti_at(const FiltrationMap& map, double eta);

/// Exact bottleneck distance between the dimension-q points of two diagrams
/// (diagonal matches allowed). Intended for small inputs; throws on
/// diagrams with more than 64 points.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int q);

}  // namespace topoharq
