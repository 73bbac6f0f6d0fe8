#pragma once

#include "plantlab/combinatorics.hpp"
#include "plantlab/graph.hpp"

#include <cstdint>
#include <vector>

namespace plantlab {

/// Edge-to-vertex ratio of a specific subgraph, kept unreduced.
struct DensityValue {
  std::int64_t edges = 0;
  std::int64_t vertices = 1;
  Rational value;

  double to_double() const { return static_cast<double>(edges) / static_cast<double>(vertices); }
};

struct DensestSubgraph {
  DensityValue density;
  /// Vertices of the largest densest subgraph (the union of all densest ones), ascending.
  std::vector<int> vertices;
  /// Induced subgraph on `vertices`, relabeled 0..k-1.
  Graph subgraph;
};

/// mu(G) = max over nonempty subgraphs of |e(H)|/|v(H)|, by parametric max-flow.
/// Throws InputError when G has no edges.
DensityValue max_subgraph_density(const Graph& g);

/// Densest subgraph with the most edges (the maximal one).
DensestSubgraph densest_subgraph(const Graph& g);

/// Exhaustive version over vertex subsets, for graphs with at most 20 vertices.
DensityValue max_subgraph_density_brute_force(const Graph& g);

}  // namespace plantlab
