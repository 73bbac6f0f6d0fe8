#pragma once

#include "plantlab/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace plantlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest pattern accepted by the exact counting operations.
inline constexpr int kMaxPatternVertices = 10;
/// Largest host accepted by find_max_weight_copy.
inline constexpr int kMaxWeightHostOrder = 40;

struct SearchLimits {
  /// Search-tree nodes before ResourceError.
  std::uint64_t max_nodes = 200'000'000;
};

/// Backtracking enumeration of injective, edge-preserving maps from a pattern
/// (no isolated vertices) into a host graph. Non-edges of the pattern are
/// unconstrained, so embeddings correspond to (not necessarily induced)
/// subgraph copies.
///
/// Pattern vertices are grouped into twin classes (vertices with identical
/// neighborhoods apart from each other). With symmetry breaking enabled only
/// the embeddings that are increasing on every twin class are produced: exactly
/// one out of every twin_group_order() embeddings, and the same number for every
/// copy.
class EmbeddingSearch {
 public:
  /// `mapping[v]` is the host vertex of pattern vertex v.
  using Visitor = std::function<bool(std::span<const int> mapping)>;

  EmbeddingSearch(const Graph& pattern, const Graph& host, bool break_twin_symmetry = true, SearchLimits limits = {});

  /// Calls `visit` for every embedding until it returns false.
  void for_each(const Visitor& visit);
  std::uint64_t count();
  bool exists();

  /// Product of factorials of the twin-class sizes.
  const BigInt& twin_group_order() const { return twin_order_; }
  std::uint64_t nodes_visited() const { return nodes_; }

 private:
  bool extend(int depth, const Visitor& visit);

  const Graph& pattern_;
  const Graph& host_;
  bool break_twins_;
  SearchLimits limits_;
  int words_ = 0;
  std::vector<int> order_;      // search position -> pattern vertex
  std::vector<int> twin_prev_;  // search position -> earlier position in the same twin class, or -1
  std::vector<int> twin_class_;  // search position -> twin class id, or -1
  std::vector<std::vector<std::uint64_t>> host_bits_;
  std::vector<std::uint64_t> domains_;  // [depth][position][word]
  std::vector<int> mapping_;
  BigInt twin_order_ = 1;
  std::uint64_t nodes_ = 0;
};

/// Search order used by the backtracking routines: highest degree first, then
/// repeatedly the vertex with the most already-ordered neighbors.
std::vector<int> connectivity_order(const Graph& pattern);

/// Twin classes of a graph (classes of size 1 included).
std::vector<std::vector<int>> twin_classes(const Graph& g);

/// |Aut(H)|, computed exactly; isolated vertices contribute a factorial factor.
BigInt automorphism_group_order(const Graph& h, SearchLimits limits = {});

/// |Aut(H)| for |v(H)| <= kMaxPatternVertices. Throws ResourceError beyond.
BigInt automorphism_count(const Graph& h);

/// N(H, G): number of distinct subgraphs of G isomorphic to H, i.e. embeddings
/// divided by |Aut(H)|. Requires |v(H)| <= kMaxPatternVertices (isolated
/// vertices of H are ignored).
BigInt count_copies(const Graph& h, const Graph& g, SearchLimits limits = {});

/// |S_H| = N(H, K_n) = n! / ((n - |v(H)|)! |Aut(H)|), exact.
BigInt copies_in_complete(const Graph& h, int n);

struct ContainmentProbability {
  /// N(H, Gamma) / |S_H|: probability that a uniform copy of Gamma contains a fixed copy of H.
  Rational probability;
  /// (|v(Gamma)| / n)^{|v(H)|}.
  Rational vertex_bound;
};

ContainmentProbability containment_probability(const Graph& h, const Graph& gamma, int n);

struct WeightedCopy {
  /// The copy as a graph on the weight matrix's vertex set.
  Graph copy;
  /// Host vertex of each (non-isolated, relabeled) pattern vertex.
  std::vector<int> mapping;
  double weight = 0.0;
};

/// Copy of `gamma` in K_n maximizing the sum of `weight` over its edges, by
/// branch and bound. Ties go to the lexicographically smallest assignment in
/// connectivity_order. Requires |v(gamma)| <= 10 and n <= 40.
WeightedCopy find_max_weight_copy(const Graph& gamma, const Eigen::MatrixXd& weight);

/// Isomorphism-invariant code for graphs with at most 11 vertices: the largest
/// upper-triangle adjacency bitmask over all vertex orders compatible with a
/// color refinement. Equal codes (and orders) iff isomorphic.
std::uint64_t canonical_code(const Graph& g);

/// Rebuilds a graph from (order, canonical_code).
Graph graph_from_code(int order, std::uint64_t code);

}  // namespace plantlab
