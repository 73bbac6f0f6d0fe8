#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library's search routines.

#include "plantlab/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using plantlab::Edge;
using plantlab::Graph;

/// Calls f(map) for every injective map [v] -> [n] (as a vector of images).
inline void for_each_injection(int v, int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> image(static_cast<std::size_t>(v));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void(int)> rec = [&](int i) {
    if (i == v) {
      f(image);
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = true;
      image[static_cast<std::size_t>(i)] = x;
      rec(i + 1);
      used[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(0);
}

inline std::vector<Edge> mapped_edges(const Graph& h, const std::vector<int>& image) {
  std::vector<Edge> out;
  for (const Edge& e : h.edges()) out.push_back(plantlab::make_edge(image[static_cast<std::size_t>(e.u)], image[static_cast<std::size_t>(e.v)]));
  std::sort(out.begin(), out.end());
  return out;
}

/// All distinct edge sets of copies of h inside the complete graph K_n.
inline std::set<std::vector<Edge>> copies_in_kn(const Graph& h, int n) {
  std::set<std::vector<Edge>> out;
  if (h.order() > n) return out;
  for_each_injection(h.order(), n, [&](const std::vector<int>& image) { out.insert(mapped_edges(h, image)); });
  return out;
}

/// Number of distinct subgraphs of g isomorphic to h.
inline std::uint64_t count_copies(const Graph& h, const Graph& g) {
  std::uint64_t count = 0;
  for (const auto& edges : copies_in_kn(h, g.order())) {
    if (std::all_of(edges.begin(), edges.end(), [&](const Edge& e) { return g.has_edge(e.u, e.v); })) ++count;
  }
  return count;
}

/// |Aut(h)| by checking all permutations.
inline std::uint64_t automorphisms(const Graph& h) {
  std::vector<int> perm(static_cast<std::size_t>(h.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (mapped_edges(h, perm) == std::vector<Edge>(h.edges().begin(), h.edges().end())) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// Max of sum_{e in copy} w_e over all copies of h in K_n, n = w.rows().
inline double max_weight_copy(const Graph& h, const Eigen::MatrixXd& w) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& edges : copies_in_kn(h, static_cast<int>(w.rows()))) {
    double s = 0.0;
    for (const Edge& e : edges) s += w(e.u, e.v);
    best = std::max(best, s);
  }
  return best;
}

/// Max edges/vertices over vertex subsets, returned as (edges, vertices) with the
/// largest ratio, ties toward more edges.
inline std::pair<std::int64_t, std::int64_t> densest(const Graph& g) {
  std::int64_t be = 0, bv = 1;
  const int n = g.order();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t e = 0, v = 0;
    for (int i = 0; i < n; ++i) v += (mask >> i) & 1u;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (((mask >> i) & 1u) && ((mask >> j) & 1u) && g.has_edge(i, j)) ++e;
      }
    }
    if (e * bv > be * v || (e * bv == be * v && e > be)) {
      be = e;
      bv = v;
    }
  }
  return {be, bv};
}

/// Erdos-Renyi style graph for property tests.
template <class Rng>
Graph random_graph(int n, double density, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (u(rng) < density) edges.push_back(Edge{i, j});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace oracle
