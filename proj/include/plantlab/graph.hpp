#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plantlab {

/// Unordered vertex pair, stored with u < v. Vertices are 0-based.
struct Edge {
  int u = 0;
  int v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Canonical edge for a pair; requires a != b.
inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Undirected simple graph on vertices 0..n-1.
///
/// Immutable after construction. Keeps a sorted edge list, neighbor lists and a
/// dense 0/1 adjacency so that both sparse iteration and O(1) pair lookups are
/// available.
class Graph {
 public:
  Graph() = default;
  /// Empty graph on n vertices.
  explicit Graph(int n);

  /// Builds a graph from 0-based pairs. Duplicates (in either orientation) are
  /// merged. Throws InputError on self-loops or out-of-range vertices.
  static Graph from_edges(int n, std::span<const Edge> edges);
  static Graph from_edges(int n, std::span<const std::pair<int, int>> pairs);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  std::span<const Edge> edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  int max_degree() const;
  bool has_edge(int a, int b) const {
    return dense_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)] != 0;
  }

  /// Number of vertices with at least one incident edge.
  int non_isolated_count() const;

  /// Dense symmetric 0/1 adjacency with zero diagonal.
  Eigen::MatrixXd adjacency() const;

  /// Same graph with isolated vertices removed and the rest relabeled in
  /// increasing order.
  Graph without_isolated() const;

  /// Subgraph induced on `vertices`, relabeled 0..k-1 in the given order.
  Graph induced(std::span<const int> vertices) const;

  /// Same vertex set, keeping only edges for which `keep` returns true.
  template <class Pred>
  Graph filter_edges(Pred keep) const {
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (keep(e)) kept.push_back(e);
    }
    return from_sorted_unique(n_, std::move(kept));
  }

  /// True iff every edge of this graph is an edge of `other` (same vertex count).
  bool is_subgraph_of(const Graph& other) const;

  /// Disjoint union: `other` is relabeled onto vertices order()..order()+other.order()-1.
  Graph disjoint_union(const Graph& other) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  static Graph from_sorted_unique(int n, std::vector<Edge> edges);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint8_t> dense_;
};

/// Writes "n m" followed by m lines "i j" (1-based, sorted).
void write_edge_list(std::ostream& out, const Graph& g);
/// Parses the edge-list text format. Throws InputError on malformed input.
Graph read_edge_list(std::istream& in);

void save_edge_list(const std::string& path, const Graph& g);
Graph load_edge_list(const std::string& path);

/// Dense matrix as CSV rows.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace plantlab
