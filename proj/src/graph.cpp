#include "plantlab/graph.hpp"

#include "plantlab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace plantlab {

Graph::Graph(int n) {
  if (n < 0) throw InputError("graph order must be nonnegative");
  *this = from_sorted_unique(n, {});
}

Graph Graph::from_sorted_unique(int n, std::vector<Edge> edges) {
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  const auto un = static_cast<std::size_t>(n);
  g.adj_.assign(un, {});
  g.dense_.assign(un * un, 0);
  for (const Edge& e : g.edges_) {
    g.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
    g.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    g.dense_[static_cast<std::size_t>(e.u) * un + static_cast<std::size_t>(e.v)] = 1;
    g.dense_[static_cast<std::size_t>(e.v) * un + static_cast<std::size_t>(e.u)] = 1;
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  if (n < 0) throw InputError("graph order must be nonnegative");
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    canon.push_back(make_edge(e.u, e.v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return from_sorted_unique(n, std::move(canon));
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back(Edge{a, b});
  return from_edges(n, edges);
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& nb : adj_) best = std::max(best, static_cast<int>(nb.size()));
  return best;
}

int Graph::non_isolated_count() const {
  return static_cast<int>(std::count_if(adj_.begin(), adj_.end(), [](const auto& nb) { return !nb.empty(); }));
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

Graph Graph::without_isolated() const {
  std::vector<int> keep;
  for (int v = 0; v < n_; ++v) {
    if (degree(v) > 0) keep.push_back(v);
  }
  return induced(keep);
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> index(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int v = vertices[i];
    if (v < 0 || v >= n_) throw InputError("induced: vertex out of range");
    if (index[static_cast<std::size_t>(v)] != -1) throw InputError("induced: repeated vertex");
    index[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    const int a = index[static_cast<std::size_t>(e.u)];
    const int b = index[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) kept.push_back(make_edge(a, b));
  }
  std::sort(kept.begin(), kept.end());
  return from_sorted_unique(static_cast<int>(vertices.size()), std::move(kept));
}

bool Graph::is_subgraph_of(const Graph& other) const {
  if (other.n_ != n_) return false;
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return other.has_edge(e.u, e.v); });
}

Graph Graph::disjoint_union(const Graph& other) const {
  std::vector<Edge> all(edges_.begin(), edges_.end());
  for (const Edge& e : other.edges_) all.push_back(Edge{e.u + n_, e.v + n_});
  return from_sorted_unique(n_ + other.n_, std::move(all));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

Graph read_edge_list(std::istream& in) {
  long long n = 0;
  long long m = 0;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("edge list: expected header \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long a = 0;
    long long b = 0;
    if (!(in >> a >> b)) throw InputError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (a < 1 || a > n || b < 1 || b > n) throw InputError("edge list: vertex out of range on edge " + std::to_string(i + 1));
    edges.push_back(Edge{static_cast<int>(a - 1), static_cast<int>(b - 1)});
  }
  return Graph::from_edges(static_cast<int>(n), edges);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_edge_list(out, g);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  std::ostringstream row;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    row.str({});
    row << std::setprecision(17);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) row << ',';
      row << m(i, j);
    }
    out << row.str() << '\n';
  }
}

}  // namespace plantlab
