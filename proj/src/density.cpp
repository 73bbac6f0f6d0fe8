#include "plantlab/density.hpp"

#include "plantlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>

namespace plantlab {

namespace {

class Dinic {
 public:
  explicit Dinic(int nodes) : head_(static_cast<std::size_t>(nodes), -1), level_(static_cast<std::size_t>(nodes)), it_(static_cast<std::size_t>(nodes)) {}

  void add_arc(int from, int to, std::int64_t cap, std::int64_t reverse_cap = 0) {
    arcs_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[static_cast<std::size_t>(to)], reverse_cap});
    head_[static_cast<std::size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::copy(head_.begin(), head_.end(), it_.begin());
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  /// Nodes reachable from s in the residual graph.
  std::vector<std::uint8_t> reachable_from(int s) const {
    std::vector<std::uint8_t> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
          seen[static_cast<std::size_t>(arc.to)] = 1;
          stack.push_back(arc.to);
        }
      }
    }
    return seen;
  }

  /// Nodes that can reach t in the residual graph.
  std::vector<std::uint8_t> reaching(int t) const {
    std::vector<std::uint8_t> seen(head_.size(), 0);
    std::vector<int> stack{t};
    seen[static_cast<std::size_t>(t)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      // arc a: u -> v has residual cap; its partner a^1 is stored at v
      for (int a = head_[static_cast<std::size_t>(v)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& back = arcs_[static_cast<std::size_t>(a)];
        const Arc& forward = arcs_[static_cast<std::size_t>(a ^ 1)];
        if (forward.cap > 0 && !seen[static_cast<std::size_t>(back.to)]) {
          seen[static_cast<std::size_t>(back.to)] = 1;
          stack.push_back(back.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
          level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (int& a = it_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
      Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= 0 || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      const std::int64_t f = dfs(arc.to, t, std::min(pushed, arc.cap));
      if (f > 0) {
        arc.cap -= f;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

// Goldberg's network for the guess a/b. Capacities are scaled by b so the
// cut of the source side {s} + S equals n*m*b - 2(b*e(S) - a*|S|).
Dinic density_network(const Graph& g, std::int64_t a, std::int64_t b) {
  const int n = g.order();
  const auto m = static_cast<std::int64_t>(g.size());
  Dinic net(n + 2);
  const int s = n;
  const int t = n + 1;
  for (int v = 0; v < n; ++v) {
    net.add_arc(s, v, m * b);
    net.add_arc(v, t, m * b + 2 * a - static_cast<std::int64_t>(g.degree(v)) * b);
  }
  for (const Edge& e : g.edges()) net.add_arc(e.u, e.v, b, b);
  return net;
}

std::int64_t induced_edges(const Graph& g, const std::vector<int>& vertices) {
  std::vector<std::uint8_t> in(static_cast<std::size_t>(g.order()), 0);
  for (int v : vertices) in[static_cast<std::size_t>(v)] = 1;
  std::int64_t count = 0;
  for (const Edge& e : g.edges()) count += (in[static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(e.v)]) ? 1 : 0;
  return count;
}

DensityValue make_density(std::int64_t edges, std::int64_t vertices) {
  return DensityValue{edges, vertices, Rational(BigInt(edges), BigInt(vertices))};
}

}  // namespace

DensestSubgraph densest_subgraph(const Graph& g) {
  if (g.empty()) throw InputError("max_subgraph_density: graph has no edges");
  const int n = g.order();
  const int s = n;
  const int t = n + 1;
  std::int64_t a = static_cast<std::int64_t>(g.size());
  std::int64_t b = n;
  while (true) {
    const std::int64_t d = std::gcd(a, b);
    Dinic net = density_network(g, a / d, b / d);
    net.max_flow(s, t);
    const auto side = net.reachable_from(s);
    std::vector<int> improving;
    for (int v = 0; v < n; ++v) {
      if (side[static_cast<std::size_t>(v)]) improving.push_back(v);
    }
    if (improving.empty()) {
      // a/b is optimal; the maximal min cut gives the union of densest subgraphs
      const auto to_sink = net.reaching(t);
      DensestSubgraph out;
      for (int v = 0; v < n; ++v) {
        if (!to_sink[static_cast<std::size_t>(v)]) out.vertices.push_back(v);
      }
      const std::int64_t edges = induced_edges(g, out.vertices);
      out.density = make_density(edges, static_cast<std::int64_t>(out.vertices.size()));
      if (out.density.value != Rational(BigInt(a), BigInt(b))) {
        throw ExecutionError("densest_subgraph: inconsistent maximal cut");
      }
      out.subgraph = g.induced(out.vertices);
      return out;
    }
    a = induced_edges(g, improving);
    b = static_cast<std::int64_t>(improving.size());
  }
}

DensityValue max_subgraph_density(const Graph& g) { return densest_subgraph(g).density; }

DensityValue max_subgraph_density_brute_force(const Graph& g) {
  if (g.empty()) throw InputError("max_subgraph_density: graph has no edges");
  const int n = g.order();
  if (n > 20) throw ResourceError("max_subgraph_density_brute_force: at most 20 vertices");
  std::int64_t best_e = 0;
  std::int64_t best_v = 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::int64_t e = 0;
    for (const Edge& edge : g.edges()) e += ((mask >> edge.u) & 1U) && ((mask >> edge.v) & 1U) ? 1 : 0;
    const std::int64_t v = std::popcount(mask);
    // e/v > best_e/best_v, ties toward more edges
    if (e * best_v > best_e * v || (e * best_v == best_e * v && e > best_e)) {
      best_e = e;
      best_v = v;
    }
  }
  return make_density(best_e, best_v);
}

}  // namespace plantlab
