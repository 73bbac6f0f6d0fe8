#include "plantlab/combinatorics.hpp"

#include "plantlab/errors.hpp"
#include "plantlab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

namespace plantlab {

namespace {

BigInt factorial(int k) {
  BigInt out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

bool are_twins(const Graph& g, int a, int b) {
  for (int w = 0; w < g.order(); ++w) {
    if (w == a || w == b) continue;
    if (g.has_edge(a, w) != g.has_edge(b, w)) return false;
  }
  return true;
}

struct SearchPlan {
  std::vector<int> order;
  std::vector<int> twin_prev;
  std::vector<int> twin_class;  // by position; -1 when symmetry breaking is off
  BigInt twin_order = 1;
};

SearchPlan make_plan(const Graph& pattern, bool break_twins) {
  SearchPlan plan;
  plan.order = connectivity_order(pattern);
  const auto p = plan.order.size();
  plan.twin_prev.assign(p, -1);
  plan.twin_class.assign(p, -1);
  if (!break_twins) return plan;
  std::vector<int> pos(p);
  for (std::size_t i = 0; i < p; ++i) pos[static_cast<std::size_t>(plan.order[i])] = static_cast<int>(i);
  int class_id = 0;
  for (auto& cls : twin_classes(pattern)) {
    plan.twin_order *= factorial(static_cast<int>(cls.size()));
    for (int v : cls) plan.twin_class[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])] = class_id;
    ++class_id;
    std::sort(cls.begin(), cls.end(), [&](int a, int b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    for (std::size_t i = 1; i < cls.size(); ++i) {
      plan.twin_prev[static_cast<std::size_t>(pos[static_cast<std::size_t>(cls[i])])] = pos[static_cast<std::size_t>(cls[i - 1])];
    }
  }
  return plan;
}

Graph compact_pattern(const Graph& h, const char* what) {
  Graph compact = h.without_isolated();
  if (compact.order() == 0) throw InputError(std::string(what) + ": pattern has no edges");
  return compact;
}

void require_pattern_guard(const Graph& h, const char* what) {
  if (h.order() > kMaxPatternVertices) {
    throw ResourceError(std::string(what) + ": pattern has " + std::to_string(h.order()) + " vertices, limit is " +
                        std::to_string(kMaxPatternVertices));
  }
}

}  // namespace

std::vector<int> connectivity_order(const Graph& pattern) {
  const int p = pattern.order();
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(p));
  std::vector<int> conn(static_cast<std::size_t>(p), 0);
  std::vector<std::uint8_t> placed(static_cast<std::size_t>(p), 0);
  for (int step = 0; step < p; ++step) {
    int best = -1;
    for (int v = 0; v < p; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      if (best < 0) {
        best = v;
        continue;
      }
      const auto cv = conn[static_cast<std::size_t>(v)];
      const auto cb = conn[static_cast<std::size_t>(best)];
      if (cv > cb || (cv == cb && pattern.degree(v) > pattern.degree(best))) best = v;
    }
    placed[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
    for (int w : pattern.neighbors(best)) ++conn[static_cast<std::size_t>(w)];
  }
  return order;
}

std::vector<std::vector<int>> twin_classes(const Graph& g) {
  std::vector<std::vector<int>> classes;
  for (int v = 0; v < g.order(); ++v) {
    bool placed = false;
    for (auto& cls : classes) {
      if (std::all_of(cls.begin(), cls.end(), [&](int u) { return are_twins(g, u, v); })) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({v});
  }
  return classes;
}

EmbeddingSearch::EmbeddingSearch(const Graph& pattern, const Graph& host, bool break_twin_symmetry, SearchLimits limits)
    : pattern_(pattern), host_(host), break_twins_(break_twin_symmetry), limits_(limits) {
  const int p = pattern_.order();
  const int n = host_.order();
  words_ = (n + 63) / 64;
  SearchPlan plan = make_plan(pattern_, break_twins_);
  order_ = std::move(plan.order);
  twin_prev_ = std::move(plan.twin_prev);
  twin_class_ = std::move(plan.twin_class);
  twin_order_ = plan.twin_order;
  host_bits_.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(words_), 0));
  for (int x = 0; x < n; ++x) {
    for (int y : host_.neighbors(x)) host_bits_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y / 64)] |= std::uint64_t{1} << (y % 64);
  }
  mapping_.assign(static_cast<std::size_t>(p), -1);
  const auto level = static_cast<std::size_t>(p) * static_cast<std::size_t>(words_);
  domains_.assign((static_cast<std::size_t>(p) + 1) * level, 0);
  for (int i = 0; i < p; ++i) {
    const int need = pattern_.degree(order_[static_cast<std::size_t>(i)]);
    std::uint64_t* dom = domains_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(words_);
    for (int x = 0; x < n; ++x) {
      if (host_.degree(x) >= need) dom[x / 64] |= std::uint64_t{1} << (x % 64);
    }
  }
}

bool EmbeddingSearch::extend(int depth, const Visitor& visit) {
  const int p = pattern_.order();
  if (depth == p) return visit(mapping_);
  const auto w = static_cast<std::size_t>(words_);
  const auto level = static_cast<std::size_t>(p) * w;
  const std::uint64_t* cur = domains_.data() + static_cast<std::size_t>(depth) * level;
  std::uint64_t* next = domains_.data() + (static_cast<std::size_t>(depth) + 1) * level;
  const int u = order_[static_cast<std::size_t>(depth)];
  const int prev = twin_prev_[static_cast<std::size_t>(depth)];
  const int lower = prev >= 0 ? mapping_[static_cast<std::size_t>(order_[static_cast<std::size_t>(prev)])] + 1 : 0;
  const std::uint64_t* own = cur + static_cast<std::size_t>(depth) * w;
  std::vector<std::uint64_t> reach(w);

  for (std::size_t word = static_cast<std::size_t>(lower / 64); word < w; ++word) {
    std::uint64_t bits = own[word];
    if (word == static_cast<std::size_t>(lower / 64)) bits &= ~std::uint64_t{0} << (lower % 64);
    while (bits != 0) {
      const int x = static_cast<int>(word) * 64 + std::countr_zero(bits);
      bits &= bits - 1;
      if (++nodes_ > limits_.max_nodes) {
        throw ResourceError("embedding search exceeded " + std::to_string(limits_.max_nodes) + " nodes");
      }
      mapping_[static_cast<std::size_t>(u)] = x;
      const std::uint64_t* xadj = host_bits_[static_cast<std::size_t>(x)].data();
      const std::uint64_t xmask = std::uint64_t{1} << (x % 64);
      std::fill(reach.begin(), reach.end(), 0);
      bool ok = true;
      for (int j = depth + 1; j < p && ok; ++j) {
        const int v = order_[static_cast<std::size_t>(j)];
        const bool adjacent = pattern_.has_edge(u, v);
        const bool after_twin = twin_class_[static_cast<std::size_t>(depth)] >= 0 &&
                                twin_class_[static_cast<std::size_t>(j)] == twin_class_[static_cast<std::size_t>(depth)];
        const std::uint64_t* src = cur + static_cast<std::size_t>(j) * w;
        std::uint64_t* dst = next + static_cast<std::size_t>(j) * w;
        std::uint64_t any = 0;
        for (std::size_t k = 0; k < w; ++k) {
          std::uint64_t d = src[k];
          if (adjacent) d &= xadj[k];
          if (after_twin) {
            // later members of the class map above x
            if (static_cast<int>(k) < x / 64) {
              d = 0;
            } else if (static_cast<int>(k) == x / 64) {
              d &= ~((xmask << 1) - 1);
            }
          }
          if (static_cast<int>(k) == x / 64) d &= ~xmask;
          dst[k] = d;
          any |= d;
          reach[k] |= d;
        }
        ok = any != 0;
      }
      if (!ok) continue;
      int reachable = 0;
      for (std::uint64_t r : reach) reachable += std::popcount(r);
      if (reachable < p - depth - 1) continue;
      if (!extend(depth + 1, visit)) return false;
    }
  }
  mapping_[static_cast<std::size_t>(u)] = -1;
  return true;
}

void EmbeddingSearch::for_each(const Visitor& visit) {
  nodes_ = 0;
  if (pattern_.order() > host_.order()) return;
  if (pattern_.order() == 0) {
    visit(mapping_);
    return;
  }
  extend(0, visit);
}

std::uint64_t EmbeddingSearch::count() {
  std::uint64_t total = 0;
  for_each([&](std::span<const int>) {
    ++total;
    return true;
  });
  return total;
}

bool EmbeddingSearch::exists() {
  bool found = false;
  for_each([&](std::span<const int>) {
    found = true;
    return false;
  });
  return found;
}

BigInt automorphism_group_order(const Graph& h, SearchLimits limits) {
  const Graph core = h.without_isolated();
  const int isolated = h.order() - core.order();
  EmbeddingSearch search(core, core, true, limits);
  const BigInt ordered = search.count();
  return ordered * search.twin_group_order() * factorial(isolated);
}

BigInt automorphism_count(const Graph& h) {
  require_pattern_guard(h, "automorphism_count");
  return automorphism_group_order(h);
}

BigInt count_copies(const Graph& h, const Graph& g, SearchLimits limits) {
  const Graph core = compact_pattern(h, "count_copies");
  require_pattern_guard(core, "count_copies");
  EmbeddingSearch search(core, g, true, limits);
  const BigInt embeddings = BigInt(search.count()) * search.twin_group_order();
  const BigInt aut = automorphism_group_order(core, limits);
  if (embeddings % aut != 0) throw ExecutionError("count_copies: embedding count not divisible by |Aut|");
  return embeddings / aut;
}

BigInt copies_in_complete(const Graph& h, int n) {
  const int v = h.order();
  if (v > n) return 0;
  BigInt falling = 1;
  for (int i = 0; i < v; ++i) falling *= (n - i);
  return falling / automorphism_group_order(h);
}

ContainmentProbability containment_probability(const Graph& h, const Graph& gamma, int n) {
  const Graph core = compact_pattern(h, "containment_probability");
  require_pattern_guard(core, "containment_probability");
  if (n < 1) throw InputError("containment_probability: n must be positive");
  ContainmentProbability out;
  const BigInt total = copies_in_complete(core, n);
  if (total == 0) {
    out.probability = 0;
  } else {
    out.probability = Rational(count_copies(core, gamma), total);
  }
  const Rational ratio(BigInt(gamma.non_isolated_count()), BigInt(n));
  out.vertex_bound = 1;
  for (int i = 0; i < core.order(); ++i) out.vertex_bound *= ratio;
  return out;
}

WeightedCopy find_max_weight_copy(const Graph& gamma, const Eigen::MatrixXd& weight) {
  require_symmetric(weight, "find_max_weight_copy");
  const Graph core = compact_pattern(gamma, "find_max_weight_copy");
  const int v = core.order();
  const int n = static_cast<int>(weight.rows());
  if (v > kMaxPatternVertices || n > kMaxWeightHostOrder) {
    throw ResourceError("find_max_weight_copy: needs |v(pattern)| <= " + std::to_string(kMaxPatternVertices) +
                        " and n <= " + std::to_string(kMaxWeightHostOrder) + ", got " + std::to_string(v) + " and " +
                        std::to_string(n));
  }
  if (v > n) throw InputError("find_max_weight_copy: pattern larger than host");

  const SearchPlan plan = make_plan(core, true);
  std::vector<int> pos(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) pos[static_cast<std::size_t>(plan.order[static_cast<std::size_t>(i)])] = i;

  // back[d]: earlier positions adjacent to position d; half[d]: assigned endpoint
  // positions of edges still open after depth d; open_none[d]: edges with no
  // endpoint assigned after depth d.
  std::vector<std::vector<int>> back(static_cast<std::size_t>(v)), half(static_cast<std::size_t>(v));
  std::vector<int> open_none(static_cast<std::size_t>(v), 0);
  for (const Edge& e : core.edges()) {
    const int a = std::min(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
    const int b = std::max(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
    back[static_cast<std::size_t>(b)].push_back(a);
    for (int d = 0; d < v; ++d) {
      if (a <= d && d < b) half[static_cast<std::size_t>(d)].push_back(a);
      if (d < a) ++open_none[static_cast<std::size_t>(d)];
    }
  }

  std::vector<double> row_max(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  double global_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) row_max[static_cast<std::size_t>(i)] = std::max(row_max[static_cast<std::size_t>(i)], weight(i, j));
    }
    global_max = std::max(global_max, row_max[static_cast<std::size_t>(i)]);
  }

  std::vector<int> assign(static_cast<std::size_t>(v), -1);  // by position
  std::vector<int> best_assign;
  std::vector<std::uint8_t> used(static_cast<std::size_t>(n), 0);
  double best = -std::numeric_limits<double>::infinity();
  bool have_best = false;
  std::uint64_t nodes = 0;
  const SearchLimits limits;

  auto dfs = [&](auto&& self, int depth, double partial) -> void {
    const int prev = plan.twin_prev[static_cast<std::size_t>(depth)];
    const int lower = prev >= 0 ? assign[static_cast<std::size_t>(prev)] + 1 : 0;
    for (int x = lower; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      if (++nodes > limits.max_nodes) throw ResourceError("find_max_weight_copy: search budget exhausted");
      double value = partial;
      for (int a : back[static_cast<std::size_t>(depth)]) value += weight(assign[static_cast<std::size_t>(a)], x);
      assign[static_cast<std::size_t>(depth)] = x;
      double bound = value + open_none[static_cast<std::size_t>(depth)] * global_max;
      for (int a : half[static_cast<std::size_t>(depth)]) bound += row_max[static_cast<std::size_t>(assign[static_cast<std::size_t>(a)])];
      if (have_best && bound <= best) continue;
      if (depth + 1 == v) {
        best = value;
        best_assign = assign;
        have_best = true;
        continue;
      }
      used[static_cast<std::size_t>(x)] = 1;
      self(self, depth + 1, value);
      used[static_cast<std::size_t>(x)] = 0;
    }
    assign[static_cast<std::size_t>(depth)] = -1;
  };
  dfs(dfs, 0, 0.0);

  WeightedCopy out;
  out.mapping.resize(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) out.mapping[static_cast<std::size_t>(plan.order[static_cast<std::size_t>(i)])] = best_assign[static_cast<std::size_t>(i)];
  std::vector<Edge> edges;
  for (const Edge& e : core.edges()) edges.push_back(make_edge(out.mapping[static_cast<std::size_t>(e.u)], out.mapping[static_cast<std::size_t>(e.v)]));
  out.copy = Graph::from_edges(n, edges);
  for (const Edge& e : out.copy.edges()) out.weight += weight(e.u, e.v);
  return out;
}

namespace {

std::vector<int> refined_colors(const Graph& g) {
  const int n = g.order();
  std::vector<int> color(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = g.degree(v);
  int classes = 0;
  while (true) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.push_back(color[static_cast<std::size_t>(v)]);
      std::vector<int> nb;
      for (int w : g.neighbors(v)) nb.push_back(color[static_cast<std::size_t>(w)]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (int v = 0; v < n; ++v) {
      color[static_cast<std::size_t>(v)] =
          static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[static_cast<std::size_t>(v)]) - uniq.begin());
    }
    if (static_cast<int>(uniq.size()) == classes) break;
    classes = static_cast<int>(uniq.size());
  }
  return color;
}

}  // namespace

// Bits are emitted column by column: (0,1), (0,2), (1,2), (0,3), ...
std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  if (n > 11) throw ResourceError("canonical_code: at most 11 vertices");
  if (n <= 1) return 0;
  const std::vector<int> color = refined_colors(g);
  std::vector<int> slot_color(static_cast<std::size_t>(n));
  {
    std::vector<int> sorted = color;
    std::sort(sorted.begin(), sorted.end());
    slot_color = sorted;
  }
  const int total_bits = n * (n - 1) / 2;
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<std::uint8_t> used(static_cast<std::size_t>(n), 0);
  std::uint64_t best = 0;
  bool have_best = false;

  auto dfs = [&](auto&& self, int j, std::uint64_t prefix, int bits) -> void {
    if (j == n) {
      if (!have_best || prefix > best) {
        best = prefix;
        have_best = true;
      }
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)] || color[static_cast<std::size_t>(x)] != slot_color[static_cast<std::size_t>(j)]) continue;
      std::uint64_t code = prefix;
      for (int i = 0; i < j; ++i) code = (code << 1) | (g.has_edge(perm[static_cast<std::size_t>(i)], x) ? 1U : 0U);
      const int nbits = bits + j;
      if (have_best && code < (best >> (total_bits - nbits))) continue;
      perm[static_cast<std::size_t>(j)] = x;
      used[static_cast<std::size_t>(x)] = 1;
      self(self, j + 1, code, nbits);
      used[static_cast<std::size_t>(x)] = 0;
    }
  };
  dfs(dfs, 0, 0, 0);
  return best;
}

Graph graph_from_code(int order, std::uint64_t code) {
  std::vector<Edge> edges;
  int bit = order * (order - 1) / 2;
  for (int j = 1; j < order; ++j) {
    for (int i = 0; i < j; ++i) {
      --bit;
      if ((code >> bit) & 1U) edges.push_back(Edge{i, j});
    }
  }
  return Graph::from_edges(order, edges);
}

}  // namespace plantlab
