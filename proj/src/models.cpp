#include "plantlab/models.hpp"

#include "plantlab/errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>

namespace plantlab {

namespace {

void require_probability(double x, const char* name, bool allow_one) {
  if (!(x > 0.0) || x > 1.0 || (!allow_one && x >= 1.0)) {
    throw InputError(std::string(name) + " must lie in (0," + (allow_one ? "1]" : "1)") + ", got " + std::to_string(x));
  }
}

double xlogy_ratio(double x, double a, double b) { return x == 0.0 ? 0.0 : x * std::log(a / b); }

}  // namespace

ModelParams ModelParams::from_family(int n, double p, double q, const FamilySpec& spec) {
  ModelParams params{n, p, q, make_family(spec), spec};
  params.validate();
  return params;
}

void ModelParams::validate() const {
  require_probability(q, "q", false);
  require_probability(p, "p", true);
  if (!(p > q)) throw InputError("model requires p > q");
  if (n < 1) throw InputError("n must be positive");
  if (gamma.order() > n) throw InputError("pattern has more vertices than n");
  if (gamma.empty()) throw InputError("pattern has no edges");
  if (gamma.non_isolated_count() != gamma.order()) throw InputError("pattern has isolated vertices");
}

std::string ModelParams::pattern_label() const {
  if (family) return family->to_string();
  return "custom(" + std::to_string(gamma.order()) + "," + std::to_string(gamma.size()) + ")";
}

Graph sample_er(int n, double q, Rng& rng) {
  if (n < 0) throw InputError("n must be nonnegative");
  require_probability(q, "q", false);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(q)) edges.push_back(Edge{i, j});
    }
  }
  return Graph::from_edges(n, edges);
}

PlantedInstance sample_null(const ModelParams& params, Rng& rng) {
  params.validate();
  PlantedInstance inst;
  inst.params = params;
  inst.seed = rng.seed();
  inst.graph = sample_er(params.n, params.q, rng);
  inst.planted_copy = Graph(params.n);
  return inst;
}

PlantedInstance sample_planted(const ModelParams& params, Rng& rng) {
  params.validate();
  const int n = params.n;
  const int v = params.gamma.order();
  PlantedInstance inst;
  inst.params = params;
  inst.seed = rng.seed();

  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < v; ++i) {
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  inst.planted_vertices.assign(pool.begin(), pool.begin() + v);

  std::vector<Edge> copy_edges;
  for (const Edge& e : params.gamma.edges()) {
    copy_edges.push_back(make_edge(inst.planted_vertices[static_cast<std::size_t>(e.u)], inst.planted_vertices[static_cast<std::size_t>(e.v)]));
  }
  inst.planted_copy = Graph::from_edges(n, copy_edges);

  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(inst.planted_copy.has_edge(i, j) ? params.p : params.q)) edges.push_back(Edge{i, j});
    }
  }
  inst.graph = Graph::from_edges(n, edges);
  return inst;
}

CenteredMatrix center_matrix(const Eigen::MatrixXd& adjacency, double q) {
  require_probability(q, "q", false);
  CenteredMatrix out{adjacency / q - Eigen::MatrixXd::Ones(adjacency.rows(), adjacency.cols()), q};
  out.W.diagonal().setZero();
  return out;
}

CenteredMatrix center_matrix(const Graph& g, double q) { return center_matrix(g.adjacency(), q); }

BernoulliDivergences bernoulli_divergences(double p, double q) {
  require_probability(q, "q", false);
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0,1]");
  return {xlogy_ratio(p, p, q) + xlogy_ratio(1.0 - p, 1.0 - p, 1.0 - q), (p - q) * (p - q) / (q * (1.0 - q))};
}

double expected_copy_count(const Graph& h, int n, double q) {
  const Graph core = h.without_isolated();
  if (core.order() > kMaxPatternVertices) throw ResourceError("expected_copy_count: pattern exceeds " + std::to_string(kMaxPatternVertices) + " vertices");
  return copies_in_complete(core, n).convert_to<double>() * std::pow(q, static_cast<double>(core.size()));
}

ThresholdReport expectation_threshold_check(const Graph& gamma, int n, double q) {
  const Graph core = gamma.without_isolated();
  if (core.order() > 8) throw ResourceError("expectation_threshold_check: pattern exceeds 8 vertices");
  if (core.empty()) throw InputError("expectation_threshold_check: pattern has no edges");
  require_probability(q, "q", true);

  // Grow isomorphism classes from a single edge: add an edge inside, a pendant
  // edge, or a disjoint edge. Removing an edge (and any isolated endpoint)
  // reverses one of these, so every class that embeds in gamma is reached.
  std::map<std::pair<int, std::uint64_t>, Graph> seen;
  std::queue<Graph> frontier;
  const Graph edge = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
  seen.emplace(std::make_pair(2, canonical_code(edge)), edge);
  frontier.push(edge);
  while (!frontier.empty()) {
    const Graph h = frontier.front();
    frontier.pop();
    const int v = h.order();
    std::vector<Graph> next;
    std::vector<Edge> base(h.edges().begin(), h.edges().end());
    for (int a = 0; a < v; ++a) {
      for (int b = a + 1; b < v; ++b) {
        if (h.has_edge(a, b)) continue;
        auto e = base;
        e.push_back(Edge{a, b});
        next.push_back(Graph::from_edges(v, e));
      }
      auto e = base;
      e.push_back(Edge{a, v});
      next.push_back(Graph::from_edges(v + 1, e));
    }
    auto e = base;
    e.push_back(Edge{v, v + 1});
    next.push_back(Graph::from_edges(v + 2, e));
    for (Graph& g : next) {
      if (g.order() > core.order() || g.size() > core.size()) continue;
      const auto key = std::make_pair(g.order(), canonical_code(g));
      if (seen.count(key)) continue;
      if (count_copies(g, core) == 0) {
        seen.emplace(key, Graph());
        continue;
      }
      seen.emplace(key, g);
      frontier.push(std::move(g));
    }
  }

  ThresholdReport report;
  report.infimum = std::numeric_limits<double>::infinity();
  for (const auto& [key, h] : seen) {
    if (h.order() == 0) continue;
    ThresholdEntry entry;
    entry.h = graph_from_code(key.first, key.second);
    entry.copies_in_gamma = count_copies(entry.h, core);
    entry.copies_in_complete = copies_in_complete(entry.h, n);
    entry.expected = entry.copies_in_complete.convert_to<double>() * std::pow(q, static_cast<double>(entry.h.size()));
    entry.ratio = entry.expected / entry.copies_in_gamma.convert_to<double>();
    report.infimum = std::min(report.infimum, entry.ratio);
    report.entries.push_back(std::move(entry));
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const ThresholdEntry& a, const ThresholdEntry& b) {
    if (a.h.size() != b.h.size()) return a.h.size() < b.h.size();
    return a.h.order() < b.h.order();
  });
  report.holds = report.infimum >= 0.5;
  return report;
}

nlohmann::json instance_sidecar(const PlantedInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.params.n;
  j["p"] = inst.params.p;
  j["q"] = inst.params.q;
  j["family"] = inst.params.family ? nlohmann::json(inst.params.family->to_string()) : nlohmann::json(nullptr);
  if (!inst.params.family) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : inst.params.gamma.edges()) edges.push_back({e.u + 1, e.v + 1});
    j["gamma"] = {{"order", inst.params.gamma.order()}, {"edges", edges}};
  }
  j["seed"] = inst.seed;
  nlohmann::json copy = nlohmann::json::array();
  for (const Edge& e : inst.planted_copy.edges()) copy.push_back({e.u + 1, e.v + 1});
  j["planted_copy_edges"] = copy;
  if (inst.has_plant()) {
    nlohmann::json verts = nlohmann::json::array();
    for (int x : inst.planted_vertices) verts.push_back(x + 1);
    j["planted_vertices"] = verts;
  }
  return j;
}

void save_instance(const std::string& prefix, const PlantedInstance& inst) {
  save_edge_list(prefix + ".edges", inst.graph);
  std::ofstream out(prefix + ".json");
  if (!out) throw InputError("cannot write " + prefix + ".json");
  out << instance_sidecar(inst).dump(2) << "\n";
}

PlantedInstance load_instance(const std::string& edges_path, const std::string& sidecar_path) {
  PlantedInstance inst;
  inst.graph = load_edge_list(edges_path);
  std::ifstream in(sidecar_path);
  if (!in) throw InputError("cannot read " + sidecar_path);
  nlohmann::json j;
  try {
    in >> j;
    ModelParams& params = inst.params;
    params.n = j.at("n").get<int>();
    params.p = j.at("p").get<double>();
    params.q = j.at("q").get<double>();
    if (j.contains("family") && !j.at("family").is_null()) {
      params.family = j.at("family").get<FamilySpec>();
      params.gamma = make_family(*params.family);
    } else {
      std::vector<Edge> edges;
      for (const auto& e : j.at("gamma").at("edges")) edges.push_back(Edge{e.at(0).get<int>() - 1, e.at(1).get<int>() - 1});
      params.gamma = Graph::from_edges(j.at("gamma").at("order").get<int>(), edges);
    }
    inst.seed = j.value("seed", std::uint64_t{0});
    std::vector<Edge> copy;
    for (const auto& e : j.at("planted_copy_edges")) copy.push_back(Edge{e.at(0).get<int>() - 1, e.at(1).get<int>() - 1});
    inst.planted_copy = Graph::from_edges(params.n, copy);
    if (j.contains("planted_vertices")) {
      for (const auto& x : j.at("planted_vertices")) inst.planted_vertices.push_back(x.get<int>() - 1);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(sidecar_path + ": " + e.what());
  }
  if (inst.graph.order() != inst.params.n) throw InputError("sidecar n does not match the edge list");
  inst.params.validate();
  return inst;
}

}  // namespace plantlab
