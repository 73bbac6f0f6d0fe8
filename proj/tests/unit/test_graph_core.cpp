#include <doctest.h>

#include "oracles.hpp"
#include "plantlab/combinatorics.hpp"
#include "plantlab/density.hpp"
#include "plantlab/errors.hpp"
#include "plantlab/family.hpp"
#include "plantlab/graph.hpp"
#include "plantlab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace plantlab;

namespace {

Graph triangle() { return make_family(FamilySpec::clique(3)); }
Graph single_edge() { return make_family(FamilySpec::clique(2)); }
Graph path3() { return make_family(FamilySpec::path(3)); }

Graph random_permuted(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back(make_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]));
  return Graph::from_edges(g.order(), edges);
}

}  // namespace

TEST_CASE("graph construction dedups and validates") {
  const std::vector<std::pair<int, int>> tri{{0, 1}, {1, 2}, {0, 2}};
  const Graph g = Graph::from_edges(3, std::span<const std::pair<int, int>>(tri));
  CHECK(g.order() == 3);
  CHECK(g.size() == 3);
  CHECK(Graph(4).size() == 0);

  const std::vector<std::pair<int, int>> dup{{0, 1}, {1, 0}};
  const Graph d = Graph::from_edges(3, std::span<const std::pair<int, int>>(dup));
  CHECK(d.size() == 1);
  CHECK(d.has_edge(0, 1));
  CHECK(d.has_edge(1, 0));

  const std::vector<std::pair<int, int>> loop{{1, 1}};
  CHECK_THROWS_AS(Graph::from_edges(3, std::span<const std::pair<int, int>>(loop)), InputError);
  const std::vector<std::pair<int, int>> out{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, std::span<const std::pair<int, int>>(out)), InputError);

  const Eigen::MatrixXd a = g.adjacency();
  CHECK(a.isApprox(a.transpose()));
  CHECK(a.diagonal().isZero());
}

TEST_CASE("edge-list text format round trip") {
  const Graph g = make_family(FamilySpec::complete_bipartite(2, 3));
  std::stringstream ss;
  write_edge_list(ss, g);
  const std::string text = ss.str();
  CHECK(text.rfind("5 6\n1 3\n", 0) == 0);
  std::stringstream in(text);
  CHECK(read_edge_list(in) == g);

  std::stringstream bad_count("3 2\n1 2\n");
  CHECK_THROWS_AS(read_edge_list(bad_count), InputError);
  std::stringstream bad_range("3 1\n1 4\n");
  CHECK_THROWS_AS(read_edge_list(bad_range), InputError);
  std::stringstream zero_based("3 1\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(zero_based), InputError);
}

TEST_CASE("named families") {
  const Graph k4 = make_family(FamilySpec::clique(4));
  CHECK(k4.order() == 4);
  CHECK(k4.size() == 6);
  const Graph b = make_family(FamilySpec::complete_bipartite(2, 3));
  CHECK(b.order() == 5);
  CHECK(b.size() == 6);

  // balanced 3-partition {0,1},{2,3},{4,5}: all cross pairs
  const Graph t = make_family(FamilySpec::turan(6, 3));
  std::vector<Edge> expected;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (i / 2 != j / 2) expected.push_back(Edge{i, j});
    }
  }
  CHECK(t == Graph::from_edges(6, expected));
  CHECK(t.size() == 12);

  const Graph s = make_family(FamilySpec::star(4));
  CHECK(s.order() == 5);
  CHECK(s.degree(0) == 4);

  const Graph u = make_family(FamilySpec::parse("disjoint_union(clique(4), path(10))"));
  CHECK(u.order() == 14);
  CHECK(u.size() == 6 + 9);
  CHECK(u.has_edge(4, 5));
  CHECK_FALSE(u.has_edge(3, 4));
  CHECK(u.non_isolated_count() == u.order());

  CHECK_THROWS_AS(FamilySpec::parse("clique(1)"), InputError);
  CHECK_THROWS_AS(FamilySpec::parse("turan(3,4)"), InputError);
  CHECK_THROWS_AS(FamilySpec::parse("wheel(5)"), InputError);
  CHECK_THROWS_AS(FamilySpec::parse("clique(4"), InputError);
  CHECK(FamilySpec::parse(" complete_bipartite( 2 ,3 )").to_string() == "complete_bipartite(2,3)");
}

TEST_CASE("family JSON forms") {
  const auto a = nlohmann::json("star(6)").get<FamilySpec>();
  CHECK(a.vertex_count() == 7);
  const auto b = nlohmann::json::parse(R"j({"kind":"disjoint_union","parts":[{"kind":"clique","k":3},"path(4)"]})j").get<FamilySpec>();
  CHECK(b.to_string() == "disjoint_union(clique(3),path(4))");
  CHECK(nlohmann::json(b).get<std::string>() == b.to_string());
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"kind":"turan","v":6})").get<FamilySpec>(), InputError);
}

TEST_CASE("nuclear norm examples") {
  CHECK(nuclear_norm(make_family(FamilySpec::clique(4)).adjacency()) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(nuclear_norm(Eigen::MatrixXd::Zero(5, 5)) == 0.0);
  // [[0,1],[1,0]] has eigenvalues +1 and -1
  CHECK(nuclear_norm(single_edge().adjacency()) == doctest::Approx(2.0).epsilon(1e-12));

  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(3, 3);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(nuclear_norm(asym), InputError);
  asym(1, 0) = 1.0 + 1e-13;
  CHECK_NOTHROW(nuclear_norm(asym));
  CHECK_THROWS_AS(nuclear_norm(Eigen::MatrixXd::Zero(2, 3)), InputError);
}

TEST_CASE("closed-form nuclear norms") {
  CHECK(closed_form_nuclear_norm(FamilySpec::clique(10)).value == doctest::Approx(18.0));
  CHECK(closed_form_nuclear_norm(FamilySpec::complete_bipartite(2, 3)).value == doctest::Approx(2.0 * std::sqrt(6.0)));
  CHECK(closed_form_nuclear_norm(FamilySpec::path(2)).value == doctest::Approx(2.0));
  CHECK(closed_form_nuclear_norm(FamilySpec::turan(6, 3)).bound_only);
  CHECK_THROWS_AS(closed_form_nuclear_norm(FamilySpec::star(3)), UnsupportedError);

  for (int v = 2; v <= 60; ++v) {
    for (const auto& spec : {FamilySpec::clique(v), FamilySpec::path(v)}) {
      CHECK(std::abs(nuclear_norm(make_family(spec).adjacency()) - closed_form_nuclear_norm(spec).value) <= 1e-8);
    }
  }
  for (int l = 1; l <= 30; ++l) {
    for (int r = 1; l + r <= 60; r += 7) {
      const auto spec = FamilySpec::complete_bipartite(l, r);
      CHECK(std::abs(nuclear_norm(make_family(spec).adjacency()) - closed_form_nuclear_norm(spec).value) <= 1e-8);
    }
  }
  for (int v = 2; v <= 40; ++v) {
    for (int r = 2; r <= v; ++r) {
      const auto spec = FamilySpec::turan(v, r);
      CHECK(nuclear_norm(make_family(spec).adjacency()) <= closed_form_nuclear_norm(spec).value + 1e-8);
    }
  }
}

TEST_CASE("nuclear norm lower bounds on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_graph(2 + trial % 25, 0.3, rng);
    if (g.empty()) continue;
    const Eigen::MatrixXd a = g.adjacency();
    const double nuc = nuclear_norm(a);
    const double m = static_cast<double>(g.size());
    CHECK(nuc >= std::sqrt(2.0 * m) - 1e-9);
    CHECK(nuc >= 2.0 * m / spectral_norm(a) - 1e-8);
  }
}

TEST_CASE("symmetric eigen sign convention") {
  const Eigen::MatrixXd a = make_family(FamilySpec::path(5)).adjacency();
  const auto eig = symmetric_eigen(a);
  for (Eigen::Index c = 0; c < eig.vectors.cols(); ++c) {
    Eigen::Index r = 0;
    while (eig.vectors(r, c) == 0.0) ++r;
    CHECK(eig.vectors(r, c) > 0.0);
  }
  CHECK((eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose() - a).norm() < 1e-12);
}

TEST_CASE("count_copies examples") {
  CHECK(count_copies(triangle(), make_family(FamilySpec::clique(4))) == 4);
  const Graph b = make_family(FamilySpec::complete_bipartite(2, 3));
  CHECK(count_copies(single_edge(), b) == 6);
  CHECK(count_copies(triangle(), b) == 0);
  CHECK(count_copies(triangle(), make_family(FamilySpec::clique(4))) == oracle::count_copies(triangle(), make_family(FamilySpec::clique(4))));
  CHECK_THROWS_AS(count_copies(make_family(FamilySpec::path(11)), Graph(20)), ResourceError);
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(triangle()) == 6);
  CHECK(automorphism_count(path3()) == 2);
  CHECK(automorphism_count(make_family(FamilySpec::star(4))) == 24);
  CHECK(automorphism_count(Graph(3)) == 6);
  CHECK_THROWS_AS(automorphism_count(make_family(FamilySpec::clique(11))), ResourceError);
  // large groups through twin classes
  CHECK(automorphism_group_order(make_family(FamilySpec::clique(20))) == BigInt("2432902008176640000"));
  CHECK(automorphism_group_order(make_family(FamilySpec::complete_bipartite(3, 3))) == 72);
  CHECK(automorphism_group_order(make_family(FamilySpec::path(10))) == 2);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph h = oracle::random_graph(2 + trial % 6, 0.5, rng);
    CHECK(automorphism_count(h) == oracle::automorphisms(h));
  }
}

TEST_CASE("copies in the complete graph") {
  CHECK(copies_in_complete(triangle(), 4) == 4);
  CHECK(copies_in_complete(single_edge(), 5) == 10);
  CHECK(copies_in_complete(path3(), 4) == 12);
  CHECK(copies_in_complete(path3(), 4) == oracle::copies_in_kn(path3(), 4).size());
  CHECK(copies_in_complete(make_family(FamilySpec::clique(5)), 100) == BigInt(75287520));

  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    const Graph h = oracle::random_graph(2 + trial % 4, 0.6, rng).without_isolated();
    if (h.order() == 0) continue;
    for (int n = h.order(); n <= 7; n += 2) {
      CHECK(count_copies(h, make_family(FamilySpec::clique(n))) == copies_in_complete(h, n));
    }
    ++checked;
  }
}

TEST_CASE("count_copies agrees with brute force on random hosts") {
  std::mt19937_64 rng(13);
  const std::vector<Graph> patterns{single_edge(), path3(), triangle(), make_family(FamilySpec::star(3)),
                                    make_family(FamilySpec::path(4)), make_family(FamilySpec::complete_bipartite(2, 2))};
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_graph(6, 0.5, rng);
    for (const Graph& h : patterns) CHECK(count_copies(h, g) == oracle::count_copies(h, g));
  }
}

TEST_CASE("embedding search symmetry breaking") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_graph(7, 0.6, rng);
    const Graph h = make_family(FamilySpec::complete_bipartite(2, 3));
    EmbeddingSearch all(h, g, false);
    EmbeddingSearch ordered(h, g, true);
    CHECK(BigInt(all.count()) == BigInt(ordered.count()) * ordered.twin_group_order());
  }
  // clique(12) inside G(40, 1/2) is absent and the search terminates quickly
  std::mt19937_64 rng2(3);
  const Graph host = oracle::random_graph(40, 0.5, rng2);
  EmbeddingSearch s(make_family(FamilySpec::clique(12)), host);
  CHECK_FALSE(s.exists());
}

TEST_CASE("embedding search node budget") {
  const Graph host = make_family(FamilySpec::clique(30));
  EmbeddingSearch s(make_family(FamilySpec::path(8)), host, true, SearchLimits{1000});
  CHECK_THROWS_AS(s.count(), ResourceError);
}

TEST_CASE("containment probability") {
  const auto a = containment_probability(single_edge(), triangle(), 4);
  CHECK(a.probability == Rational(1, 2));
  CHECK(a.vertex_bound == Rational(9, 16));
  CHECK(a.vertex_bound >= a.probability);
  CHECK(containment_probability(triangle(), triangle(), 3).probability == 1);
  CHECK(containment_probability(triangle(), make_family(FamilySpec::path(4)), 6).probability == 0);
  CHECK(containment_probability(single_edge(), triangle(), 5).probability == Rational(3, 10));
}

TEST_CASE("max subgraph density") {
  CHECK(max_subgraph_density(make_family(FamilySpec::clique(4))).value == Rational(3, 2));
  CHECK(max_subgraph_density(make_family(FamilySpec::star(4))).value == Rational(4, 5));
  CHECK(max_subgraph_density(make_family(FamilySpec::parse("disjoint_union(clique(4),path(10))"))).value == Rational(3, 2));
  CHECK(max_subgraph_density(make_family(FamilySpec::clique(7))).value == Rational(3));
  CHECK_THROWS_AS(max_subgraph_density(Graph(4)), InputError);

  const auto star = densest_subgraph(make_family(FamilySpec::star(4)));
  CHECK(star.density.edges == 4);
  CHECK(star.density.vertices == 5);
  const auto u = densest_subgraph(make_family(FamilySpec::parse("disjoint_union(clique(4),path(10))")));
  CHECK(u.vertices == std::vector<int>{0, 1, 2, 3});
  // two disjoint K4s tie; the maximal densest subgraph keeps both
  const auto two = densest_subgraph(make_family(FamilySpec::parse("disjoint_union(clique(4),clique(4),path(3))")));
  CHECK(two.vertices.size() == 8);
  CHECK(two.density.edges == 12);
}

TEST_CASE("max-flow density equals brute force on random small graphs") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  for (int trial = 0; tested < 250; ++trial) {
    const int n = 2 + trial % 7;
    const Graph g = oracle::random_graph(n, 0.15 + 0.1 * (trial % 7), rng);
    if (g.empty()) continue;
    const auto flow = densest_subgraph(g);
    const auto [e, v] = oracle::densest(g);
    CHECK(flow.density.value == Rational(BigInt(e), BigInt(v)));
    CHECK(flow.density.edges == e);
    CHECK(max_subgraph_density_brute_force(g).value == flow.density.value);
    ++tested;
  }
}

TEST_CASE("find_max_weight_copy examples") {
  const auto k4 = make_family(FamilySpec::clique(4)).adjacency();
  CHECK(find_max_weight_copy(triangle(), k4).weight == 3.0);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 5.0;
  w(2, 3) = w(3, 2) = 1.0;
  const auto e = find_max_weight_copy(single_edge(), w);
  CHECK(e.weight == 5.0);
  CHECK(e.copy.has_edge(0, 1));
  CHECK(e.copy.size() == 1);

  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
  const auto p = find_max_weight_copy(path3(), ones);
  CHECK(p.weight == 2.0);
  // center on vertex 0, leaves 1 and 2
  CHECK(p.copy == Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}}));

  CHECK_THROWS_AS(find_max_weight_copy(make_family(FamilySpec::clique(11)), Eigen::MatrixXd::Zero(20, 20)), ResourceError);
  CHECK_THROWS_AS(find_max_weight_copy(triangle(), Eigen::MatrixXd::Zero(41, 41)), ResourceError);
}

TEST_CASE("find_max_weight_copy equals exhaustive enumeration") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  const std::vector<Graph> patterns{single_edge(), path3(), triangle(), make_family(FamilySpec::star(3)),
                                    make_family(FamilySpec::path(4)), make_family(FamilySpec::complete_bipartite(2, 2)),
                                    make_family(FamilySpec::clique(4))};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + trial % 3;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = (trial % 2 == 0) ? normal(rng) : static_cast<double>(rng() % 3);
    }
    for (const Graph& h : patterns) {
      const auto found = find_max_weight_copy(h, w);
      CHECK(found.weight == doctest::Approx(oracle::max_weight_copy(h, w)).epsilon(1e-12));
      CHECK(found.copy.size() == h.size());
    }
  }
}

TEST_CASE("canonical codes identify isomorphism classes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_graph(2 + trial % 8, 0.45, rng);
    const Graph h = random_permuted(g, rng);
    CHECK(canonical_code(g) == canonical_code(h));
    const Graph back = graph_from_code(g.order(), canonical_code(g));
    CHECK(back.size() == g.size());
    CHECK(canonical_code(back) == canonical_code(g));
  }
  CHECK(canonical_code(path3()) != canonical_code(Graph::from_edges(3, std::vector<Edge>{{0, 1}})));
  CHECK(canonical_code(make_family(FamilySpec::path(4))) != canonical_code(make_family(FamilySpec::star(3))));
}
