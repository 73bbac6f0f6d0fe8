#include <doctest.h>

#include "oracles.hpp"
#include "plantlab/errors.hpp"
#include "plantlab/family.hpp"
#include "plantlab/solvers.hpp"
#include "plantlab/spectral.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace plantlab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
  }
  return m;
}

/// Nuclear norm through singular values, independent of the eigensolver path.
double svd_nuclear(const MatrixXd& m) { return Eigen::JacobiSVD<MatrixXd>(m).singularValues().sum(); }

/// l1-ball projection by bisection on the soft threshold.
VectorXd l1_oracle(const VectorXd& v, double t) {
  if (v.cwiseAbs().sum() <= t) return v;
  double lo = 0.0, hi = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double mass = (v.cwiseAbs().array() - mid).max(0.0).sum();
    (mass > t ? lo : hi) = mid;
  }
  VectorXd out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = std::copysign(std::max(std::abs(v(i)) - hi, 0.0), v(i));
  return out;
}

CenteredMatrix centered(const Graph& g, double q) { return center_matrix(g, q); }

}  // namespace

TEST_CASE("l1 ball projection matches a bisection oracle") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    VectorXd v(1 + trial % 12);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
    const double t = 0.1 + 3.0 * std::abs(g(rng));
    CHECK((project_l1_ball(v, t) - l1_oracle(v, t)).cwiseAbs().maxCoeff() < 1e-9);
  }
  VectorXd tied(4);
  tied << 2.0, -2.0, 2.0, 0.5;
  const VectorXd p = project_l1_ball(tied, 3.0);
  CHECK(p(0) == doctest::Approx(1.0));
  CHECK(p(1) == doctest::Approx(-1.0));
  CHECK(p(2) == doctest::Approx(1.0));
  CHECK(p(3) == 0.0);
}

TEST_CASE("nuclear ball projection examples") {
  MatrixXd s = MatrixXd::Zero(2, 2);
  s(0, 0) = 3.0;
  s(1, 1) = -1.0;
  const MatrixXd p = project_nuclear_ball(s, 2.0);
  CHECK(p(0, 0) == doctest::Approx(2.0));
  CHECK(std::abs(p(1, 1)) < 1e-12);
  CHECK(std::abs(p(0, 1)) < 1e-12);

  std::mt19937_64 rng(2);
  const MatrixXd inside = random_symmetric(5, rng);
  CHECK(project_nuclear_ball(inside, svd_nuclear(inside) + 1.0) == inside);
  CHECK(project_nuclear_ball(inside, 0.0).isZero());
  CHECK_THROWS_AS(project_nuclear_ball(inside, -1.0), InputError);
  MatrixXd asym = inside;
  asym(0, 1) += 1.0;
  CHECK_THROWS_AS(project_nuclear_ball(asym, 1.0), InputError);
}

TEST_CASE("box and PSD projection examples") {
  MatrixXd m(1, 3);
  m << 1.7, -0.2, 0.4;
  const MatrixXd b = project_box(m);
  CHECK(b(0, 0) == 1.0);
  CHECK(b(0, 1) == 0.0);
  CHECK(b(0, 2) == 0.4);

  MatrixXd d = MatrixXd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -3.0;
  const MatrixXd p = project_psd(d);
  CHECK(p(0, 0) == doctest::Approx(2.0));
  CHECK(std::abs(p(1, 1)) < 1e-12);
  CHECK(project_psd(-MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  std::mt19937_64 rng(3);
  const MatrixXd g = random_symmetric(6, rng);
  const MatrixXd psd = g * g;
  CHECK((project_psd(psd) - psd).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("projections are idempotent and optimal") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 9;
    const MatrixXd s = random_symmetric(n, rng, 2.0);
    const double t = 0.5 + 4.0 * u(rng);

    const MatrixXd pn = project_nuclear_ball(s, t);
    CHECK((pn - pn.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(svd_nuclear(pn) <= t + 1e-8);
    CHECK((project_nuclear_ball(pn, t) - pn).cwiseAbs().maxCoeff() < 1e-10);
    const MatrixXd pb = project_box(s);
    CHECK(project_box(pb) == pb);
    const MatrixXd pp = project_psd(s);
    CHECK((project_psd(pp) - pp).cwiseAbs().maxCoeff() < 1e-10);

    // random members of each set
    MatrixXd yn = random_symmetric(n, rng);
    yn *= t * u(rng) / svd_nuclear(yn);
    MatrixXd yb(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) yb(i, j) = u(rng);
    }
    const MatrixXd g = random_symmetric(n, rng);
    const MatrixXd yp = g * g;
    CHECK((s - pn).norm() <= (s - yn).norm() + 1e-9);
    CHECK((s - pb).norm() <= (s - yb).norm() + 1e-9);
    CHECK((s - pp).norm() <= (s - yp).norm() + 1e-9);
  }
}

TEST_CASE("solver config JSON") {
  const SolveConfig cfg = nlohmann::json::parse(R"({"rho":2.5,"max_iters":300})").get<SolveConfig>();
  CHECK(cfg.rho == 2.5);
  CHECK(cfg.max_iters == 300);
  CHECK(cfg.tol_primal == 1e-6);
  const nlohmann::json back = cfg;
  CHECK(back.get<SolveConfig>().rho == 2.5);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"alpha":2.0})").get<SolveConfig>(), ConfigError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"tol_primal":0})").get<SolveConfig>(), ConfigError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"max_iters":0})").get<SolveConfig>(), ConfigError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"step":1})").get<SolveConfig>(), ConfigError);
}

TEST_CASE("nuclear program small cases") {
  // W = 0: objective is exactly zero
  const auto zero = solve_nuclear_program(CenteredMatrix{MatrixXd::Zero(5, 5), 0.5}, 3.0);
  CHECK(zero.converged);
  CHECK(zero.objective == 0.0);

  // n = 2, off-diagonal weight 1, t = 2: Z = J is feasible (eigenvalues 2, 0) and optimal
  MatrixXd w = MatrixXd::Zero(2, 2);
  w(0, 1) = w(1, 0) = 1.0;
  const auto two = solve_nuclear_program(CenteredMatrix{w, 0.5}, 2.0);
  CHECK(two.converged);
  CHECK(two.objective == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(two.Z(0, 1) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(two.max_violation() <= 1e-8);

  MatrixXd bad = w;
  bad(0, 1) = bad(1, 0) = std::nan("");
  CHECK_THROWS_AS(solve_nuclear_program(CenteredMatrix{bad, 0.5}, 2.0), InputError);
  CHECK_THROWS_AS(solve_nuclear_program(CenteredMatrix{w, 0.5}, -1.0), InputError);
}

TEST_CASE("nuclear program bounds on planted instances") {
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 8 + trial;
    const FamilySpec fam = trial % 2 == 0 ? FamilySpec::clique(4) : FamilySpec::complete_bipartite(2, 3);
    const auto params = ModelParams::from_family(n, 0.9, 0.4, fam);
    const auto inst = sample_planted(params, rng);
    const auto w = centered(inst.graph, params.q);
    const double t = closed_form_nuclear_norm(fam).value;
    const auto res = solve_nuclear_program(w, t);
    REQUIRE(res.converged);
    CHECK(res.max_violation() <= 1e-8);
    CHECK(svd_nuclear(res.Z) <= t + 1e-8);
    CHECK(res.Z.minCoeff() >= 0.0);
    CHECK(res.Z.maxCoeff() <= 1.0);
    // the planted copy is feasible
    const double planted = inner(w.W, inst.planted_copy.adjacency());
    CHECK(res.objective >= planted - 1e-4 * std::abs(res.objective));
    // <W,Z> <= ||Z||_* ||W||_op
    CHECK(res.objective <= t * spectral_norm(w.W) + 1e-6);
  }
}

TEST_CASE("nuclear program dominates the brute-force MLE") {
  Rng rng(6);
  const Graph tri = make_family(FamilySpec::clique(3));
  const Graph p4 = make_family(FamilySpec::path(4));
  for (int trial = 0; trial < 20; ++trial) {
    const Graph& gamma = trial % 2 == 0 ? tri : p4;
    const int n = 5 + trial % 4;
    const auto w = centered(sample_er(n, 0.5, rng), 0.5);
    const double mle = 2.0 * oracle::max_weight_copy(gamma, w.W);
    const auto res = solve_nuclear_program(w, nuclear_norm(gamma.adjacency()));
    REQUIRE(res.converged);
    CHECK(res.objective >= mle - 1e-5 * (1.0 + std::abs(mle)));
  }
}

TEST_CASE("nuclear program is monotone under deletions") {
  Rng rng(7);
  const double t = 6.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = sample_er(10, 0.5, rng);
    const Graph h = g.filter_edges([&](const Edge&) { return rng.bernoulli(0.7); });
    SolveConfig cfg;
    const auto full = solve_nuclear_program(centered(g, 0.5), t, cfg);
    const auto cut = solve_nuclear_program(centered(h, 0.5), t, cfg);
    REQUIRE(full.converged);
    REQUIRE(cut.converged);
    const double tol = cfg.tol_primal * (1.0 + full.Z.norm());
    CHECK(cut.objective <= full.objective + 2.0 * tol);
  }
}

TEST_CASE("nuclear program trace file") {
  const auto path = std::filesystem::temp_directory_path() / "plantlab_trace.csv";
  SolveConfig cfg;
  cfg.trace_path = path.string();
  MatrixXd w = MatrixXd::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1.0;
  const auto res = solve_nuclear_program(CenteredMatrix{w, 0.5}, 1.0, cfg);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "iter,objective,residual_primal,residual_dual");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == res.iters);
  std::filesystem::remove(path);
}

TEST_CASE("clique SDP small cases") {
  const auto zero = solve_clique_sdp(CenteredMatrix{MatrixXd::Zero(4, 4), 0.5}, 2);
  CHECK(zero.converged);
  CHECK(std::abs(zero.objective) < 1e-6);

  // n = k = 3, W = J - I: every feasible Z has <W,Z> = sum - trace = 9 - 3
  const MatrixXd w = MatrixXd::Ones(3, 3) - MatrixXd::Identity(3, 3);
  const auto full = solve_clique_sdp(CenteredMatrix{w, 0.5}, 3);
  CHECK(full.converged);
  CHECK(full.objective == doctest::Approx(6.0).epsilon(1e-5));
  CHECK(full.max_violation() <= 1e-5);
  CHECK_THROWS_AS(solve_clique_sdp(CenteredMatrix{w, 0.5}, 4), InputError);
  CHECK_THROWS_AS(solve_clique_sdp(CenteredMatrix{w, 0.5}, 0), InputError);
}

TEST_CASE("clique SDP on planted cliques") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 5;
    const auto params = ModelParams::from_family(20, 1.0, 0.5, FamilySpec::clique(k));
    const auto inst = sample_planted(params, rng);
    const auto res = solve_clique_sdp(centered(inst.graph, 0.5), k);
    REQUIRE(res.converged);
    CHECK(res.max_violation() <= 1e-4);
    // xi xi^T over the planted vertices is feasible with value k(k-1)
    CHECK(res.objective >= k * (k - 1) - 1e-3);
    // zero diagonal: <W,Z> <= sum Z - Tr Z = k^2 - k
    CHECK(res.objective <= k * (k - 1) + 1e-3);
  }
}

TEST_CASE("subgraph selection relaxation") {
  const Graph edge = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  const auto one = solve_subgraph_selection(edge);
  CHECK(one.relax.converged);
  CHECK(one.relax.objective == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(one.relax.Z(0, 2) == 0.0);
  CHECK(one.relax.Z(1, 2) == 0.0);
  CHECK(one.proposal == edge);
  CHECK(subgraph_selection_bruteforce(edge) == doctest::Approx(1.0));

  const Graph k4 = make_family(FamilySpec::clique(4));
  const auto sel = solve_subgraph_selection(k4);
  // brute force over all 2^6 - 1 edge subsets, nuclear norm through the SVD
  double opt_d = 0.0;
  for (std::uint32_t mask = 1; mask < 64; ++mask) {
    MatrixXd a = MatrixXd::Zero(4, 4);
    for (std::size_t i = 0; i < 6; ++i) {
      if ((mask >> i) & 1u) a(k4.edges()[i].u, k4.edges()[i].v) = a(k4.edges()[i].v, k4.edges()[i].u) = 1.0;
    }
    opt_d = std::max(opt_d, a.sum() / svd_nuclear(a));
  }
  CHECK(subgraph_selection_bruteforce(k4) == doctest::Approx(opt_d));
  CHECK(opt_d <= sel.relax.objective + 1e-5);
  // K4 itself attains 12 / 6 = 2
  CHECK(opt_d == doctest::Approx(2.0));
  CHECK(sel.proposal == k4);

  CHECK_THROWS_AS(solve_subgraph_selection(Graph(4)), InputError);
  CHECK_THROWS_AS(subgraph_selection_bruteforce(Graph(4)), InputError);
}
