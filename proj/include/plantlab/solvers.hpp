#pragma once

#include "plantlab/graph.hpp"
#include "plantlab/models.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace plantlab {

/// Euclidean projection of v onto {x : ||x||_1 <= t}, signs preserved.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& v, double t);

/// Frobenius-nearest symmetric matrix with nuclear norm <= t.
Eigen::MatrixXd project_nuclear_ball(const Eigen::MatrixXd& s, double t);
/// Entrywise clamp to [0,1].
Eigen::MatrixXd project_box(const Eigen::MatrixXd& m);
/// Nearest positive semidefinite matrix.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& s);

struct SolveConfig {
  /// ADMM penalty. 0 selects 4 ||W||_F / t for the nuclear program and 10 for the clique SDP.
  double rho = 0.0;
  double tol_primal = 1e-6;
  double tol_dual = 1e-6;
  int max_iters = 5000;
  /// Over-relaxation factor in [1, 1.8].
  double alpha = 1.6;
  /// Residual balancing: rho is doubled or halved when one residual dominates the other tenfold.
  bool adaptive_rho = false;
  /// Anderson acceleration memory (0 disables it).
  int anderson_memory = 10;
  /// When non-empty, one CSV row (iter, objective, residuals) per iteration is written here.
  std::string trace_path;

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

void to_json(nlohmann::json& j, const SolveConfig& cfg);
/// Missing keys keep their defaults; unknown keys are a ConfigError.
void from_json(const nlohmann::json& j, SolveConfig& cfg);

struct SolveResult {
  Eigen::MatrixXd Z;
  /// <W, Z> for the returned Z.
  double objective = 0.0;
  double residual_primal = 0.0;
  double residual_dual = 0.0;
  /// Per-constraint violation of the returned Z, recomputed at exit.
  std::vector<std::pair<std::string, double>> feasibility;
  int iters = 0;
  bool converged = false;

  double max_violation() const;
};

void to_json(nlohmann::json& j, const SolveResult& r);

/// maximize <W,Z> s.t. ||Z||_* <= t, 0 <= Z <= J, Z symmetric.
SolveResult solve_nuclear_program(const CenteredMatrix& w, double t, const SolveConfig& cfg = {});

/// maximize <W,Z> s.t. Z PSD, Z >= 0, Tr Z = k, sum Z = k^2.
SolveResult solve_clique_sdp(const CenteredMatrix& w, int k, const SolveConfig& cfg = {});

struct SubgraphSelection {
  /// Optimal X of the relaxation.
  SolveResult relax;
  /// Edges with X_ij >= threshold.
  Graph proposal;
  double threshold = 0.0;
};

/// maximize <X,A> s.t. ||X||_* <= 1, 0 <= X <= J, X_ij = 0 off the edges of `gamma`,
/// then keep the edges whose X entry reaches `level` times the largest entry.
SubgraphSelection solve_subgraph_selection(const Graph& gamma, const SolveConfig& cfg = {}, double level = 0.5);

/// max over nonempty edge subsets A' of <A',A> / ||A'||_*, by enumeration (at most 20 edges).
double subgraph_selection_bruteforce(const Graph& gamma);

}  // namespace plantlab
