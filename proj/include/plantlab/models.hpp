#pragma once

#include "plantlab/combinatorics.hpp"
#include "plantlab/family.hpp"
#include "plantlab/graph.hpp"
#include "plantlab/rng.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace plantlab {

struct ModelParams {
  int n = 0;
  double p = 1.0;
  double q = 0.5;
  /// Planted pattern on its own vertices 0..v-1, no isolated vertices.
  Graph gamma;
  /// Family the pattern was built from, when known.
  std::optional<FamilySpec> family;

  static ModelParams from_family(int n, double p, double q, const FamilySpec& spec);
  /// Throws InputError unless 0 < q < p <= 1, |v(gamma)| <= n and gamma has edges
  /// and no isolated vertices.
  void validate() const;
  /// Family string when known, otherwise "custom(v,m)".
  std::string pattern_label() const;
};

struct PlantedInstance {
  Graph graph;
  /// The embedded copy of gamma on [n] (all its edges, retained or not). Empty
  /// under the null.
  Graph planted_copy;
  /// Host vertex of each pattern vertex; empty under the null.
  std::vector<int> planted_vertices;
  ModelParams params;
  std::uint64_t seed = 0;

  bool has_plant() const { return !planted_vertices.empty(); }
};

/// G(n, q): pairs (i, j), i < j, visited in lexicographic order, one Bernoulli draw each.
Graph sample_er(int n, double q, Rng& rng);

/// Null instance: G(n, q) with no plant.
PlantedInstance sample_null(const ModelParams& params, Rng& rng);

/// Planted instance: a uniform injection of v(gamma) into [n] (partial
/// Fisher-Yates), then pairs in lexicographic order kept with probability p on
/// the copy and q elsewhere.
PlantedInstance sample_planted(const ModelParams& params, Rng& rng);

struct CenteredMatrix {
  Eigen::MatrixXd W;
  double q = 0.5;
};

/// W_ij = A_ij / q - 1 off the diagonal, 0 on it.
CenteredMatrix center_matrix(const Eigen::MatrixXd& adjacency, double q);
CenteredMatrix center_matrix(const Graph& g, double q);

struct BernoulliDivergences {
  double kl = 0.0;
  double chi2 = 0.0;
};

/// d_KL(p||q) and chi^2(p||q) between Bernoulli laws, with 0 log 0 = 0.
BernoulliDivergences bernoulli_divergences(double p, double q);

/// E[N(H, G(n, q))] = |S_H| q^{|e(H)|}.
double expected_copy_count(const Graph& h, int n, double q);

struct ThresholdEntry {
  /// Representative of the isomorphism class, on vertices 0..v-1.
  Graph h;
  BigInt copies_in_gamma;
  BigInt copies_in_complete;
  double expected = 0.0;
  double ratio = 0.0;
};

struct ThresholdReport {
  std::vector<ThresholdEntry> entries;
  double infimum = 0.0;
  bool holds = false;
};

/// For every isomorphism class of subgraphs H of gamma without isolated
/// vertices: E_{G(n,q)}[N(H,G)] / N(H, gamma), and whether the infimum is >= 1/2.
/// Requires |v(gamma)| <= 8.
ThresholdReport expectation_threshold_check(const Graph& gamma, int n, double q);

/// Sidecar record {n, p, q, family, seed, planted_copy_edges} with 1-based edges.
nlohmann::json instance_sidecar(const PlantedInstance& inst);
/// Writes `<prefix>.edges` and `<prefix>.json`.
void save_instance(const std::string& prefix, const PlantedInstance& inst);
/// Reads an edge-list file and its sidecar back into an instance.
PlantedInstance load_instance(const std::string& edges_path, const std::string& sidecar_path);

}  // namespace plantlab
