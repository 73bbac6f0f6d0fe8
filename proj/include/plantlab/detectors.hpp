#pragma once

#include "plantlab/combinatorics.hpp"
#include "plantlab/family.hpp"
#include "plantlab/graph.hpp"
#include "plantlab/models.hpp"
#include "plantlab/solvers.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace plantlab {

enum class DetectorKind { count, degree, scan, nuclear, clique_sdp, mle_oracle };

std::string to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(const std::string& name);

enum class ThresholdSource { theoretical, calibrated, explicit_value };

struct ThresholdSpec {
  ThresholdSource source = ThresholdSource::calibrated;
  /// Constant in the nuclear and SDP thresholds (theoretical source).
  double C = 1.0;
  /// Level for the calibrated source.
  double alpha = 0.05;
  /// Value for the explicit source.
  double tau = 0.0;

  static ThresholdSpec theoretical(double c = 1.0) { return {ThresholdSource::theoretical, c, 0.05, 0.0}; }
  static ThresholdSpec calibrated(double alpha) { return {ThresholdSource::calibrated, 1.0, alpha, 0.0}; }
  static ThresholdSpec explicit_value(double tau) { return {ThresholdSource::explicit_value, 1.0, 0.05, tau}; }
};

struct DetectorSpec {
  DetectorKind kind = DetectorKind::count;
  ThresholdSpec threshold;
  /// Scan level; defaults to (p + q) / 2.
  std::optional<double> kappa;
  /// Nuclear test pattern; defaults to the model's pattern.
  std::optional<FamilySpec> gamma_prime;
  /// Clique SDP size; defaults to the model's pattern order.
  std::optional<int> k;
  SolveConfig solver;

  static DetectorSpec of(DetectorKind kind, ThresholdSpec threshold = {}) {
    DetectorSpec s;
    s.kind = kind;
    s.threshold = threshold;
    return s;
  }

  /// Throws ConfigError for inconsistent fields.
  void validate() const;
  std::string label() const;
};

void to_json(nlohmann::json& j, const ThresholdSpec& t);
void from_json(const nlohmann::json& j, ThresholdSpec& t);
void to_json(nlohmann::json& j, const DetectorSpec& spec);
void from_json(const nlohmann::json& j, DetectorSpec& spec);

/// Value of a detector statistic on one graph. `valid` is false when an inner
/// solver did not converge; such trials are discarded by the harness.
struct Statistic {
  double value = 0.0;
  bool valid = true;
  nlohmann::json diagnostics = nlohmann::json::object();
};

struct Decision {
  DetectorKind kind = DetectorKind::count;
  double statistic = 0.0;
  double threshold = 0.0;
  /// true = declare planted.
  bool reject = false;
  bool valid = true;
  nlohmann::json diagnostics = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const Decision& d);

/// Rejection rule: >= for count, degree and scan; > for nuclear, clique SDP and the MLE oracle.
bool rejects(DetectorKind kind, double statistic, double threshold);

// Thresholds.
double count_threshold(const ModelParams& params);
double degree_threshold(const ModelParams& params);
/// kappa * |e(Gamma_max)|; ConfigError unless q < kappa < p.
double scan_threshold(const ModelParams& params, double kappa);

struct ThresholdWindow {
  double tau0 = 0.0;
  double tau1 = 0.0;
  double midpoint() const { return 0.5 * (tau0 + tau1); }
};

/// [tau0, tau1) for the nuclear test with pattern gamma_prime and constant C.
ThresholdWindow nuclear_threshold_window(const ModelParams& params, const Graph& gamma_prime, double c);
/// [tau0, k^2) for the clique SDP, confidence 1/n. Requires (p, q) = (1, 1/2).
ThresholdWindow clique_sdp_threshold_window(const ModelParams& params, int k, double c);

/// Theoretical threshold for a detector: the paper-style value for count, degree and scan,
/// the window midpoint for nuclear and clique SDP. ConfigError when the window is empty or
/// the detector has none (MLE oracle).
double theoretical_threshold(const DetectorSpec& spec, const ModelParams& params);

/// Densest subgraph of the pattern, isolated vertices dropped.
Graph gamma_max(const Graph& gamma);

// Statistics.
double count_statistic(const Graph& g);
double degree_statistic(const Graph& g);
/// Max over copies of gamma_max in K_n of the number of their edges present in G.
double scan_statistic(const Graph& g, const Graph& gamma_max);
Statistic nuclear_statistic(const Graph& g, const Graph& gamma_prime, double q, const SolveConfig& cfg = {});
Statistic clique_sdp_statistic(const Graph& g, int k, double q, const SolveConfig& cfg = {});

struct MleResult {
  /// Maximizing copy on the vertices of G.
  Graph copy;
  /// <W, Z> over ordered pairs: twice the copy's weight in W.
  double value = 0.0;
};

/// Exact maximizer of <W,Z> over copies of gamma, with W the centered matrix of G.
MleResult mle_bruteforce(const Graph& g, const Graph& gamma, double q);

/// Detector statistic as configured by `spec` (pattern defaults taken from params).
Statistic detector_statistic(const DetectorSpec& spec, const Graph& g, const ModelParams& params);

/// Full decision with threshold tau.
Decision decide(const DetectorSpec& spec, const Graph& g, const ModelParams& params, double tau);

// The paper's tests with their theoretical thresholds unless tau is given.
Decision count_test(const Graph& g, const ModelParams& params, std::optional<double> tau = std::nullopt);
Decision degree_test(const Graph& g, const ModelParams& params, std::optional<double> tau = std::nullopt);
Decision scan_test(const Graph& g, const Graph& gamma_max, const ModelParams& params, std::optional<double> kappa = std::nullopt,
                   std::optional<double> tau = std::nullopt);
Decision nuclear_test(const Graph& g, const Graph& gamma_prime, const ModelParams& params, const ThresholdSpec& threshold,
                      const SolveConfig& cfg = {});
Decision clique_sdp_test(const Graph& g, int k, const ModelParams& params, const ThresholdSpec& threshold,
                         const SolveConfig& cfg = {});

}  // namespace plantlab
