#pragma once

#include "plantlab/adversary.hpp"
#include "plantlab/detectors.hpp"
#include "plantlab/models.hpp"
#include "plantlab/rng.hpp"
#include "plantlab/stats.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace plantlab {

/// Worker count: PLANTLAB_THREADS when set to a positive integer, else the hardware concurrency.
int thread_count();

/// Evaluates f(0..count-1) on thread_count() workers and returns the results in index order,
/// so the output never depends on scheduling. The first exception thrown by any call is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct Calibration {
  double tau = 0.0;
  /// Valid null statistics, ascending.
  std::vector<double> statistics;
  int discarded = 0;
};

/// Null quantile: the ceil((1 - alpha) N)-th smallest statistic over N vanilla G(n, q) draws
/// (N counts the converged draws). Trial i uses derive_seed(seed, i).
/// InputError when trials < 100 or alpha is outside (0, 1); ExecutionError when every draw is discarded.
Calibration calibrate_threshold(const DetectorSpec& spec, const ModelParams& model, double alpha, int trials,
                                std::uint64_t seed);
/// Same, seeded by one draw of `rng`.
Calibration calibrate_threshold(const DetectorSpec& spec, const ModelParams& model, double alpha, int trials, Rng& rng);

struct ExperimentConfig {
  ModelParams model;
  AdversarySpec adversary_null;
  AdversarySpec adversary_alt = AdversarySpec::identity();
  DetectorSpec detector;
  int trials = 0;
  /// Calibration level; overrides detector.threshold.alpha when set.
  std::optional<double> alpha;
  /// Null draws used for calibration; defaults to max(trials, 100).
  std::optional<int> calibration_trials;
  std::uint64_t seed = 0;
  /// Output prefix for run_experiment (`<output>.csv`, `<output>.json`).
  std::string output;

  /// Throws ConfigError on schema or range violations.
  void validate() const;
  double calibration_alpha() const { return alpha.value_or(detector.threshold.alpha); }
  int calibration_count() const { return calibration_trials.value_or(std::max(trials, 100)); }
};

struct RiskEstimate {
  double type1 = 0.0;
  double type2 = 0.0;
  double risk = 0.0;
  /// Trials requested per hypothesis.
  int trials = 0;
  int null_used = 0;
  int alt_used = 0;
  /// 1.96 sqrt(p1(1-p1)/N0 + p2(1-p2)/N1).
  double half_width_95 = 0.0;
  /// Trials dropped because an inner solver did not converge (both hypotheses).
  int discarded = 0;
  double tau = 0.0;
};

void to_json(nlohmann::json& j, const RiskEstimate& r);

/// Threshold named by the detector spec: explicit value, theoretical formula or null calibration
/// (seed stream derive_seed(cfg.seed, 0)).
double resolve_threshold(const ExperimentConfig& cfg);

/// Type-I and Type-II rates for the configured adversary pair at threshold tau. Null trial i
/// uses derive_seed(derive_seed(seed, 1), i), alternative trial i derive_seed(derive_seed(seed, 2), i).
RiskEstimate estimate_risk(const ExperimentConfig& cfg, double tau);
/// Resolves the threshold first.
RiskEstimate estimate_risk(const ExperimentConfig& cfg);

struct ContainmentEstimate {
  double p_hat = 0.0;
  Interval ci;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

/// Fraction of G(n, q) draws containing a copy of gamma, with a 95% Wilson interval.
ContainmentEstimate estimate_containment_probability(const Graph& gamma, int n, double q, std::uint64_t trials,
                                                     std::uint64_t seed, SearchLimits limits = {});
ContainmentEstimate estimate_containment_probability(const Graph& gamma, int n, double q, std::uint64_t trials,
                                                     Rng& rng, SearchLimits limits = {});

/// P[G(n, q) contains gamma] by summing over all 2^C(n,2) graphs. Requires n <= 7.
double exact_containment_probability(const Graph& gamma, int n, double q);

struct RegimeCheck {
  std::string name;
  std::string formula;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct RegimeReport {
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  double epsilon = 0.1;
  Rational mu;
  int d_max = 0;
  int edges = 0;
  int vertices = 0;
  /// sublog, count_maxdeg, lower_bound_vanilla, opt_upper, copy_containment.
  std::vector<RegimeCheck> checks;

  const RegimeCheck& check(const std::string& name) const;
};

void to_json(nlohmann::json& j, const RegimeReport& r);

/// Finite-n values of the density conditions for gamma at (n, p, q).
RegimeReport regime_report(const Graph& gamma, int n, double p, double q, double epsilon = 0.1);

struct UniformityAudit {
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  /// Copies of gamma in K_n, each as its sorted edge list; counts[i] tallies copies[i].
  std::vector<Graph> copies;
  std::vector<std::uint64_t> counts;
  std::uint64_t draws = 0;
  std::uint64_t accepted = 0;
};

void to_json(nlohmann::json& j, const UniformityAudit& a);

/// Draws G(n, q) until `trials` samples contain gamma, applies null_copy_planter (p = 1) to each
/// and tallies the surviving copy; chi-square against the uniform law on all copies.
/// InputError for trials = 0 or more than 1000 copies; ExecutionError when the acceptance rate
/// falls below 1e-4.
UniformityAudit uniformity_audit(const Graph& gamma, int n, double q, std::uint64_t trials, std::uint64_t seed);
UniformityAudit uniformity_audit(const Graph& gamma, int n, double q, std::uint64_t trials, Rng& rng);

/// One adversary pair of an experiment plan.
struct AdversaryPair {
  AdversarySpec null_side;
  AdversarySpec alt_side;
};

/// A config file: a base experiment, an adversary grid and an optional sweep over
/// families or sizes. Each sweep point is calibrated once and shared by the pairs.
struct ExperimentPlan {
  ExperimentConfig base;
  std::vector<AdversaryPair> pairs;
  std::vector<FamilySpec> family_sweep;
  std::vector<int> n_sweep;

  std::vector<ExperimentConfig> points() const;
};

/// Parses a plan; ConfigError on schema violations (missing "trials", unknown keys, bad ranges).
ExperimentPlan parse_experiment(const nlohmann::json& j);

struct ExperimentRow {
  ExperimentConfig config;
  RiskEstimate risk;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::string csv;
  nlohmann::json summary;
};

/// Runs calibrate -> estimate_risk over the plan. Writes `<output>.csv` and `<output>.json`
/// when the plan names an output prefix.
ExperimentResult run_experiment(const ExperimentPlan& plan);

/// File front end with exit codes: 0 success, 2 schema violation, 1 execution failure.
/// Messages go to `err`.
int run_experiment_file(const std::string& path, std::ostream& err, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace plantlab
