#include "plantlab/detectors.hpp"

#include "plantlab/density.hpp"
#include "plantlab/errors.hpp"
#include "plantlab/spectral.hpp"

#include <cmath>
#include <sstream>

namespace plantlab {

namespace {

constexpr DetectorKind kAllKinds[] = {DetectorKind::count,   DetectorKind::degree,     DetectorKind::scan,
                                      DetectorKind::nuclear, DetectorKind::clique_sdp, DetectorKind::mle_oracle};

std::string source_name(ThresholdSource s) {
  switch (s) {
    case ThresholdSource::theoretical: return "theoretical";
    case ThresholdSource::calibrated: return "calibrated";
    case ThresholdSource::explicit_value: return "explicit";
  }
  return "unknown";
}

Graph pattern_of(const DetectorSpec& spec, const ModelParams& params) {
  if (spec.kind == DetectorKind::nuclear && spec.gamma_prime) return make_family(*spec.gamma_prime);
  return params.gamma;
}

int clique_size(const DetectorSpec& spec, const ModelParams& params) {
  return spec.k ? *spec.k : params.gamma.order();
}

double window_midpoint(const ThresholdWindow& w, const char* what) {
  if (!(w.tau1 > w.tau0)) {
    std::ostringstream msg;
    msg << what << ": empty threshold window (tau0 = " << w.tau0 << ", tau1 = " << w.tau1
        << "); the condition |e|/||.||_* >= C' sqrt(n) fails at this n";
    throw ConfigError(msg.str());
  }
  return w.midpoint();
}

void check_kappa(double kappa, const ModelParams& params) {
  if (!(kappa > params.q && kappa < params.p)) throw ConfigError("scan kappa must lie strictly between q and p");
}

void require_subpattern(const Graph& sub, const Graph& gamma) {
  if (sub.size() > gamma.size() || sub.order() > gamma.order()) throw ConfigError("nuclear pattern is not a subgraph of the planted pattern");
  EmbeddingSearch search(sub.without_isolated(), gamma);
  if (!search.exists()) throw ConfigError("nuclear pattern is not a subgraph of the planted pattern");
}

}  // namespace

std::string to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::count: return "count";
    case DetectorKind::degree: return "degree";
    case DetectorKind::scan: return "scan";
    case DetectorKind::nuclear: return "nuclear";
    case DetectorKind::clique_sdp: return "clique_sdp";
    case DetectorKind::mle_oracle: return "mle_oracle";
  }
  return "unknown";
}

DetectorKind detector_kind_from_string(const std::string& name) {
  for (DetectorKind k : kAllKinds) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown detector kind \"" + name + "\"");
}

void DetectorSpec::validate() const {
  if (threshold.source == ThresholdSource::calibrated && !(threshold.alpha > 0.0 && threshold.alpha < 1.0)) {
    throw ConfigError("calibration level alpha must lie in (0,1)");
  }
  if (threshold.source == ThresholdSource::theoretical && !(threshold.C > 0.0)) throw ConfigError("threshold constant C must be positive");
  if (threshold.source == ThresholdSource::theoretical && kind == DetectorKind::mle_oracle) {
    throw ConfigError("mle_oracle has no theoretical threshold");
  }
  if (k && *k < 1) throw ConfigError("clique size k must be positive");
  if (gamma_prime) plantlab::validate(*gamma_prime);
  solver.validate();
}

std::string DetectorSpec::label() const {
  std::ostringstream out;
  out << to_string(kind);
  if (kind == DetectorKind::nuclear && gamma_prime) out << "(" << gamma_prime->to_string() << ")";
  if (kind == DetectorKind::clique_sdp && k) out << "(" << *k << ")";
  if (kind == DetectorKind::scan && kappa) out << "(kappa=" << *kappa << ")";
  return out.str();
}

void to_json(nlohmann::json& j, const ThresholdSpec& t) {
  j = {{"source", source_name(t.source)}};
  switch (t.source) {
    case ThresholdSource::theoretical: j["C"] = t.C; break;
    case ThresholdSource::calibrated: j["alpha"] = t.alpha; break;
    case ThresholdSource::explicit_value: j["tau"] = t.tau; break;
  }
}

void from_json(const nlohmann::json& j, ThresholdSpec& t) {
  if (!j.is_object() || !j.contains("source")) throw ConfigError("threshold must be an object with \"source\"");
  try {
    const auto source = j.at("source").get<std::string>();
    t = ThresholdSpec{};
    if (source == "theoretical") {
      t.source = ThresholdSource::theoretical;
      t.C = j.value("C", 1.0);
    } else if (source == "calibrated") {
      t.source = ThresholdSource::calibrated;
      t.alpha = j.value("alpha", 0.05);
    } else if (source == "explicit") {
      t.source = ThresholdSource::explicit_value;
      if (!j.contains("tau")) throw ConfigError("explicit threshold needs \"tau\"");
      t.tau = j.at("tau").get<double>();
    } else {
      throw ConfigError("unknown threshold source \"" + source + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("threshold: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const DetectorSpec& spec) {
  j = {{"kind", to_string(spec.kind)}, {"threshold", spec.threshold}, {"solver", spec.solver}};
  if (spec.kappa) j["kappa"] = *spec.kappa;
  if (spec.gamma_prime) j["gamma_prime"] = *spec.gamma_prime;
  if (spec.k) j["k"] = *spec.k;
}

void from_json(const nlohmann::json& j, DetectorSpec& spec) {
  spec = DetectorSpec{};
  if (j.is_string()) {
    spec.kind = detector_kind_from_string(j.get<std::string>());
    spec.validate();
    return;
  }
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("detector must be an object with \"kind\"");
  try {
    spec.kind = detector_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("threshold")) spec.threshold = j.at("threshold").get<ThresholdSpec>();
    if (j.contains("kappa")) spec.kappa = j.at("kappa").get<double>();
    if (j.contains("gamma_prime")) spec.gamma_prime = j.at("gamma_prime").get<FamilySpec>();
    if (j.contains("k")) spec.k = j.at("k").get<int>();
    if (j.contains("solver")) spec.solver = j.at("solver").get<SolveConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("detector: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("detector: ") + e.what());
  }
  spec.validate();
}

void to_json(nlohmann::json& j, const Decision& d) {
  j = {{"kind", to_string(d.kind)}, {"statistic", d.statistic}, {"threshold", d.threshold},
       {"reject", d.reject}, {"diagnostics", d.diagnostics}};
  if (!d.valid) j["valid"] = false;
}

bool rejects(DetectorKind kind, double statistic, double threshold) {
  switch (kind) {
    case DetectorKind::count:
    case DetectorKind::degree:
    case DetectorKind::scan:
      return statistic >= threshold;
    default:
      return statistic > threshold;
  }
}

double count_threshold(const ModelParams& params) {
  const double n = params.n;
  return n * (n - 1.0) / 2.0 * params.q + static_cast<double>(params.gamma.size()) * (params.p - params.q) / 2.0;
}

double degree_threshold(const ModelParams& params) {
  return (params.n - 1.0) * params.q + params.gamma.max_degree() * (params.p - params.q) / 2.0;
}

double scan_threshold(const ModelParams& params, double kappa) {
  check_kappa(kappa, params);
  return kappa * static_cast<double>(gamma_max(params.gamma).size());
}

ThresholdWindow nuclear_threshold_window(const ModelParams& params, const Graph& gamma_prime, double c) {
  const double n = params.n;
  const double logn = std::log(n);
  const double e = static_cast<double>(gamma_prime.size());
  ThresholdWindow w;
  w.tau0 = c * nuclear_norm(gamma_prime.adjacency()) / params.q * (std::sqrt(n) + std::sqrt(logn));
  w.tau1 = 2.0 * (params.p - params.q) / params.q * e - std::sqrt(e / 2.0 * logn);
  return w;
}

ThresholdWindow clique_sdp_threshold_window(const ModelParams& params, int k, double c) {
  if (params.p != 1.0 || params.q != 0.5) throw ConfigError("clique SDP thresholds are defined for (p, q) = (1, 1/2)");
  const double n = params.n;
  // confidence level 1/n
  ThresholdWindow w;
  w.tau0 = c * k * std::sqrt(n) + k * std::sqrt(2.0 * std::log(n));
  w.tau1 = static_cast<double>(k) * k;
  return w;
}

double theoretical_threshold(const DetectorSpec& spec, const ModelParams& params) {
  switch (spec.kind) {
    case DetectorKind::count: return count_threshold(params);
    case DetectorKind::degree: return degree_threshold(params);
    case DetectorKind::scan: return scan_threshold(params, spec.kappa.value_or(0.5 * (params.p + params.q)));
    case DetectorKind::nuclear:
      return window_midpoint(nuclear_threshold_window(params, pattern_of(spec, params), spec.threshold.C), "nuclear test");
    case DetectorKind::clique_sdp:
      return window_midpoint(clique_sdp_threshold_window(params, clique_size(spec, params), spec.threshold.C), "clique SDP test");
    case DetectorKind::mle_oracle: break;
  }
  throw ConfigError("mle_oracle has no theoretical threshold");
}

Graph gamma_max(const Graph& gamma) { return densest_subgraph(gamma).subgraph.without_isolated(); }

double count_statistic(const Graph& g) { return static_cast<double>(g.size()); }

double degree_statistic(const Graph& g) { return g.order() == 0 ? 0.0 : g.max_degree(); }

double scan_statistic(const Graph& g, const Graph& gmax) {
  if (g.size() == 0) return 0.0;
  return find_max_weight_copy(gmax, g.adjacency()).weight;
}

Statistic nuclear_statistic(const Graph& g, const Graph& gamma_prime, double q, const SolveConfig& cfg) {
  const double t = nuclear_norm(gamma_prime.adjacency());
  const SolveResult res = solve_nuclear_program(center_matrix(g, q), t, cfg);
  Statistic s;
  s.value = res.objective;
  s.valid = res.converged;
  s.diagnostics = res;
  s.diagnostics["radius"] = t;
  return s;
}

Statistic clique_sdp_statistic(const Graph& g, int k, double q, const SolveConfig& cfg) {
  const SolveResult res = solve_clique_sdp(center_matrix(g, q), k, cfg);
  Statistic s;
  s.value = res.objective;
  s.valid = res.converged;
  s.diagnostics = res;
  return s;
}

MleResult mle_bruteforce(const Graph& g, const Graph& gamma, double q) {
  const CenteredMatrix w = center_matrix(g, q);
  const WeightedCopy best = find_max_weight_copy(gamma, w.W);
  return {best.copy, 2.0 * best.weight};
}

Statistic detector_statistic(const DetectorSpec& spec, const Graph& g, const ModelParams& params) {
  if (g.order() != params.n) throw InputError("graph order does not match the model's n");
  Statistic s;
  switch (spec.kind) {
    case DetectorKind::count: s.value = count_statistic(g); break;
    case DetectorKind::degree: s.value = degree_statistic(g); break;
    case DetectorKind::scan: s.value = scan_statistic(g, gamma_max(params.gamma)); break;
    case DetectorKind::nuclear: {
      const Graph gp = pattern_of(spec, params);
      if (spec.gamma_prime) require_subpattern(gp, params.gamma);
      return nuclear_statistic(g, gp, params.q, spec.solver);
    }
    case DetectorKind::clique_sdp: return clique_sdp_statistic(g, clique_size(spec, params), params.q, spec.solver);
    case DetectorKind::mle_oracle: {
      const MleResult m = mle_bruteforce(g, params.gamma, params.q);
      s.value = m.value;
      nlohmann::json edges = nlohmann::json::array();
      for (const Edge& e : m.copy.edges()) edges.push_back({e.u + 1, e.v + 1});
      s.diagnostics["copy_edges"] = edges;
      break;
    }
  }
  return s;
}

Decision decide(const DetectorSpec& spec, const Graph& g, const ModelParams& params, double tau) {
  const Statistic s = detector_statistic(spec, g, params);
  Decision d;
  d.kind = spec.kind;
  d.statistic = s.value;
  d.threshold = tau;
  d.reject = rejects(spec.kind, s.value, tau);
  d.valid = s.valid;
  d.diagnostics = s.diagnostics;
  return d;
}

namespace {

double resolve(const ThresholdSpec& t, const DetectorSpec& spec, const ModelParams& params) {
  switch (t.source) {
    case ThresholdSource::theoretical: return theoretical_threshold(spec, params);
    case ThresholdSource::explicit_value: return t.tau;
    case ThresholdSource::calibrated: break;
  }
  throw ConfigError("a calibrated threshold must be computed first (calibrate_threshold) and passed as explicit");
}

}  // namespace

Decision count_test(const Graph& g, const ModelParams& params, std::optional<double> tau) {
  return decide(DetectorSpec::of(DetectorKind::count), g, params, tau.value_or(count_threshold(params)));
}

Decision degree_test(const Graph& g, const ModelParams& params, std::optional<double> tau) {
  return decide(DetectorSpec::of(DetectorKind::degree), g, params, tau.value_or(degree_threshold(params)));
}

Decision scan_test(const Graph& g, const Graph& gmax, const ModelParams& params, std::optional<double> kappa,
                   std::optional<double> tau) {
  const double k = kappa.value_or(0.5 * (params.p + params.q));
  check_kappa(k, params);
  const double threshold = tau.value_or(k * static_cast<double>(gmax.size()));
  Decision d;
  d.kind = DetectorKind::scan;
  d.statistic = scan_statistic(g, gmax);
  d.threshold = threshold;
  d.reject = rejects(DetectorKind::scan, d.statistic, threshold);
  return d;
}

Decision nuclear_test(const Graph& g, const Graph& gamma_prime, const ModelParams& params, const ThresholdSpec& threshold,
                      const SolveConfig& cfg) {
  const double tau = threshold.source == ThresholdSource::theoretical
                         ? window_midpoint(nuclear_threshold_window(params, gamma_prime, threshold.C), "nuclear test")
                         : resolve(threshold, DetectorSpec::of(DetectorKind::nuclear), params);
  const Statistic s = nuclear_statistic(g, gamma_prime, params.q, cfg);
  Decision d;
  d.kind = DetectorKind::nuclear;
  d.statistic = s.value;
  d.threshold = tau;
  d.reject = rejects(DetectorKind::nuclear, s.value, tau);
  d.valid = s.valid;
  d.diagnostics = s.diagnostics;
  return d;
}

Decision clique_sdp_test(const Graph& g, int k, const ModelParams& params, const ThresholdSpec& threshold,
                         const SolveConfig& cfg) {
  DetectorSpec spec = DetectorSpec::of(DetectorKind::clique_sdp, threshold);
  spec.k = k;
  const double tau = resolve(threshold, spec, params);
  const Statistic s = clique_sdp_statistic(g, k, params.q, cfg);
  Decision d;
  d.kind = DetectorKind::clique_sdp;
  d.statistic = s.value;
  d.threshold = tau;
  d.reject = rejects(DetectorKind::clique_sdp, s.value, tau);
  d.valid = s.valid;
  d.diagnostics = s.diagnostics;
  return d;
}

}  // namespace plantlab
