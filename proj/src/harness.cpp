#include "plantlab/harness.hpp"

#include "plantlab/combinatorics.hpp"
#include "plantlab/density.hpp"
#include "plantlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace plantlab {

namespace {

constexpr std::uint64_t kCalibrationStream = 0;
constexpr std::uint64_t kNullStream = 1;
constexpr std::uint64_t kAltStream = 2;

struct TrialOutcome {
  bool valid = true;
  bool reject = false;
  double value = 0.0;
};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// NaN and infinities have no JSON form; emit null.
nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

int thread_count() {
  if (const char* env = std::getenv("PLANTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 1024));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Calibration calibrate_threshold(const DetectorSpec& spec, const ModelParams& model, double alpha, int trials,
                                std::uint64_t seed) {
  if (trials < 100) throw InputError("calibration needs at least 100 trials");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("calibration level alpha must lie in (0,1)");
  model.validate();
  const auto stats = parallel_map<Statistic>(static_cast<std::size_t>(trials), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    return detector_statistic(spec, sample_er(model.n, model.q, rng), model);
  });
  Calibration cal;
  for (const auto& s : stats) {
    if (s.valid)
      cal.statistics.push_back(s.value);
    else
      ++cal.discarded;
  }
  if (cal.statistics.empty()) throw ExecutionError("calibration: every null draw was discarded");
  std::sort(cal.statistics.begin(), cal.statistics.end());
  const double n = static_cast<double>(cal.statistics.size());
  // ceil((1 - alpha) N), guarded against (1 - 0.05) * 200 = 190.00000000000003
  auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, cal.statistics.size());
  cal.tau = cal.statistics[rank - 1];
  return cal;
}

Calibration calibrate_threshold(const DetectorSpec& spec, const ModelParams& model, double alpha, int trials, Rng& rng) {
  return calibrate_threshold(spec, model, alpha, trials, rng());
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  try {
    model.validate();
    adversary_null.validate();
    adversary_alt.validate();
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (adversary_null.kind == AdversaryKind::alt_stripper) throw ConfigError("alt_stripper has no null-side action");
  if (adversary_alt.kind == AdversaryKind::null_copy_planter)
    throw ConfigError("null_copy_planter has no alternative-side action");
  detector.validate();
  if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  if (detector.threshold.source == ThresholdSource::calibrated && calibration_count() < 100)
    throw ConfigError("calibration_trials must be at least 100");
}

void to_json(nlohmann::json& j, const RiskEstimate& r) {
  j = {{"type1", r.type1},         {"type2", r.type2},         {"risk", r.risk},
       {"trials", r.trials},       {"null_used", r.null_used}, {"alt_used", r.alt_used},
       {"half_width_95", r.half_width_95}, {"discarded", r.discarded}, {"tau", num(r.tau)}};
}

double resolve_threshold(const ExperimentConfig& cfg) {
  const ThresholdSpec& t = cfg.detector.threshold;
  switch (t.source) {
    case ThresholdSource::explicit_value:
      return t.tau;
    case ThresholdSource::theoretical:
      return theoretical_threshold(cfg.detector, cfg.model);
    case ThresholdSource::calibrated:
      break;
  }
  return calibrate_threshold(cfg.detector, cfg.model, cfg.calibration_alpha(), cfg.calibration_count(),
                             derive_seed(cfg.seed, kCalibrationStream))
      .tau;
}

RiskEstimate estimate_risk(const ExperimentConfig& cfg, double tau) {
  cfg.validate();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::uint64_t null_seed = derive_seed(cfg.seed, kNullStream);
  const std::uint64_t alt_seed = derive_seed(cfg.seed, kAltStream);
  const auto score = [&](const Graph& g) {
    const Statistic s = detector_statistic(cfg.detector, g, cfg.model);
    return TrialOutcome{s.valid, s.valid && rejects(cfg.detector.kind, s.value, tau), s.value};
  };
  const auto outcomes = parallel_map<TrialOutcome>(2 * trials, [&](std::size_t i) {
    if (i < trials) {
      Rng rng(derive_seed(null_seed, i));
      const Graph g = sample_er(cfg.model.n, cfg.model.q, rng);
      return score(apply_null_adversary(cfg.adversary_null, g, rng, &cfg.model.gamma));
    }
    Rng rng(derive_seed(alt_seed, i - trials));
    const PlantedInstance inst = sample_planted(cfg.model, rng);
    return score(apply_alt_adversary(cfg.adversary_alt, inst, rng));
  });

  RiskEstimate r;
  r.trials = cfg.trials;
  r.tau = tau;
  int false_alarms = 0;
  int misses = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.valid) {
      ++r.discarded;
      continue;
    }
    if (i < trials) {
      ++r.null_used;
      false_alarms += o.reject;
    } else {
      ++r.alt_used;
      misses += !o.reject;
    }
  }
  if (r.null_used == 0 || r.alt_used == 0)
    throw ExecutionError("every " + std::string(r.null_used == 0 ? "null" : "alternative") +
                         " trial was discarded (solver did not converge)");
  r.type1 = static_cast<double>(false_alarms) / r.null_used;
  r.type2 = static_cast<double>(misses) / r.alt_used;
  r.risk = r.type1 + r.type2;
  r.half_width_95 =
      1.96 * std::sqrt(r.type1 * (1.0 - r.type1) / r.null_used + r.type2 * (1.0 - r.type2) / r.alt_used);
  return r;
}

RiskEstimate estimate_risk(const ExperimentConfig& cfg) {
  cfg.validate();
  return estimate_risk(cfg, resolve_threshold(cfg));
}

ContainmentEstimate estimate_containment_probability(const Graph& gamma, int n, double q, std::uint64_t trials,
                                                     std::uint64_t seed, SearchLimits limits) {
  if (n < 1) throw InputError("n must be positive");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("q must lie in [0,1]");
  if (trials == 0) throw InputError("trials must be positive");
  const Graph core = gamma.without_isolated();
  if (core.order() == 0) throw InputError("pattern has no edges");
  ContainmentEstimate est;
  est.trials = trials;
  if (core.order() <= n) {
    const auto hits = parallel_map<char>(trials, [&](std::size_t i) {
      Rng rng(derive_seed(seed, i));
      const Graph g = sample_er(n, q, rng);
      return static_cast<char>(EmbeddingSearch(core, g, true, limits).exists());
    });
    for (char h : hits) est.hits += static_cast<std::uint64_t>(h);
  }
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.ci = wilson_interval(est.hits, trials);
  return est;
}

ContainmentEstimate estimate_containment_probability(const Graph& gamma, int n, double q, std::uint64_t trials,
                                                     Rng& rng, SearchLimits limits) {
  return estimate_containment_probability(gamma, n, q, trials, rng(), limits);
}

double exact_containment_probability(const Graph& gamma, int n, double q) {
  if (n < 1 || n > 7) throw InputError("exact containment enumeration needs 1 <= n <= 7");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("q must lie in [0,1]");
  const Graph core = gamma.without_isolated();
  if (core.order() == 0) throw InputError("pattern has no edges");
  if (core.order() > n) return 0.0;
  std::vector<Edge> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  const auto m = static_cast<int>(pairs.size());
  double total = 0.0;
  std::vector<Edge> edges;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    edges.clear();
    for (int b = 0; b < m; ++b)
      if ((mask >> b) & 1U) edges.push_back(pairs[static_cast<std::size_t>(b)]);
    const int k = static_cast<int>(edges.size());
    if (k < static_cast<int>(core.size())) continue;
    const Graph g = Graph::from_edges(n, std::span<const Edge>(edges));
    if (EmbeddingSearch(core, g).exists()) total += std::pow(q, k) * std::pow(1.0 - q, m - k);
  }
  return total;
}

const RegimeCheck& RegimeReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InputError("no regime check named " + name);
}

void to_json(nlohmann::json& j, const RegimeReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back(
        {{"name", c.name}, {"formula", c.formula}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}, {"holds", c.holds}});
  j = {{"n", r.n},
       {"p", r.p},
       {"q", r.q},
       {"epsilon", r.epsilon},
       {"mu", r.mu.str()},
       {"mu_value", r.mu.convert_to<double>()},
       {"d_max", r.d_max},
       {"edges", r.edges},
       {"vertices", r.vertices},
       {"checks", checks}};
}

RegimeReport regime_report(const Graph& gamma, int n, double p, double q, double epsilon) {
  const Graph core = gamma.without_isolated();
  if (core.size() == 0) throw InputError("pattern has no edges");
  if (n < 2) throw InputError("n must be at least 2");
  if (!(q > 0.0 && q < p && p <= 1.0)) throw InputError("need 0 < q < p <= 1");
  RegimeReport r;
  r.n = n;
  r.p = p;
  r.q = q;
  r.epsilon = epsilon;
  r.mu = max_subgraph_density(core).value;
  r.d_max = core.max_degree();
  r.edges = static_cast<int>(core.size());
  r.vertices = core.order();

  const double mu = r.mu.convert_to<double>();
  const double v = r.vertices;
  const double e = r.edges;
  const double logn = std::log(static_cast<double>(n));
  const auto div = bernoulli_divergences(p, q);

  const double sub_rhs = std::log(v) / std::log(std::log(v));
  r.checks.push_back({"sublog", "mu(G) < log|v| / log log|v|", mu, sub_rhs, std::log(std::log(v)) > 0 && mu < sub_rhs});

  const double cm_lhs = std::max(e, static_cast<double>(r.d_max) * r.d_max);
  r.checks.push_back({"count_maxdeg", "max(|e|, d_max^2) > n", cm_lhs, static_cast<double>(n), cm_lhs > n});

  // alpha from mu >= alpha log|v|
  const double a = mu / std::log(v);
  const double lb_rhs = (1.0 - epsilon) * a / (2.0 + a * std::log(1.0 + div.chi2)) * logn;
  r.checks.push_back({"lower_bound_vanilla", "mu <= (1-eps) a / (2 + a log(1 + chi2(p||q))) * log n, a = mu / log|v|",
                      mu, lb_rhs, mu <= lb_rhs});

  const double opt = mu * div.kl / logn;
  r.checks.push_back({"opt_upper", "mu d_KL(p||q) / log n > 1", opt, 1.0, opt > 1.0});

  const double cc_lhs = (1.0 + epsilon) * mu * std::log(std::log(e)) + std::log(v);
  r.checks.push_back(
      {"copy_containment", "(1+eps) mu log log|e| + log|v| <= log n", cc_lhs, logn, cc_lhs <= logn});
  return r;
}

void to_json(nlohmann::json& j, const UniformityAudit& a) {
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < a.copies.size(); ++i) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : a.copies[i].edges()) edges.push_back({e.u + 1, e.v + 1});
    table.push_back({{"edges", edges}, {"count", a.counts[i]}});
  }
  j = {{"chi_square", a.chi_square}, {"dof", a.dof},           {"p_value", a.p_value},
       {"draws", a.draws},           {"accepted", a.accepted}, {"table", table}};
}

UniformityAudit uniformity_audit(const Graph& gamma, int n, double q, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("trials must be positive");
  if (!(q > 0.0 && q <= 1.0)) throw InputError("q must lie in (0,1]");
  const Graph core = gamma.without_isolated();
  if (core.order() == 0) throw InputError("pattern has no edges");
  if (core.order() > n) throw InputError("pattern does not fit in K_n");
  if (copies_in_complete(core, n) > 1000) throw InputError("more than 1000 copies to tabulate");

  UniformityAudit audit;
  std::map<std::vector<Edge>, std::size_t> index;
  {
    Graph complete(n);
    std::vector<Edge> all;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) all.push_back({a, b});
    complete = Graph::from_edges(n, std::span<const Edge>(all));
    EmbeddingSearch search(core, complete);
    search.for_each([&](std::span<const int> map) {
      std::vector<Edge> edges;
      for (const Edge& e : core.edges())
        edges.push_back(make_edge(map[static_cast<std::size_t>(e.u)], map[static_cast<std::size_t>(e.v)]));
      std::sort(edges.begin(), edges.end());
      if (index.emplace(edges, 0).second) audit.copies.push_back(Graph::from_edges(n, std::span<const Edge>(edges)));
      return true;
    });
    std::sort(audit.copies.begin(), audit.copies.end(),
              [](const Graph& x, const Graph& y) {
                return std::lexicographical_compare(x.edges().begin(), x.edges().end(), y.edges().begin(),
                                                    y.edges().end());
              });
    for (std::size_t i = 0; i < audit.copies.size(); ++i) {
      const auto e = audit.copies[i].edges();
      index[std::vector<Edge>(e.begin(), e.end())] = i;
    }
  }
  audit.counts.assign(audit.copies.size(), 0);

  constexpr std::size_t kBatch = 4096;
  constexpr std::uint64_t kMinJudged = 100'000;
  while (audit.accepted < trials) {
    const std::uint64_t base = audit.draws;
    const auto chosen = parallel_map<long>(kBatch, [&](std::size_t i) -> long {
      Rng rng(derive_seed(seed, base + i));
      const Graph g = sample_er(n, q, rng);
      const PlanterOutcome out = plant_null_copy(g, core, 1.0, rng);
      if (!out.chosen_copy) return -1;
      const auto e = out.chosen_copy->edges();
      return static_cast<long>(index.at(std::vector<Edge>(e.begin(), e.end())));
    });
    for (long c : chosen) {
      if (audit.accepted == trials) break;
      ++audit.draws;
      if (c >= 0) {
        ++audit.counts[static_cast<std::size_t>(c)];
        ++audit.accepted;
      }
      if (audit.draws >= kMinJudged && static_cast<double>(audit.accepted) < 1e-4 * static_cast<double>(audit.draws))
        throw ExecutionError("conditioning on containment accepts fewer than 1e-4 of the draws; try a larger q");
    }
  }
  const ChiSquareResult chi = chi_square_uniform(audit.counts);
  audit.chi_square = chi.statistic;
  audit.dof = chi.dof;
  audit.p_value = chi.p_value;
  return audit;
}

UniformityAudit uniformity_audit(const Graph& gamma, int n, double q, std::uint64_t trials, Rng& rng) {
  return uniformity_audit(gamma, n, q, trials, rng());
}

std::vector<ExperimentConfig> ExperimentPlan::points() const {
  std::vector<ExperimentConfig> out;
  const auto family = base.model.family;
  auto at = [&](int n, const std::optional<FamilySpec>& fam) {
    ExperimentConfig c = base;
    if (fam)
      c.model = ModelParams::from_family(n, base.model.p, base.model.q, *fam);
    else
      c.model.n = n;
    return c;
  };
  if (!family_sweep.empty()) {
    for (const auto& f : family_sweep) out.push_back(at(base.model.n, f));
  } else if (!n_sweep.empty()) {
    for (int n : n_sweep) out.push_back(at(n, family));
  } else {
    out.push_back(base);
  }
  return out;
}

namespace {

ModelParams parse_model(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("model must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "n" && key != "p" && key != "q" && key != "family") throw ConfigError("model: unknown key \"" + key + "\"");
  for (const char* key : {"n", "q", "family"})
    if (!j.contains(key)) throw ConfigError(std::string("model: missing \"") + key + "\"");
  return ModelParams::from_family(j.at("n").get<int>(), j.value("p", 1.0), j.at("q").get<double>(),
                                  j.at("family").get<FamilySpec>());
}

}  // namespace

ExperimentPlan parse_experiment(const nlohmann::json& j) {
  static const std::vector<std::string> keys = {"model",  "detector",           "adversary_null", "adversary_alt",
                                                "adversary_pairs", "sweep", "trials", "alpha",
                                                "calibration_trials", "seed", "output"};
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown key \"" + key + "\"");
  for (const char* key : {"model", "detector", "trials"})
    if (!j.contains(key)) throw ConfigError(std::string("missing \"") + key + "\"");
  if (j.contains("adversary_pairs") && (j.contains("adversary_null") || j.contains("adversary_alt")))
    throw ConfigError("give either adversary_pairs or adversary_null/adversary_alt");

  ExperimentPlan plan;
  ExperimentConfig& c = plan.base;
  try {
    c.model = parse_model(j.at("model"));
    c.detector = j.at("detector").get<DetectorSpec>();
    if (!j.at("trials").is_number_integer()) throw ConfigError("trials must be an integer");
    c.trials = j.at("trials").get<int>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("calibration_trials")) c.calibration_trials = j.at("calibration_trials").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("adversary_pairs")) {
      const auto& arr = j.at("adversary_pairs");
      if (!arr.is_array() || arr.empty()) throw ConfigError("adversary_pairs must be a nonempty array");
      for (const auto& pair : arr) {
        if (!pair.is_object() || !pair.contains("null") || !pair.contains("alt"))
          throw ConfigError("each adversary pair needs \"null\" and \"alt\"");
        plan.pairs.push_back({pair.at("null").get<AdversarySpec>(), pair.at("alt").get<AdversarySpec>()});
      }
    } else {
      AdversaryPair pair;
      if (j.contains("adversary_null")) pair.null_side = j.at("adversary_null").get<AdversarySpec>();
      if (j.contains("adversary_alt")) pair.alt_side = j.at("adversary_alt").get<AdversarySpec>();
      plan.pairs.push_back(pair);
    }
    c.adversary_null = plan.pairs.front().null_side;
    c.adversary_alt = plan.pairs.front().alt_side;
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (!s.is_object() || s.size() != 1) throw ConfigError("sweep must hold exactly one of \"family\" or \"n\"");
      if (s.contains("family"))
        plan.family_sweep = s.at("family").get<std::vector<FamilySpec>>();
      else if (s.contains("n"))
        plan.n_sweep = s.at("n").get<std::vector<int>>();
      else
        throw ConfigError("sweep must hold exactly one of \"family\" or \"n\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  try {
    for (ExperimentConfig point : plan.points()) {
      for (const auto& pair : plan.pairs) {
        point.adversary_null = pair.null_side;
        point.adversary_alt = pair.alt_side;
        point.validate();
      }
    }
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return plan;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  ExperimentResult result;
  std::ostringstream csv;
  csv << "detector,adversary_null,adversary_alt,n,p,q,family,tau,type1,type2,risk,ci,trials,seed\n";
  nlohmann::json points = nlohmann::json::array();
  double overall = -1.0;
  for (ExperimentConfig point : plan.points()) {
    point.validate();
    const double tau = resolve_threshold(point);
    nlohmann::json rows = nlohmann::json::array();
    double worst = -1.0;
    for (const auto& pair : plan.pairs) {
      ExperimentConfig cfg = point;
      cfg.adversary_null = pair.null_side;
      cfg.adversary_alt = pair.alt_side;
      const RiskEstimate r = estimate_risk(cfg, tau);
      worst = std::max(worst, r.risk);
      csv << csv_field(cfg.detector.label()) << ',' << csv_field(cfg.adversary_null.label()) << ','
          << csv_field(cfg.adversary_alt.label()) << ',' << cfg.model.n << ',' << fmt(cfg.model.p) << ','
          << fmt(cfg.model.q) << ',' << csv_field(cfg.model.pattern_label()) << ',' << fmt(tau) << ','
          << fmt(r.type1) << ',' << fmt(r.type2) << ',' << fmt(r.risk) << ',' << fmt(r.half_width_95) << ','
          << r.trials << ',' << cfg.seed << '\n';
      nlohmann::json row = r;
      row["adversary_null"] = cfg.adversary_null.label();
      row["adversary_alt"] = cfg.adversary_alt.label();
      rows.push_back(row);
      result.rows.push_back({cfg, r});
    }
    overall = std::max(overall, worst);
    points.push_back({{"n", point.model.n},
                      {"family", point.model.pattern_label()},
                      {"tau", num(tau)},
                      {"pairs", rows},
                      {"max_risk_over_grid", worst}});
  }
  result.csv = csv.str();
  result.summary = {{"detector", plan.base.detector.label()},
                    {"p", plan.base.model.p},
                    {"q", plan.base.model.q},
                    {"trials", plan.base.trials},
                    {"seed", plan.base.seed},
                    {"points", points},
                    {"max_risk_over_grid", overall},
                    {"note", "max over the evaluated adversary pairs: a lower bound on the worst-case risk"}};
  if (!plan.base.output.empty()) {
    std::ofstream c(plan.base.output + ".csv");
    std::ofstream s(plan.base.output + ".json");
    if (!c || !s) throw ExecutionError("cannot write output files with prefix " + plan.base.output);
    c << result.csv;
    s << result.summary.dump(2) << '\n';
  }
  return result;
}

int run_experiment_file(const std::string& path, std::ostream& err, std::optional<std::uint64_t> seed) {
  ExperimentPlan plan;
  try {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("not valid JSON: ") + e.what());
    }
    plan = parse_experiment(j);
    if (seed) plan.base.seed = *seed;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  try {
    run_experiment(plan);
  } catch (const Error& e) {
    err << "execution error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace plantlab
