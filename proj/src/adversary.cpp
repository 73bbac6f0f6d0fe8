#include "plantlab/adversary.hpp"

#include "plantlab/errors.hpp"

#include <sstream>

namespace plantlab {

std::string to_string(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::identity: return "identity";
    case AdversaryKind::remove_all_outside: return "remove_all_outside";
    case AdversaryKind::random_monotone: return "random_monotone";
    case AdversaryKind::null_copy_planter: return "null_copy_planter";
    case AdversaryKind::alt_stripper: return "alt_stripper";
  }
  return "unknown";
}

AdversaryKind adversary_kind_from_string(const std::string& name) {
  for (auto kind : {AdversaryKind::identity, AdversaryKind::remove_all_outside, AdversaryKind::random_monotone,
                    AdversaryKind::null_copy_planter, AdversaryKind::alt_stripper}) {
    if (to_string(kind) == name) return kind;
  }
  throw InputError("unknown adversary kind \"" + name + "\"");
}

void AdversarySpec::validate() const {
  if (kind == AdversaryKind::random_monotone && !(delta >= 0.0 && delta <= 1.0)) {
    throw InputError("random_monotone delta must lie in [0,1]");
  }
  if (kind == AdversaryKind::null_copy_planter && !(p >= 0.0 && p <= 1.0)) {
    throw InputError("null_copy_planter p must lie in [0,1]");
  }
}

std::string AdversarySpec::label() const {
  std::ostringstream out;
  out << to_string(kind);
  if (kind == AdversaryKind::random_monotone) out << "(" << delta << ")";
  if (kind == AdversaryKind::null_copy_planter) {
    out << "(" << (gamma_family ? gamma_family->to_string() : std::string("model")) << "," << p << ")";
  }
  return out.str();
}

void to_json(nlohmann::json& j, const AdversarySpec& spec) {
  j = {{"kind", to_string(spec.kind)}};
  if (spec.kind == AdversaryKind::random_monotone) j["delta"] = spec.delta;
  if (spec.kind == AdversaryKind::null_copy_planter) {
    j["p"] = spec.p;
    if (spec.gamma_family) j["gamma_family"] = *spec.gamma_family;
  }
}

void from_json(const nlohmann::json& j, AdversarySpec& spec) {
  if (j.is_string()) {
    spec = AdversarySpec::with_kind(adversary_kind_from_string(j.get<std::string>()));
  } else {
    if (!j.is_object() || !j.contains("kind")) throw InputError("adversary spec must be an object with \"kind\"");
    spec = AdversarySpec::with_kind(adversary_kind_from_string(j.at("kind").get<std::string>()));
    spec.delta = j.value("delta", 0.0);
    spec.p = j.value("p", 1.0);
    if (j.contains("gamma_family") && !j.at("gamma_family").is_null()) spec.gamma_family = j.at("gamma_family").get<FamilySpec>();
  }
  spec.validate();
}

PlanterOutcome plant_null_copy(const Graph& g, const Graph& gamma, double p, Rng& rng, SearchLimits limits) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("null_copy_planter p must lie in [0,1]");
  const Graph core = gamma.without_isolated();
  if (core.order() == 0) throw InputError("null_copy_planter: pattern has no edges");

  EmbeddingSearch search(core, g, true, limits);
  // Each copy has |Aut|/|T| twin-ordered embeddings, so a uniform choice among
  // twin-ordered embeddings is a uniform choice among copies.
  const BigInt per_copy_big = automorphism_group_order(core, limits) / search.twin_group_order();
  const BigInt stream_cap_big = per_copy_big * kMaxPlanterCopies;
  const std::uint64_t stream_cap =
      stream_cap_big > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max() : stream_cap_big.convert_to<std::uint64_t>();

  std::uint64_t seen = 0;
  std::vector<int> chosen;
  search.for_each([&](std::span<const int> mapping) {
    if (++seen > stream_cap) throw ResourceError("null_copy_planter: more than " + std::to_string(kMaxPlanterCopies) + " copies");
    if (rng.below(seen) == 0) chosen.assign(mapping.begin(), mapping.end());
    return true;
  });

  PlanterOutcome out;
  if (seen == 0) {
    out.graph = g;
    return out;
  }
  out.copies = seen / per_copy_big.convert_to<std::uint64_t>();
  std::vector<Edge> copy_edges;
  for (const Edge& e : core.edges()) copy_edges.push_back(make_edge(chosen[static_cast<std::size_t>(e.u)], chosen[static_cast<std::size_t>(e.v)]));
  out.chosen_copy = Graph::from_edges(g.order(), copy_edges);
  std::vector<Edge> kept;
  for (const Edge& e : out.chosen_copy->edges()) {
    if (rng.bernoulli(p)) kept.push_back(e);
  }
  out.graph = Graph::from_edges(g.order(), kept);
  return out;
}

Graph apply_null_adversary(const AdversarySpec& spec, const Graph& g, Rng& rng, const Graph* gamma) {
  spec.validate();
  switch (spec.kind) {
    case AdversaryKind::identity:
    case AdversaryKind::remove_all_outside:
      return g;
    case AdversaryKind::random_monotone:
      return g.filter_edges([&](const Edge&) { return !rng.bernoulli(spec.delta); });
    case AdversaryKind::null_copy_planter: {
      if (spec.gamma_family) return plant_null_copy(g, make_family(*spec.gamma_family), spec.p, rng).graph;
      if (gamma == nullptr) throw InputError("null_copy_planter needs a target pattern");
      return plant_null_copy(g, *gamma, spec.p, rng).graph;
    }
    case AdversaryKind::alt_stripper:
      throw InputError("alt_stripper acts only on planted instances");
  }
  throw InputError("unknown adversary");
}

Graph apply_alt_adversary(const AdversarySpec& spec, const PlantedInstance& inst, Rng& rng) {
  spec.validate();
  if (!inst.has_plant()) throw InputError("alternative adversary needs a planted instance");
  const Graph& g = inst.graph;
  const Graph& plant = inst.planted_copy;
  switch (spec.kind) {
    case AdversaryKind::identity:
      return g;
    case AdversaryKind::alt_stripper:
    case AdversaryKind::remove_all_outside:
      return g.filter_edges([&](const Edge& e) { return plant.has_edge(e.u, e.v); });
    case AdversaryKind::random_monotone:
      return g.filter_edges([&](const Edge& e) { return plant.has_edge(e.u, e.v) || !rng.bernoulli(spec.delta); });
    case AdversaryKind::null_copy_planter:
      throw InputError("null_copy_planter acts only on null instances");
  }
  throw InputError("unknown adversary");
}

}  // namespace plantlab
