#pragma once

#include "plantlab/combinatorics.hpp"
#include "plantlab/family.hpp"
#include "plantlab/graph.hpp"
#include "plantlab/models.hpp"
#include "plantlab/rng.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace plantlab {

enum class AdversaryKind { identity, remove_all_outside, random_monotone, null_copy_planter, alt_stripper };

/// Largest number of copies null_copy_planter will enumerate.
inline constexpr std::uint64_t kMaxPlanterCopies = 1'000'000;

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::identity;
  /// Deletion rate for random_monotone.
  double delta = 0.0;
  /// Target pattern for null_copy_planter; when unset the experiment's pattern is used.
  std::optional<FamilySpec> gamma_family;
  /// Retention probability of the planted copy's edges for null_copy_planter.
  double p = 1.0;

  static AdversarySpec identity() { return {}; }
  static AdversarySpec remove_all_outside() { return with_kind(AdversaryKind::remove_all_outside); }
  static AdversarySpec random_monotone(double delta) {
    AdversarySpec s = with_kind(AdversaryKind::random_monotone);
    s.delta = delta;
    return s;
  }
  static AdversarySpec null_copy_planter(std::optional<FamilySpec> gamma, double p) {
    return {AdversaryKind::null_copy_planter, 0.0, std::move(gamma), p};
  }
  static AdversarySpec alt_stripper() { return with_kind(AdversaryKind::alt_stripper); }
  static AdversarySpec with_kind(AdversaryKind kind) {
    AdversarySpec s;
    s.kind = kind;
    return s;
  }

  /// Throws InputError for out-of-range parameters.
  void validate() const;
  /// Short label such as "random_monotone(0.25)".
  std::string label() const;
};

std::string to_string(AdversaryKind kind);
AdversaryKind adversary_kind_from_string(const std::string& name);

void to_json(nlohmann::json& j, const AdversarySpec& spec);
void from_json(const nlohmann::json& j, AdversarySpec& spec);

struct PlanterOutcome {
  Graph graph;
  /// The copy that was kept (all of its edges), when G contained one.
  std::optional<Graph> chosen_copy;
  /// Number of copies of the pattern found in G.
  std::uint64_t copies = 0;
};

/// If G contains a copy of `gamma`, chooses one uniformly among all copies
/// (reservoir sampling over the enumeration), deletes every other edge and keeps
/// each edge of the copy with probability p. Otherwise returns G unchanged.
/// Throws ResourceError when G has more than kMaxPlanterCopies copies.
PlanterOutcome plant_null_copy(const Graph& g, const Graph& gamma, double p, Rng& rng, SearchLimits limits = {});

/// Adversary acting on a null sample. `gamma` is the fallback pattern for
/// null_copy_planter. alt_stripper has no null action and throws InputError.
Graph apply_null_adversary(const AdversarySpec& spec, const Graph& g, Rng& rng, const Graph* gamma = nullptr);

/// Adversary acting on a planted sample; every planted edge present in the
/// input survives. null_copy_planter has no alternative action and throws InputError.
Graph apply_alt_adversary(const AdversarySpec& spec, const PlantedInstance& inst, Rng& rng);

}  // namespace plantlab
