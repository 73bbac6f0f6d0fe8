#pragma once

#include "plantlab/graph.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plantlab {

struct FamilySpec;

namespace family {
struct Clique {
  int k = 0;
};
struct CompleteBipartite {
  int left = 0;
  int right = 0;
};
/// Complete r-partite graph on v vertices with parts as equal as possible.
struct Turan {
  int v = 0;
  int r = 0;
};
/// Path on k vertices (k - 1 edges).
struct Path {
  int k = 0;
};
struct Star {
  int leaves = 0;
};
struct DisjointUnion {
  std::vector<FamilySpec> parts;
};
}  // namespace family

/// A named planted-pattern family. Every valid spec generates a graph without
/// isolated vertices.
struct FamilySpec {
  using Kind = std::variant<family::Clique, family::CompleteBipartite, family::Turan, family::Path, family::Star,
                            family::DisjointUnion>;
  Kind kind;

  static FamilySpec clique(int k) { return {family::Clique{k}}; }
  static FamilySpec complete_bipartite(int left, int right) { return {family::CompleteBipartite{left, right}}; }
  static FamilySpec turan(int v, int r) { return {family::Turan{v, r}}; }
  static FamilySpec path(int k) { return {family::Path{k}}; }
  static FamilySpec star(int leaves) { return {family::Star{leaves}}; }
  static FamilySpec disjoint_union(std::vector<FamilySpec> parts) { return {family::DisjointUnion{std::move(parts)}}; }

  /// Parses "clique(4)", "complete_bipartite(2,3)", "turan(6,3)", "path(10)",
  /// "star(4)", "disjoint_union(clique(4),path(10))". Throws InputError.
  static FamilySpec parse(std::string_view text);

  std::string to_string() const;
  /// Number of vertices of the generated graph.
  int vertex_count() const;
};

/// Throws InputError when the parameters are out of range.
void validate(const FamilySpec& spec);

/// The named graph on consecutive vertices 0..v-1.
Graph make_family(const FamilySpec& spec);

struct ClosedFormNuclearNorm {
  double value = 0.0;
  /// Set for Turán graphs, where only the upper bound 2(1 - 1/r)v is known.
  bool bound_only = false;
};

/// Nuclear norm of the family's adjacency matrix from its known spectrum.
/// Supported: clique, complete_bipartite, path (exact) and turan (upper bound).
/// Throws UnsupportedError for other families.
ClosedFormNuclearNorm closed_form_nuclear_norm(const FamilySpec& spec);

void to_json(nlohmann::json& j, const FamilySpec& spec);
/// Accepts either the string form or {"kind": ..., params...}.
void from_json(const nlohmann::json& j, FamilySpec& spec);

}  // namespace plantlab
