#include "plantlab/family.hpp"

#include "plantlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

namespace plantlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FamilySpec parse_all() {
    FamilySpec spec = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return spec;
  }

 private:
  FamilySpec parse_spec() {
    const std::string name = parse_name();
    expect('(');
    if (name == "disjoint_union" || name == "union") {
      std::vector<FamilySpec> parts;
      parts.push_back(parse_spec());
      while (accept(',')) parts.push_back(parse_spec());
      expect(')');
      return FamilySpec::disjoint_union(std::move(parts));
    }
    std::vector<int> args;
    args.push_back(parse_int());
    while (accept(',')) args.push_back(parse_int());
    expect(')');
    auto want = [&](std::size_t count) {
      if (args.size() != count) fail(name + " expects " + std::to_string(count) + " argument(s)");
    };
    if (name == "clique") {
      want(1);
      return FamilySpec::clique(args[0]);
    }
    if (name == "complete_bipartite" || name == "bipartite") {
      want(2);
      return FamilySpec::complete_bipartite(args[0], args[1]);
    }
    if (name == "turan") {
      want(2);
      return FamilySpec::turan(args[0], args[1]);
    }
    if (name == "path") {
      want(1);
      return FamilySpec::path(args[0]);
    }
    if (name == "star") {
      want(1);
      return FamilySpec::star(args[0]);
    }
    fail("unknown family '" + name + "'");
  }

  std::string parse_name() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected family name");
    return std::string(text_.substr(start, pos_ - start));
  }

  int parse_int() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ - start == 1 && text_[start] == '-')) fail("expected integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("family spec \"" + std::string(text_) + "\": " + what + " at position " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Graph complete_multipartite(const std::vector<int>& part_sizes) {
  std::vector<int> part_of;
  for (std::size_t p = 0; p < part_sizes.size(); ++p) part_of.insert(part_of.end(), static_cast<std::size_t>(part_sizes[p]), static_cast<int>(p));
  const int v = static_cast<int>(part_of.size());
  std::vector<Edge> edges;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      if (part_of[static_cast<std::size_t>(a)] != part_of[static_cast<std::size_t>(b)]) edges.push_back(Edge{a, b});
    }
  }
  return Graph::from_edges(v, edges);
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  FamilySpec spec = SpecParser(text).parse_all();
  validate(spec);
  return spec;
}

std::string FamilySpec::to_string() const {
  return std::visit(overloaded{
                        [](const family::Clique& c) { return "clique(" + std::to_string(c.k) + ")"; },
                        [](const family::CompleteBipartite& b) {
                          return "complete_bipartite(" + std::to_string(b.left) + "," + std::to_string(b.right) + ")";
                        },
                        [](const family::Turan& t) { return "turan(" + std::to_string(t.v) + "," + std::to_string(t.r) + ")"; },
                        [](const family::Path& p) { return "path(" + std::to_string(p.k) + ")"; },
                        [](const family::Star& s) { return "star(" + std::to_string(s.leaves) + ")"; },
                        [](const family::DisjointUnion& u) {
                          std::string out = "disjoint_union(";
                          for (std::size_t i = 0; i < u.parts.size(); ++i) {
                            if (i > 0) out += ",";
                            out += u.parts[i].to_string();
                          }
                          return out + ")";
                        },
                    },
                    kind);
}

int FamilySpec::vertex_count() const {
  return std::visit(overloaded{
                        [](const family::Clique& c) { return c.k; },
                        [](const family::CompleteBipartite& b) { return b.left + b.right; },
                        [](const family::Turan& t) { return t.v; },
                        [](const family::Path& p) { return p.k; },
                        [](const family::Star& s) { return s.leaves + 1; },
                        [](const family::DisjointUnion& u) {
                          int total = 0;
                          for (const auto& part : u.parts) total += part.vertex_count();
                          return total;
                        },
                    },
                    kind);
}

void validate(const FamilySpec& spec) {
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw InputError(spec.to_string() + ": " + what);
  };
  std::visit(overloaded{
                 [&](const family::Clique& c) { require(c.k >= 2, "clique needs k >= 2"); },
                 [&](const family::CompleteBipartite& b) { require(b.left >= 1 && b.right >= 1, "bipartite sides must be >= 1"); },
                 [&](const family::Turan& t) { require(t.r >= 2 && t.r <= t.v, "turan needs 2 <= r <= v"); },
                 [&](const family::Path& p) { require(p.k >= 2, "path needs k >= 2 vertices"); },
                 [&](const family::Star& s) { require(s.leaves >= 1, "star needs >= 1 leaf"); },
                 [&](const family::DisjointUnion& u) {
                   require(!u.parts.empty(), "disjoint_union needs at least one part");
                   for (const auto& part : u.parts) validate(part);
                 },
             },
             spec.kind);
}

Graph make_family(const FamilySpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const family::Clique& c) { return complete_multipartite(std::vector<int>(static_cast<std::size_t>(c.k), 1)); },
                        [](const family::CompleteBipartite& b) { return complete_multipartite({b.left, b.right}); },
                        [](const family::Turan& t) {
                          std::vector<int> sizes(static_cast<std::size_t>(t.r), t.v / t.r);
                          for (int i = 0; i < t.v % t.r; ++i) ++sizes[static_cast<std::size_t>(i)];
                          return complete_multipartite(sizes);
                        },
                        [](const family::Path& p) {
                          std::vector<Edge> edges;
                          for (int i = 0; i + 1 < p.k; ++i) edges.push_back(Edge{i, i + 1});
                          return Graph::from_edges(p.k, edges);
                        },
                        [](const family::Star& s) { return complete_multipartite({1, s.leaves}); },
                        [](const family::DisjointUnion& u) {
                          Graph g(0);
                          for (const auto& part : u.parts) g = g.disjoint_union(make_family(part));
                          return g;
                        },
                    },
                    spec.kind);
}

ClosedFormNuclearNorm closed_form_nuclear_norm(const FamilySpec& spec) {
  validate(spec);
  return std::visit(overloaded{
                        [](const family::Clique& c) { return ClosedFormNuclearNorm{2.0 * (c.k - 1), false}; },
                        [](const family::CompleteBipartite& b) {
                          return ClosedFormNuclearNorm{2.0 * std::sqrt(static_cast<double>(b.left) * b.right), false};
                        },
                        [](const family::Path& p) {
                          // eigenvalues 2cos(i*pi/(k+1)), i = 1..k
                          double sum = 0.0;
                          for (int i = 1; i <= p.k; ++i) sum += 2.0 * std::abs(std::cos(i * std::numbers::pi / (p.k + 1)));
                          return ClosedFormNuclearNorm{sum, false};
                        },
                        [](const family::Turan& t) {
                          return ClosedFormNuclearNorm{2.0 * (1.0 - 1.0 / t.r) * t.v, true};
                        },
                        [&](const auto&) -> ClosedFormNuclearNorm {
                          throw UnsupportedError("no closed-form nuclear norm for " + spec.to_string());
                        },
                    },
                    spec.kind);
}

void to_json(nlohmann::json& j, const FamilySpec& spec) { j = spec.to_string(); }

void from_json(const nlohmann::json& j, FamilySpec& spec) {
  if (j.is_string()) {
    spec = FamilySpec::parse(j.get<std::string>());
    return;
  }
  if (!j.is_object() || !j.contains("kind")) throw InputError("family spec must be a string or an object with \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  auto arg = [&](const char* key) {
    if (!j.contains(key)) throw InputError("family " + kind + ": missing \"" + key + "\"");
    return j.at(key).get<int>();
  };
  if (kind == "clique") {
    spec = FamilySpec::clique(arg("k"));
  } else if (kind == "complete_bipartite" || kind == "bipartite") {
    spec = FamilySpec::complete_bipartite(arg("kl"), arg("kr"));
  } else if (kind == "turan") {
    spec = FamilySpec::turan(arg("v"), arg("r"));
  } else if (kind == "path") {
    spec = FamilySpec::path(arg("k"));
  } else if (kind == "star") {
    spec = FamilySpec::star(arg("leaves"));
  } else if (kind == "disjoint_union" || kind == "union") {
    std::vector<FamilySpec> parts;
    for (const auto& part : j.at("parts")) parts.push_back(part.get<FamilySpec>());
    spec = FamilySpec::disjoint_union(std::move(parts));
  } else {
    throw InputError("unknown family kind \"" + kind + "\"");
  }
  validate(spec);
}

}  // namespace plantlab
