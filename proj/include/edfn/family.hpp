#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edfn/error.hpp"
#include "edfn/graph.hpp"
#include "json.hpp"

namespace edfn {

/// C_j for every j >= m.
struct CyclesGe {
  std::size_t m = 3;
  friend bool operator==(const CyclesGe&, const CyclesGe&) = default;
};
/// K_{1,k}.
struct Star {
  std::size_t k = 1;
  friend bool operator==(const Star&, const Star&) = default;
};
/// K_{s,t}.
struct CompleteBipartite {
  std::size_t s = 1, t = 1;
  friend bool operator==(const CompleteBipartite&, const CompleteBipartite&) = default;
};

using Generator = std::variant<CyclesGe, Star, CompleteBipartite>;

/// A forbidden family: explicit graphs plus parametric generators.
struct FamilySpec {
  std::vector<SimpleGraph> finite;
  std::vector<Generator> generators;
  /// Overrides the default cycle instantiation bound when set.
  std::optional<std::size_t> cycle_test_bound;

  void validate() const {
    if (finite.empty() && generators.empty()) throw DomainError("forbidden family is empty");
    for (const auto& g : generators) {
      if (auto c = std::get_if<CyclesGe>(&g); c && c->m < 3) throw DomainError("cycles_ge requires m >= 3");
    }
    if (cycle_test_bound && *cycle_test_bound == 0) throw DomainError("cycle_test_bound must be positive");
  }

  bool has_infinite_generator() const {
    return std::any_of(generators.begin(), generators.end(),
                       [](const Generator& g) { return std::holds_alternative<CyclesGe>(g); });
  }

  /// Every member that is a finite graph (finite list plus star/bipartite generators).
  std::vector<SimpleGraph> concrete_members() const {
    std::vector<SimpleGraph> out = finite;
    for (const auto& g : generators) {
      if (auto s = std::get_if<Star>(&g)) out.push_back(star_graph(s->k));
      if (auto b = std::get_if<CompleteBipartite>(&g)) out.push_back(complete_bipartite(b->s, b->t));
    }
    return out;
  }

  /// Cycle lengths contributed by cycles_ge generators in [lo, hi].
  std::vector<std::size_t> cycle_lengths(std::size_t hi) const {
    std::vector<std::size_t> out;
    std::size_t lo = std::numeric_limits<std::size_t>::max();
    for (const auto& g : generators)
      if (auto c = std::get_if<CyclesGe>(&g)) lo = std::min(lo, c->m);
    for (std::size_t j = lo; j <= hi && lo != std::numeric_limits<std::size_t>::max(); ++j) out.push_back(j);
    return out;
  }

  std::size_t min_cycle_start() const {
    std::size_t lo = std::numeric_limits<std::size_t>::max();
    for (const auto& g : generators)
      if (auto c = std::get_if<CyclesGe>(&g)) lo = std::min(lo, c->m);
    return lo;
  }
};

/// chi(F) = min chromatic number over the family. Generators are evaluated symbolically.
inline std::size_t family_chi(const FamilySpec& spec) {
  spec.validate();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& f : spec.finite) best = std::min(best, chromatic_number(f));
  for (const auto& g : spec.generators) {
    if (std::holds_alternative<CyclesGe>(g)) best = std::min<std::size_t>(best, 2);  // contains even cycles
    if (auto s = std::get_if<Star>(&g)) best = std::min<std::size_t>(best, s->k == 0 ? 1 : 2);
    if (auto b = std::get_if<CompleteBipartite>(&g)) best = std::min<std::size_t>(best, (b->s == 0 || b->t == 0) ? 1 : 2);
  }
  return best;
}

/// Clique-cover analogue of family_chi (finite and star/bipartite members only).
inline std::size_t family_clique_cover(const FamilySpec& spec) {
  spec.validate();
  if (spec.has_infinite_generator()) throw UnsupportedError("clique cover number of cycles_ge is not supported");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& f : spec.concrete_members()) best = std::min(best, clique_cover_number(f));
  return best;
}

inline bool has_anti_clique(const FamilySpec& spec) {
  for (const auto& f : spec.concrete_members())
    if (f.is_edgeless()) return true;
  return false;
}

inline bool has_clique(const FamilySpec& spec) {
  for (const auto& f : spec.concrete_members())
    if (f.is_complete()) return true;
  return false;
}

/// Family of complements. cycles_ge has no finite complement and is rejected.
inline FamilySpec complement_spec(const FamilySpec& spec) {
  spec.validate();
  if (spec.has_infinite_generator()) throw UnsupportedError("complement of a cycles_ge generator is unsupported");
  FamilySpec out;
  for (const auto& f : spec.concrete_members()) out.finite.push_back(f.complement());
  out.cycle_test_bound = spec.cycle_test_bound;
  return out;
}

// ---- JSON ----------------------------------------------------------------

inline nlohmann::json family_to_json(const FamilySpec& spec) {
  nlohmann::json j;
  j["forbidden"] = nlohmann::json::array();
  for (const auto& f : spec.finite) j["forbidden"].push_back(emit_graph6(f));
  j["families"] = nlohmann::json::array();
  for (const auto& g : spec.generators) {
    if (auto c = std::get_if<CyclesGe>(&g)) j["families"].push_back({{"type", "cycles_ge"}, {"m", c->m}});
    if (auto s = std::get_if<Star>(&g)) j["families"].push_back({{"type", "star"}, {"k", s->k}});
    if (auto b = std::get_if<CompleteBipartite>(&g))
      j["families"].push_back({{"type", "complete_bipartite"}, {"s", b->s}, {"t", b->t}});
  }
  if (spec.cycle_test_bound) j["cycle_test_bound"] = *spec.cycle_test_bound;
  return j;
}

inline FamilySpec family_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ParseError("property spec field '" + field + "': " + why, 0);
  };
  if (!j.is_object()) fail("<root>", "expected an object");
  FamilySpec spec;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "forbidden" && it.key() != "families" && it.key() != "cycle_test_bound") fail(it.key(), "unknown field");
  if (j.contains("forbidden")) {
    if (!j["forbidden"].is_array()) fail("forbidden", "expected an array of graph6 strings");
    for (std::size_t i = 0; i < j["forbidden"].size(); ++i) {
      const auto& s = j["forbidden"][i];
      if (!s.is_string()) fail("forbidden[" + std::to_string(i) + "]", "expected a string");
      try {
        spec.finite.push_back(parse_graph6(s.get<std::string>()));
      } catch (const ParseError& e) {
        fail("forbidden[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  if (j.contains("families")) {
    if (!j["families"].is_array()) fail("families", "expected an array");
    for (std::size_t i = 0; i < j["families"].size(); ++i) {
      const auto& f = j["families"][i];
      std::string where = "families[" + std::to_string(i) + "]";
      if (!f.is_object() || !f.contains("type") || !f["type"].is_string()) fail(where + ".type", "missing or not a string");
      auto num = [&](const char* key) -> std::size_t {
        if (!f.contains(key) || !f[key].is_number_unsigned()) fail(where + "." + key, "missing or not a nonnegative integer");
        return f[key].get<std::size_t>();
      };
      std::string type = f["type"];
      if (type == "cycles_ge") {
        spec.generators.emplace_back(CyclesGe{num("m")});
      } else if (type == "star") {
        spec.generators.emplace_back(Star{num("k")});
      } else if (type == "complete_bipartite") {
        spec.generators.emplace_back(CompleteBipartite{num("s"), num("t")});
      } else {
        fail(where + ".type", "unknown family type '" + type + "'");
      }
    }
  }
  if (j.contains("cycle_test_bound")) {
    if (!j["cycle_test_bound"].is_number_unsigned()) fail("cycle_test_bound", "expected a positive integer");
    spec.cycle_test_bound = j["cycle_test_bound"].get<std::size_t>();
  }
  try {
    spec.validate();
  } catch (const DomainError& e) {
    fail("<root>", e.what());
  }
  return spec;
}

/// FNV-1a 64-bit over the canonical JSON dump, as 16 hex digits.
inline std::string family_hash(const FamilySpec& spec) {
  std::string text = family_to_json(spec).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace edfn
