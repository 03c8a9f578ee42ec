#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "edfn/canonical.hpp"
#include "edfn/crg.hpp"
#include "edfn/embed.hpp"
#include "edfn/error.hpp"
#include "edfn/family.hpp"
#include "edfn/graph.hpp"
#include "edfn/parallel.hpp"
#include "edfn/solver.hpp"
#include "json.hpp"

namespace edfn {

enum class Side { ZeroCore, OneCore };

inline std::string to_string(Side s) { return s == Side::ZeroCore ? "zero_core" : "one_core"; }

inline Side side_from_string(const std::string& s) {
  if (s == "zero_core" || s == "0") return Side::ZeroCore;
  if (s == "one_core" || s == "1") return Side::OneCore;
  throw ParseError("side must be zero_core or one_core, got '" + s + "'", 0);
}

struct CatalogEntry {
  std::string id;
  Crg crg;
  std::string canonical_key;  // empty when the CRG is above the canonicalization cap
};

struct Catalog {
  std::optional<FamilySpec> spec;
  std::string property_hash;
  Side side = Side::ZeroCore;
  std::size_t max_white = 0, max_black = 0;
  std::vector<CatalogEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  const CatalogEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
};

struct EnumerateOptions {
  std::size_t threads = 0;
};

namespace detail {

/// Simple graphs on n vertices up to isomorphism, each extending a representative on n-1 vertices
/// by one vertex with every possible neighbourhood. Keys are canonical forms of the all-black
/// CRG with gray edges on the graph's edges.
inline std::vector<std::vector<SimpleGraph>> graphs_up_to_iso(std::size_t max_n) {
  auto as_crg = [](const SimpleGraph& g) {
    Crg k(std::vector<VertexColor>(g.size(), VertexColor::Black), EdgeColor::White);
    for (auto [u, v] : g.edges()) k.set_edge(u, v, EdgeColor::Gray);
    return k;
  };
  std::vector<std::vector<SimpleGraph>> by_n(max_n + 1);
  if (max_n >= 1) by_n[1].push_back(SimpleGraph(1));
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::map<std::string, SimpleGraph> seen;
    for (const auto& base : by_n[n - 1])
      for (std::uint32_t nb = 0; nb < (1u << (n - 1)); ++nb) {
        SimpleGraph g(n);
        for (auto [u, v] : base.edges()) g.add_edge(u, v);
        for (std::size_t u = 0; u + 1 < n; ++u)
          if (nb >> u & 1u) g.add_edge(u, n - 1);
        seen.try_emplace(canonical_form(as_crg(g)), g);
      }
    for (auto& [key, g] : seen) by_n[n].push_back(std::move(g));
  }
  return by_n;
}

/// The 0-core CRG with w white vertices and b black vertices whose gray edges among the blacks
/// are the edges of `gray`.
inline Crg zero_core_from(std::size_t w, const SimpleGraph* gray, std::size_t b) {
  std::vector<VertexColor> vc(w, VertexColor::White);
  vc.insert(vc.end(), b, VertexColor::Black);
  Crg k(std::move(vc), EdgeColor::Gray);
  for (std::size_t x = 0; x < b; ++x)
    for (std::size_t y = x + 1; y < b; ++y)
      if (!gray->adjacent(x, y)) k.set_edge(w + x, w + y, EdgeColor::White);
  return k;
}

}  // namespace detail

/// Every 0-core (or 1-core) CRG with at most max_white white and max_black black vertices, up to
/// isomorphism, into which no member of the family embeds.
///
/// A 0-core CRG is determined by its white count and the gray graph on its black vertices, so
/// isomorphism classes are pairs (w, graph up to isomorphism). 1-core CRGs are complements.
inline Catalog enumerate_catalog(const FamilySpec& spec, std::size_t max_white, std::size_t max_black, Side side,
                                 const EnumerateOptions& opt = {}) {
  spec.validate();
  if (max_white + max_black > kCanonicalCap)
    throw SizeError("enumerate: bounds " + std::to_string(max_white) + "+" + std::to_string(max_black) + " exceed the cap " +
                    std::to_string(kCanonicalCap));
  // For the 1-core side the complement's black vertices are our white ones.
  const std::size_t zw = side == Side::ZeroCore ? max_white : max_black;
  const std::size_t zb = side == Side::ZeroCore ? max_black : max_white;
  auto graphs = detail::graphs_up_to_iso(zb);

  struct Cand {
    std::size_t w, b, j;
    Crg crg;
  };
  std::vector<Cand> cands;
  for (std::size_t w = 0; w <= zw; ++w)
    for (std::size_t b = 0; b <= zb; ++b) {
      if (w + b == 0) continue;
      if (b == 0) {
        cands.push_back({w, b, 0, make_kwb(w, 0)});
        continue;
      }
      for (std::size_t j = 0; j < graphs[b].size(); ++j) cands.push_back({w, b, j, detail::zero_core_from(w, &graphs[b][j], b)});
    }
  if (side == Side::OneCore)
    for (auto& c : cands) c.crg = complement_crg(c.crg);

  std::vector<char> keep(cands.size(), 0);
  parallel_for(cands.size(), [&](std::size_t i) { keep[i] = !family_embeds(spec, cands[i].crg).embeds; }, opt.threads);

  Catalog cat;
  cat.spec = spec;
  cat.property_hash = family_hash(spec);
  cat.side = side;
  cat.max_white = max_white;
  cat.max_black = max_black;
  std::vector<CatalogEntry> entries;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!keep[i]) continue;
    const Crg& k = cands[i].crg;
    entries.push_back({"", k, canonical_form(k)});
  }
  std::sort(entries.begin(), entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    auto ka = std::make_tuple(a.crg.size(), a.crg.white_count(), a.canonical_key);
    auto kb = std::make_tuple(b.crg.size(), b.crg.white_count(), b.canonical_key);
    return ka < kb;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Crg& k = entries[i].crg;
    entries[i].id = (side == Side::ZeroCore ? "z" : "o") + std::to_string(k.white_count()) + "w" +
                    std::to_string(k.black_count()) + "b-" + std::to_string(i);
    entries[i].crg = canonical_crg(k);
  }
  cat.entries = std::move(entries);
  return cat;
}

/// A catalog of hand-picked CRGs (no isomorphism reduction). Keys are filled in when small enough.
inline Catalog explicit_catalog(std::vector<std::pair<std::string, Crg>> items, Side side = Side::ZeroCore,
                                std::optional<FamilySpec> spec = std::nullopt) {
  Catalog cat;
  cat.side = side;
  if (spec) {
    cat.property_hash = family_hash(*spec);
    cat.spec = std::move(spec);
  }
  for (auto& [id, k] : items) {
    cat.max_white = std::max(cat.max_white, k.white_count());
    cat.max_black = std::max(cat.max_black, k.black_count());
    std::string key = k.size() <= kCanonicalCap ? canonical_form(k) : std::string();
    cat.entries.push_back({id, std::move(k), std::move(key)});
  }
  return cat;
}

/// Entries that are p-core. The 0-core side needs p in (0,1/2], the 1-core side p in [1/2,1).
template <class T>
Catalog filter_p_core(const Catalog& cat, const T& p, const SolveOptions& sopt = {}, std::size_t threads = 0) {
  if (cat.side == Side::ZeroCore && (!(p > 0) || p > T(1) / 2)) throw DomainError("filter_p_core on a 0-core catalog needs p in (0,1/2]");
  if (cat.side == Side::OneCore && (p < T(1) / 2 || !(p < 1))) throw DomainError("filter_p_core on a 1-core catalog needs p in [1/2,1)");
  std::vector<char> keep(cat.entries.size(), 0);
  parallel_for(cat.entries.size(), [&](std::size_t i) { keep[i] = is_p_core<T>(cat.entries[i].crg, p, sopt); }, threads);
  Catalog out = cat;
  out.entries.clear();
  for (std::size_t i = 0; i < cat.entries.size(); ++i)
    if (keep[i]) out.entries.push_back(cat.entries[i]);
  return out;
}

// ---- persistence ---------------------------------------------------------

inline nlohmann::json to_json(const Catalog& cat) {
  nlohmann::json j;
  j["spec"] = cat.spec ? family_to_json(*cat.spec) : nlohmann::json(nullptr);
  j["property_hash"] = cat.property_hash;
  j["side"] = to_string(cat.side);
  j["bounds"] = {{"max_white", cat.max_white}, {"max_black", cat.max_black}};
  j["entries"] = nlohmann::json::array();
  for (const auto& e : cat.entries) j["entries"].push_back({{"id", e.id}, {"crg", to_text(e.crg)}, {"canonical_key", e.canonical_key}});
  return j;
}

inline Catalog catalog_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& field, const std::string& why) { throw ParseError("catalog field '" + field + "': " + why, 0); };
  if (!j.is_object()) fail("<root>", "expected an object");
  Catalog cat;
  if (j.contains("spec") && !j["spec"].is_null()) cat.spec = family_from_json(j["spec"]);
  if (j.contains("property_hash")) {
    if (!j["property_hash"].is_string()) fail("property_hash", "expected a string");
    cat.property_hash = j["property_hash"];
  }
  if (!j.contains("side") || !j["side"].is_string()) fail("side", "missing");
  cat.side = side_from_string(j["side"]);
  if (!j.contains("bounds") || !j["bounds"].is_object()) fail("bounds", "missing");
  for (const char* key : {"max_white", "max_black"})
    if (!j["bounds"].contains(key) || !j["bounds"][key].is_number_unsigned()) fail(std::string("bounds.") + key, "missing");
  cat.max_white = j["bounds"]["max_white"];
  cat.max_black = j["bounds"]["max_black"];
  if (!j.contains("entries") || !j["entries"].is_array()) fail("entries", "missing");
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const auto& e = j["entries"][i];
    std::string where = "entries[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) fail(where + ".id", "missing");
    if (!e.contains("crg") || !e["crg"].is_string()) fail(where + ".crg", "missing");
    CatalogEntry entry{e["id"], crg_from_text(e["crg"].get<std::string>()), ""};
    if (e.contains("canonical_key") && e["canonical_key"].is_string()) entry.canonical_key = e["canonical_key"];
    cat.entries.push_back(std::move(entry));
  }
  return cat;
}

/// $EDFN_CACHE_DIR, or ".edfn-cache" when unset.
inline std::filesystem::path cache_root() {
  const char* env = std::getenv("EDFN_CACHE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".edfn-cache");
}

inline std::filesystem::path catalog_cache_path(const FamilySpec& spec, std::size_t max_white, std::size_t max_black, Side side) {
  return cache_root() / "catalogs" / family_hash(spec) /
         (to_string(side) + "-" + std::to_string(max_white) + "x" + std::to_string(max_black) + ".json");
}

/// enumerate_catalog through the on-disk cache. A cached file whose spec does not match is rebuilt.
inline Catalog cached_catalog(const FamilySpec& spec, std::size_t max_white, std::size_t max_black, Side side,
                              const EnumerateOptions& opt = {}) {
  auto path = catalog_cache_path(spec, max_white, max_black, side);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      std::ifstream in(path);
      auto cat = catalog_from_json(nlohmann::json::parse(in));
      if (cat.property_hash == family_hash(spec) && cat.side == side && cat.max_white == max_white && cat.max_black == max_black)
        return cat;
    } catch (const std::exception&) {
    }
  }
  Catalog cat = enumerate_catalog(spec, max_white, max_black, side, opt);
  std::filesystem::create_directories(path.parent_path(), ec);
  if (!ec) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << to_json(cat).dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path, ec);
  }
  return cat;
}

}  // namespace edfn
