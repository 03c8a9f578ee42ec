#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edfn/crg.hpp"
#include "edfn/error.hpp"
#include "edfn/family.hpp"
#include "edfn/graph.hpp"
#include "json.hpp"

namespace edfn {

inline constexpr std::size_t kEmbedCrgCap = 64;

/// phi(u) = x for every F-vertex u.
using EmbeddingWitness = std::vector<std::size_t>;

/// Replays a witness against the definition of F -> K.
inline bool check_embedding(const SimpleGraph& f, const Crg& k, const EmbeddingWitness& phi) {
  if (phi.size() != f.size()) return false;
  for (auto x : phi)
    if (x >= k.size()) return false;
  for (std::size_t u = 0; u < f.size(); ++u)
    for (std::size_t v = u + 1; v < f.size(); ++v) {
      std::size_t a = phi[u], b = phi[v];
      bool ok;
      if (f.adjacent(u, v)) ok = a == b ? k.is_black(a) : k.edge(a, b) != EdgeColor::White;
      else ok = a == b ? k.is_white(a) : k.edge(a, b) != EdgeColor::Black;
      if (!ok) return false;
    }
  return true;
}

namespace detail {

class EmbedSearch {
 public:
  EmbedSearch(const SimpleGraph& f, const Crg& k) : f_(f), k_(k), n_(f.size()) {
    const std::size_t m = k.size();
    edge_ok_.assign(m, 0);
    non_ok_.assign(m, 0);
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) {
        bool e = x == y ? k.is_black(x) : k.edge(x, y) != EdgeColor::White;
        bool ne = x == y ? k.is_white(x) : k.edge(x, y) != EdgeColor::Black;
        if (e) edge_ok_[x] |= std::uint64_t{1} << y;
        if (ne) non_ok_[x] |= std::uint64_t{1} << y;
      }
    full_ = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  }

  std::optional<EmbeddingWitness> run() {
    std::vector<std::uint64_t> dom(n_, full_);
    phi_.assign(n_, 0);
    assigned_.assign(n_, false);
    if (!search(dom, 0)) return std::nullopt;
    return phi_;
  }

 private:
  bool search(std::vector<std::uint64_t>& dom, std::size_t depth) {
    if (depth == n_) return true;
    // Smallest domain first, ties to the higher F-degree.
    std::size_t u = n_;
    int best_size = 65;
    std::size_t best_deg = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (assigned_[v]) continue;
      int s = std::popcount(dom[v]);
      std::size_t d = f_.degree(v);
      if (s < best_size || (s == best_size && d > best_deg)) {
        u = v;
        best_size = s;
        best_deg = d;
      }
    }
    assigned_[u] = true;
    for (std::uint64_t bits = dom[u]; bits; bits &= bits - 1) {
      std::size_t x = static_cast<std::size_t>(std::countr_zero(bits));
      std::vector<std::uint64_t> next = dom;
      bool wipeout = false;
      for (std::size_t v = 0; v < n_ && !wipeout; ++v) {
        if (assigned_[v]) continue;
        next[v] &= f_.adjacent(u, v) ? edge_ok_[x] : non_ok_[x];
        wipeout = next[v] == 0;
      }
      if (wipeout) continue;
      phi_[u] = x;
      if (search(next, depth + 1)) return true;
    }
    assigned_[u] = false;
    return false;
  }

  const SimpleGraph& f_;
  const Crg& k_;
  std::size_t n_;
  std::vector<std::uint64_t> edge_ok_, non_ok_;
  std::uint64_t full_ = 0;
  EmbeddingWitness phi_;
  std::vector<bool> assigned_;
};

}  // namespace detail

/// A map witnessing F -> K, if one exists.
inline std::optional<EmbeddingWitness> find_embedding(const SimpleGraph& f, const Crg& k) {
  if (k.size() > kEmbedCrgCap) throw SizeError("embed: CRG has more than 64 vertices");
  // Black vertices take cliques of F and white vertices independent sets; with no white vertex
  // and every clique of size <= w(F), F needs at most b * w(F) vertices.
  if (k.white_count() == 0 && f.size() > k.size() * 2 && f.size() > k.size() * clique_number(f)) return std::nullopt;
  auto phi = detail::EmbedSearch(f, k).run();
  if (phi && !check_embedding(f, k, *phi)) throw InconsistencyError("embedding search returned an invalid witness");
  return phi;
}

inline bool embeds(const SimpleGraph& f, const Crg& k) { return find_embedding(f, k).has_value(); }

/// Verdict of family_embeds. `bounded` marks a negative answer that only covers cycles up to `cycle_bound`.
struct FamilyVerdict {
  bool embeds = false;
  bool bounded = false;
  std::size_t cycle_bound = 0;
  std::optional<SimpleGraph> member;
  EmbeddingWitness witness;
};

/// Largest cycle length tried for cycles_ge(m) against a k-vertex CRG.
inline std::size_t cycle_bound_for(const FamilySpec& spec, std::size_t k) {
  if (spec.cycle_test_bound) return *spec.cycle_test_bound;
  std::size_t m = spec.min_cycle_start();
  return std::max(2 * k * k, 2 * m);
}

/// F -> K for some member F of the family.
inline FamilyVerdict family_embeds(const FamilySpec& spec, const Crg& k) {
  spec.validate();
  FamilyVerdict out;
  std::vector<SimpleGraph> members = spec.concrete_members();
  std::stable_sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  for (const auto& f : members)
    if (auto phi = find_embedding(f, k)) {
      out.embeds = true;
      out.member = f;
      out.witness = std::move(*phi);
      return out;
    }
  if (spec.has_infinite_generator()) {
    out.cycle_bound = cycle_bound_for(spec, k.size());
    for (std::size_t j = spec.min_cycle_start(); j <= out.cycle_bound; ++j) {
      SimpleGraph c = cycle_graph(j);
      if (auto phi = find_embedding(c, k)) {
        out.embeds = true;
        out.member = std::move(c);
        out.witness = std::move(*phi);
        return out;
      }
    }
    out.bounded = true;
  }
  return out;
}

/// [[u, phi(u)], ...]
inline nlohmann::json witness_json(const EmbeddingWitness& phi) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t u = 0; u < phi.size(); ++u) j.push_back({u, phi[u]});
  return j;
}

inline nlohmann::json to_json(const FamilyVerdict& v) {
  nlohmann::json j;
  j["embeds"] = v.embeds;
  j["bounded_verdict"] = v.bounded;
  if (v.bounded) j["cycle_bound"] = v.cycle_bound;
  if (v.member) {
    j["member"] = emit_graph6(*v.member);
    j["witness"] = witness_json(v.witness);
  }
  return j;
}

}  // namespace edfn
