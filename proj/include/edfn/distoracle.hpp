#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "edfn/family.hpp"
#include "edfn/graph.hpp"
#include "edfn/parallel.hpp"
#include "edfn/rational.hpp"
#include "json.hpp"

namespace edfn {

inline constexpr std::size_t kDistCap = 7;
inline constexpr std::size_t kDensityCap = 6;

/// Edge sets on n labelled vertices as bitmasks; pair (i,j), i<j, is bit j(j-1)/2 + i.
namespace edgemask {

inline std::size_t pairs(std::size_t n) { return n * (n - 1) / 2; }
inline std::size_t bit(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

inline std::uint32_t from_graph(const SimpleGraph& g) {
  std::uint32_t m = 0;
  for (auto [u, v] : g.edges()) m |= 1u << bit(u, v);
  return m;
}

inline SimpleGraph to_graph(std::uint32_t m, std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (m >> bit(i, j) & 1u) g.add_edge(i, j);
  return g;
}

/// Image of every pair bit under a vertex permutation.
inline std::vector<std::uint8_t> pair_map(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  std::vector<std::uint8_t> out(pairs(n));
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) out[bit(i, j)] = static_cast<std::uint8_t>(bit(perm[i], perm[j]));
  return out;
}

inline std::uint32_t apply(std::uint32_t m, const std::vector<std::uint8_t>& map) {
  std::uint32_t out = 0;
  for (std::size_t b = 0; b < map.size(); ++b)
    if (m >> b & 1u) out |= 1u << map[b];
  return out;
}

inline std::vector<std::vector<std::uint8_t>> all_pair_maps(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::uint8_t>> out;
  do out.push_back(pair_map(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace edgemask

namespace detail {

/// free[m] != 0 iff the graph with edge mask m on n vertices contains no induced member of the family.
struct FreeTable {
  std::size_t n;
  std::vector<std::uint8_t> free;
};

/// Members with at most n vertices, cycles included.
inline std::vector<SimpleGraph> members_up_to(const FamilySpec& spec, std::size_t n) {
  std::vector<SimpleGraph> out;
  for (auto& f : spec.concrete_members())
    if (f.size() <= n) out.push_back(f);
  for (std::size_t j : spec.cycle_lengths(n)) out.push_back(cycle_graph(j));
  return out;
}

inline FreeTable build_free_table(const FamilySpec& spec, std::size_t n) {
  const auto members = members_up_to(spec, n);
  std::vector<std::uint8_t> prev = {1};  // the single graph on one vertex
  for (const auto& f : members)
    if (f.size() == 1) prev[0] = 0;
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t bits = edgemask::pairs(k);
    std::vector<std::uint8_t> cur(std::size_t{1} << bits, 1);
    // Labelled copies of the size-k members are not free.
    for (const auto& f : members) {
      if (f.size() != k) continue;
      std::uint32_t base = edgemask::from_graph(f);
      for (const auto& map : edgemask::all_pair_maps(k)) cur[edgemask::apply(base, map)] = 0;
    }
    // Deleting vertex v: new bit b reads old bit del[v][b].
    std::vector<std::vector<std::uint8_t>> del(k);
    for (std::size_t v = 0; v < k; ++v) {
      std::vector<std::size_t> keep;
      for (std::size_t u = 0; u < k; ++u)
        if (u != v) keep.push_back(u);
      for (std::size_t j = 1; j < k - 1; ++j)
        for (std::size_t i = 0; i < j; ++i) del[v].push_back(static_cast<std::uint8_t>(edgemask::bit(keep[i], keep[j])));
    }
    const std::size_t total = cur.size(), block = 4096;
    parallel_for((total + block - 1) / block, [&](std::size_t blk) {
      for (std::size_t m = blk * block; m < std::min(total, (blk + 1) * block); ++m) {
        if (!cur[m]) continue;
        for (std::size_t v = 0; v < k && cur[m]; ++v) {
          std::uint32_t sub = 0;
          for (std::size_t b = 0; b < del[v].size(); ++b)
            if (m >> del[v][b] & 1u) sub |= 1u << b;
          if (!prev[sub]) cur[m] = 0;
        }
      }
    });
    prev = std::move(cur);
  }
  return {n, std::move(prev)};
}

inline std::shared_ptr<const FreeTable> free_table(const FamilySpec& spec, std::size_t n) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const FreeTable>> cache;
  const std::string key = family_hash(spec) + "/" + std::to_string(n);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const FreeTable>(build_free_table(spec, n));
  std::lock_guard lock(mutex);
  return cache.emplace(key, table).first->second;
}

inline std::size_t min_edits(const FreeTable& t, std::uint32_t gm) {
  std::size_t best = SIZE_MAX;
  for (std::size_t m = 0; m < t.free.size(); ++m)
    if (t.free[m]) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(m) ^ gm)));
  return best;
}

}  // namespace detail

/// |E(G) symmetric-difference E(H)| / C(n,2).
inline Rational dist_graphs(const SimpleGraph& g, const SimpleGraph& h) {
  if (g.size() != h.size()) throw DomainError("dist_graphs needs graphs on the same vertex count");
  const std::size_t n = g.size();
  if (n < 2) return Rational(0);
  long diff = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (g.adjacent(u, v) != h.adjacent(u, v)) ++diff;
  return ratio(diff, static_cast<long>(edgemask::pairs(n)));
}

/// Whether G has no induced member of the family (n <= kDistCap).
inline bool is_family_free(const SimpleGraph& g, const FamilySpec& spec) {
  if (g.size() > kDistCap) throw SizeError("is_family_free: n exceeds " + std::to_string(kDistCap));
  return detail::free_table(spec, g.size())->free[edgemask::from_graph(g)] != 0;
}

/// min dist(G, H) over family-free H on V(G), by exhausting every edge set.
inline Rational dist_to_property(const SimpleGraph& g, const FamilySpec& spec) {
  spec.validate();
  const std::size_t n = g.size();
  if (n > kDistCap) throw SizeError("dist_to_property: n = " + std::to_string(n) + " exceeds " + std::to_string(kDistCap));
  auto table = detail::free_table(spec, n);
  std::size_t edits = detail::min_edits(*table, edgemask::from_graph(g));
  if (edits == SIZE_MAX) throw DomainError("no family-free graph on " + std::to_string(n) + " vertices");
  if (n < 2) return Rational(0);
  return ratio(static_cast<long>(edits), static_cast<long>(edgemask::pairs(n)));
}

struct DensityReport {
  std::size_t n;
  PValue p;
  std::size_t edges;
  Rational max_dist;
  SimpleGraph argmax;
};

/// max of dist_to_property over graphs with floor(p C(n,2)) edges, one per isomorphism class.
/// A finite-n sample only; says nothing about the limit.
inline DensityReport max_dist_at_density(std::size_t n, const PValue& p, const FamilySpec& spec) {
  spec.validate();
  if (n == 0) throw DomainError("max_dist_at_density needs n >= 1");
  if (n > kDensityCap) throw SizeError("max_dist_at_density: n = " + std::to_string(n) + " exceeds " + std::to_string(kDensityCap));
  const std::size_t bits = edgemask::pairs(n);
  std::size_t m;
  if (p.is_rational()) {
    Rational e = p.exact() * static_cast<unsigned long>(bits);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
    m = fl.get_ui();
  } else {
    m = static_cast<std::size_t>(std::floor(p.value() * static_cast<double>(bits) + 1e-9));
  }
  auto table = detail::free_table(spec, n);
  const auto maps = edgemask::all_pair_maps(n);
  DensityReport r{n, p, m, Rational(-1), SimpleGraph(n)};
  std::size_t best_edits = 0;
  bool found = false;
  for (std::uint32_t gm = 0; gm < (1u << bits); ++gm) {
    if (static_cast<std::size_t>(std::popcount(gm)) != m) continue;
    bool canonical = true;
    for (const auto& map : maps)
      if (edgemask::apply(gm, map) < gm) {
        canonical = false;
        break;
      }
    if (!canonical) continue;
    std::size_t edits = detail::min_edits(*table, gm);
    if (edits == SIZE_MAX) throw DomainError("no family-free graph on " + std::to_string(n) + " vertices");
    if (!found || edits > best_edits) {
      found = true;
      best_edits = edits;
      r.argmax = edgemask::to_graph(gm, n);
    }
  }
  r.max_dist = bits == 0 ? Rational(0) : ratio(static_cast<long>(best_edits), static_cast<long>(bits));
  return r;
}

inline nlohmann::json to_json(const DensityReport& r) {
  return {{"n", r.n},
          {"p", r.p.str()},
          {"edges", r.edges},
          {"max_dist", r.max_dist.get_str()},
          {"argmax_graph6", emit_graph6(r.argmax)},
          {"label", "finite n, not an asymptotic estimate"}};
}

}  // namespace edfn
