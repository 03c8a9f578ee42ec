#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "edfn/crg.hpp"
#include "edfn/error.hpp"

namespace edfn {

inline constexpr std::size_t kCanonicalCap = 9;

namespace detail {

/// Iterated colour refinement. Class ids are assigned by sorting the invariant tuples, so they
/// depend only on the isomorphism class.
inline std::vector<int> refine_classes(const Crg& k) {
  const std::size_t n = k.size();
  std::vector<int> cls(n);
  {
    std::vector<std::tuple<int, int, int, int>> inv(n);
    for (std::size_t x = 0; x < n; ++x) {
      int cnt[3] = {0, 0, 0};
      for (std::size_t y = 0; y < n; ++y)
        if (y != x) ++cnt[static_cast<int>(k.edge(x, y))];
      inv[x] = {static_cast<int>(k.vertex(x)), cnt[0], cnt[1], cnt[2]};
    }
    auto sorted = inv;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t x = 0; x < n; ++x)
      cls[x] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), inv[x]) - sorted.begin());
  }
  std::size_t classes = static_cast<std::size_t>(*std::max_element(cls.begin(), cls.end()) + 1);
  while (true) {
    using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<Sig> sig(n);
    for (std::size_t x = 0; x < n; ++x) {
      sig[x].first = cls[x];
      for (std::size_t y = 0; y < n; ++y)
        if (y != x) sig[x].second.emplace_back(static_cast<int>(k.edge(x, y)), cls[y]);
      std::sort(sig[x].second.begin(), sig[x].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (std::size_t x = 0; x < n; ++x)
      next[x] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[x]) - sorted.begin());
    cls = std::move(next);
    if (sorted.size() == classes) break;
    classes = sorted.size();
  }
  return cls;
}

struct CanonSearch {
  const Crg& k;
  std::vector<int> cell_of_pos;  // refined class required at each position
  std::vector<int> cls;
  std::vector<std::size_t> perm, best_perm;
  std::string cur, best;
  std::vector<bool> used;

  void run(std::size_t pos) {
    const std::size_t n = k.size();
    if (pos == n) {
      if (best.empty() || cur < best) {
        best = cur;
        best_perm = perm;
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || cls[v] != cell_of_pos[pos]) continue;
      std::size_t base = cur.size();
      for (std::size_t i = 0; i < pos; ++i) cur.push_back(to_char(k.edge(perm[i], v)));
      // Prune prefixes already larger than the best complete encoding.
      if (best.empty() || cur.compare(0, cur.size(), best, 0, cur.size()) <= 0) {
        used[v] = true;
        perm.push_back(v);
        run(pos + 1);
        perm.pop_back();
        used[v] = false;
      }
      cur.resize(base);
    }
  }
};

}  // namespace detail

/// Canonical relabeling: result[i] is the original vertex placed at position i.
inline std::vector<std::size_t> canonical_labeling(const Crg& k, std::size_t cap = kCanonicalCap) {
  if (k.size() > cap)
    throw SizeError("canonical_form: " + std::to_string(k.size()) + " vertices exceeds cap " + std::to_string(cap));
  auto cls = detail::refine_classes(k);
  std::vector<int> cell_of_pos = cls;
  std::sort(cell_of_pos.begin(), cell_of_pos.end());
  detail::CanonSearch s{k, cell_of_pos, cls, {}, {}, {}, {}, std::vector<bool>(k.size(), false)};
  s.run(0);
  return s.best_perm;
}

/// A string equal for two CRGs iff they are isomorphic (colour-preserving).
inline std::string canonical_form(const Crg& k, std::size_t cap = kCanonicalCap) {
  auto perm = canonical_labeling(k, cap);
  std::string key;
  for (auto v : perm) key.push_back(to_char(k.vertex(v)));
  key.push_back(':');
  for (std::size_t j = 1; j < perm.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) key.push_back(to_char(k.edge(perm[i], perm[j])));
  return key;
}

inline Crg canonical_crg(const Crg& k, std::size_t cap = kCanonicalCap) { return k.permuted(canonical_labeling(k, cap)); }

inline bool crg_isomorphic(const Crg& a, const Crg& b, std::size_t cap = kCanonicalCap) {
  if (a.size() != b.size() || a.white_count() != b.white_count()) return false;
  for (auto c : {EdgeColor::White, EdgeColor::Black, EdgeColor::Gray})
    if (a.edge_count(c) != b.edge_count(c)) return false;
  return canonical_form(a, cap) == canonical_form(b, cap);
}

}  // namespace edfn
