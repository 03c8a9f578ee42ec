#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "edfn/crg.hpp"
#include "edfn/gvalue.hpp"

namespace edfn {

/// Gray components of an all-black CRG with no black edges whose gray graph is a disjoint union
/// of paths, each listed in path order. nullopt when K does not have this shape.
inline std::optional<std::vector<std::vector<std::size_t>>> linear_forest_components(const Crg& k) {
  const std::size_t n = k.size();
  std::vector<std::vector<std::size_t>> nbr(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!k.is_black(x)) return std::nullopt;
    for (std::size_t y = x + 1; y < n; ++y) {
      EdgeColor c = k.edge(x, y);
      if (c == EdgeColor::Black) return std::nullopt;
      if (c == EdgeColor::Gray) {
        nbr[x].push_back(y);
        nbr[y].push_back(x);
      }
    }
    if (nbr[x].size() > 2) return std::nullopt;
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> comps;
  std::size_t visited = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || nbr[s].size() == 2) continue;
    std::vector<std::size_t> path{s};
    seen[s] = true;
    std::size_t prev = n, cur = s;
    while (true) {
      std::size_t next = n;
      for (auto y : nbr[cur])
        if (y != prev) next = y;
      if (next == n) break;
      path.push_back(next);
      seen[next] = true;
      prev = cur;
      cur = next;
    }
    visited += path.size();
    comps.push_back(std::move(path));
  }
  if (visited != n) return std::nullopt;  // a gray cycle remains
  return comps;
}

namespace detail {

template <class T>
bool forest_greater(const T& a, const T& b) {
  if constexpr (Arith<T>::exact) return a > b;
  else return a > b + 1e-10 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

template <class T>
bool forest_equal(const T& a, const T& b) {
  return !forest_greater(a, b) && !forest_greater(b, a);
}

/// Best packing of intervals into a path of length n: value, count, and one argmax as (start, len).
template <class T>
struct Packing {
  T value;
  std::size_t count = 1;
  std::vector<std::pair<std::size_t, std::size_t>> intervals;
};

}  // namespace detail

/// g_K(p) for a CRG accepted by linear_forest_components.
///
/// Every support induces a white join of gray paths. A full-support stationary point of P_L has
/// value p + c_L, and white-joining blocks with c_i > 0 gives p + 1/sum(1/c_i); if some c_L <= 0
/// the best is the single interval with the least c_L.
template <class T>
GRecord<T> solve_g_forest(const Crg& k, const T& p, const std::vector<std::vector<std::size_t>>& comps) {
  std::size_t longest = 0;
  for (const auto& c : comps) longest = std::max(longest, c.size());

  std::vector<std::optional<Stationary<T>>> interval(longest + 1);
  for (std::size_t len = 1; len <= longest; ++len) {
    auto m = build_matrix<T>(make_path_crg(len), p);
    std::vector<std::size_t> all(len);
    for (std::size_t i = 0; i < len; ++i) all[i] = i;
    auto st = stationary_point(m, all);
    if (!st) continue;
    bool positive = std::all_of(st->mu.begin(), st->mu.end(), [](const T& v) { return Arith<T>::positive(v); });
    if (positive) interval[len] = std::move(st);
  }

  GRecord<T> rec;
  rec.route = "forest";
  const std::size_t n = k.size();
  auto place = [&](std::vector<T>& mu, const std::vector<std::size_t>& comp, std::size_t start, std::size_t len, const T& scale) {
    for (std::size_t i = 0; i < len; ++i) mu[comp[start + i]] = scale * interval[len]->mu[i];
  };

  std::optional<T> cmin;
  for (std::size_t len = 1; len <= longest; ++len)
    if (interval[len]) {
      T c = interval[len]->lambda - p;
      if (!cmin || c < *cmin) cmin = c;
    }
  if (!cmin) throw InconsistencyError("forest solver found no feasible interval");

  if (!(*cmin > 0)) {
    std::size_t count = 0;
    std::vector<T> mu(n, T(0));
    for (const auto& comp : comps)
      for (std::size_t len = 1; len <= comp.size(); ++len) {
        if (!interval[len] || !detail::forest_equal(T(interval[len]->lambda - p), *cmin)) continue;
        if (count == 0) place(mu, comp, 0, len, T(1));
        count += comp.size() - len + 1;
      }
    rec.g = p + *cmin;
    rec.minimizer.weights = std::move(mu);
    rec.minimizer_count = count;
  } else {
    std::vector<T> weight(longest + 1);
    for (std::size_t len = 1; len <= longest; ++len)
      if (interval[len]) weight[len] = T(1) / (interval[len]->lambda - p);

    T total = T(0);
    std::size_t count = 1;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> chosen(comps.size());
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      const std::size_t len_c = comps[ci].size();
      std::vector<detail::Packing<T>> best(len_c + 1);
      best[0].value = T(0);
      for (std::size_t i = 1; i <= len_c; ++i) {
        detail::Packing<T> cur = best[i - 1];
        for (std::size_t len = 1; len <= i; ++len) {
          if (!interval[len]) continue;
          const std::size_t before = i >= len + 1 ? i - len - 1 : 0;
          T v = best[before].value + weight[len];
          if (detail::forest_greater(v, cur.value)) {
            cur.value = v;
            cur.count = best[before].count;
            cur.intervals = best[before].intervals;
            cur.intervals.emplace_back(i - len, len);
          } else if (detail::forest_equal(v, cur.value)) {
            cur.count += best[before].count;
          }
        }
        best[i] = std::move(cur);
      }
      total += best[len_c].value;
      count *= best[len_c].count;
      chosen[ci] = best[len_c].intervals;
    }
    std::vector<T> mu(n, T(0));
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
      for (auto [start, len] : chosen[ci]) place(mu, comps[ci], start, len, weight[len] / total);
    rec.g = p + T(1) / total;
    rec.minimizer.weights = std::move(mu);
    rec.minimizer_count = count;
  }
  rec.unique = rec.minimizer_count == 1;
  rec.support = rec.minimizer.support();
  rec.full_support = rec.support.size() == n;
  rec.minimizers = {rec.minimizer};
  return rec;
}

}  // namespace edfn
