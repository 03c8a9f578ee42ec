#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edfn/crg.hpp"
#include "edfn/error.hpp"
#include "edfn/forest.hpp"
#include "edfn/gvalue.hpp"
#include "json.hpp"

namespace edfn {

struct SolveOptions {
  std::size_t float_cap = 16;
  std::size_t exact_cap = 12;
  /// Use the gray-forest route for eligible CRGs with more than `forest_above` vertices.
  bool allow_forest = true;
  std::size_t forest_above = 10;
  /// Keep at most this many distinct minimizers in the record (the count is still exact).
  std::size_t max_minimizers = 32;
};

namespace detail {

template <class T>
bool same_mass(const std::vector<T>& a, const std::vector<T>& b) {
  if constexpr (Arith<T>::exact) {
    return a == b;
  } else {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::fabs(a[i] - b[i]) >= tol::kSameMass) return false;
    return true;
  }
}

/// Exhaustive support enumeration.
template <class T>
GRecord<T> solve_g_dense(const Crg& k, const T& p, const SolveOptions& opt) {
  const std::size_t n = k.size();
  const auto m = build_matrix<T>(k, p);
  struct Cand {
    T value;
    std::vector<T> mu;
  };
  std::vector<Cand> cands;
  std::optional<T> best;
  std::vector<std::size_t> support;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    support.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) support.push_back(i);
    auto st = stationary_point(m, support);
    if (!st) continue;
    bool feasible = true;
    for (const auto& v : st->mu) {
      if constexpr (Arith<T>::exact) {
        if (sgn(v) < 0) feasible = false;
      } else {
        if (v < -tol::kFeasible) feasible = false;
      }
    }
    if (!feasible) continue;
    if constexpr (Arith<T>::exact) {
      if (best && st->lambda > *best) continue;
    } else {
      if (best && st->lambda > *best + tol::kValue) continue;
    }
    std::vector<T> mu(n, T(0));
    for (std::size_t i = 0; i < support.size(); ++i) {
      if constexpr (Arith<T>::exact) mu[support[i]] = st->mu[i];
      else mu[support[i]] = std::max(0.0, st->mu[i]);
    }
    if (!best || st->lambda < *best) best = st->lambda;
    cands.push_back({st->lambda, std::move(mu)});
  }
  if (!best) throw InconsistencyError("no stationary point found on any support");

  GRecord<T> rec;
  rec.route = "enumeration";
  rec.g = *best;
  std::vector<std::vector<T>> distinct;
  for (auto& c : cands) {
    bool tie = Arith<T>::exact ? c.value == *best : c.value <= *best + tol::kValue;
    if (!tie) continue;
    bool dup = false;
    for (const auto& d : distinct)
      if (same_mass(c.mu, d)) dup = true;
    if (!dup) distinct.push_back(std::move(c.mu));
  }
  rec.minimizer_count = distinct.size();
  rec.unique = distinct.size() == 1;
  for (std::size_t i = 0; i < distinct.size() && i < opt.max_minimizers; ++i) rec.minimizers.push_back({distinct[i]});
  rec.minimizer = rec.minimizers.front();
  rec.support = rec.minimizer.support();
  rec.full_support = rec.support.size() == n;
  return rec;
}

}  // namespace detail

/// g_K(p) = min over the simplex of <mu, M_K(p) mu>, with its minimizers.
template <class T>
GRecord<T> solve_g(const Crg& k, const T& p, const SolveOptions& opt = {}) {
  if (p < 0 || p > 1) throw DomainError("p must lie in [0,1]");
  const std::size_t cap = Arith<T>::exact ? opt.exact_cap : opt.float_cap;
  if (opt.allow_forest && (k.size() > cap || k.size() > opt.forest_above)) {
    if (auto comps = linear_forest_components(k)) return solve_g_forest<T>(k, p, *comps);
  }
  if (k.size() > cap) {
    throw SizeError("solve_g: " + std::to_string(k.size()) + " vertices exceeds the " +
                    (Arith<T>::exact ? "exact" : "float") + " cap " + std::to_string(cap));
  }
  return detail::solve_g_dense<T>(k, p, opt);
}

template <class T>
GRecord<T> solve_g(const Crg& k, const PValue& p, const SolveOptions& opt = {}) {
  return solve_g<T>(k, Arith<T>::from(p), opt);
}

/// Value only.
template <class T>
T g_value(const Crg& k, const T& p, const SolveOptions& opt = {}) {
  return solve_g<T>(k, p, opt).g;
}

/// p-core test: every vertex deletion strictly raises g. Cross-checked against the record's
/// unique/full-support flags.
template <class T>
bool is_p_core(const Crg& k, const T& p, const SolveOptions& opt = {}) {
  if (!(p > 0) || !(p < 1)) throw DomainError("is_p_core needs p in (0,1); use is_zero_core/is_one_core at the endpoints");
  auto rec = solve_g<T>(k, p, opt);
  bool primary = true;
  for (std::size_t v = 0; v < k.size() && primary && k.size() > 1; ++v) {
    T sub = solve_g<T>(k.without_vertex(v), p, opt).g;
    if constexpr (Arith<T>::exact) primary = sub > rec.g;
    else primary = sub > rec.g + tol::kValue;
  }
  bool cross = rec.unique && rec.full_support;
  if (primary != cross)
    throw InconsistencyError("p-core test disagrees with minimizer uniqueness (deletion test " + std::string(primary ? "true" : "false") +
                             ", unique full support " + (cross ? "true" : "false") + ")");
  return primary;
}

template <class T>
bool is_p_core(const Crg& k, const PValue& p, const SolveOptions& opt = {}) {
  return is_p_core<T>(k, Arith<T>::from(p), opt);
}

/// solve_g with the p_core field filled in.
template <class T>
GRecord<T> core_record(const Crg& k, const T& p, const SolveOptions& opt = {}) {
  auto rec = solve_g<T>(k, p, opt);
  rec.p_core = is_p_core<T>(k, p, opt);
  return rec;
}

template <class T>
struct GrayDegreeReport {
  T g;
  T max_residual;
  std::vector<T> residuals;  // per vertex
};

/// For p-core K and p in (0,1/2]: mu(u) = g/p on white vertices and
/// d_G(u) = (p-g)/p + ((1-2p)/p) mu(u) on black vertices.
template <class T>
GrayDegreeReport<T> gray_degree_identity_check(const Crg& k, const T& p, const SolveOptions& opt = {}) {
  if (!(p > 0) || p > T(1) / 2) throw DomainError("gray degree identity needs p in (0,1/2]");
  if (!is_p_core<T>(k, p, opt)) throw PreconditionError("gray degree identity needs a p-core CRG");
  auto rec = solve_g<T>(k, p, opt);
  const auto& mu = rec.minimizer.weights;
  GrayDegreeReport<T> out{rec.g, T(0), {}};
  for (std::size_t u = 0; u < k.size(); ++u) {
    T r;
    if (k.is_white(u)) {
      r = Arith<T>::abs(T(mu[u] - rec.g / p));
    } else {
      T d = T(0);
      for (std::size_t v = 0; v < k.size(); ++v)
        if (v != u && k.edge(u, v) == EdgeColor::Gray) d += mu[v];
      T rhs = (p - rec.g) / p + ((1 - 2 * p) / p) * mu[u];
      r = Arith<T>::abs(T(d - rhs));
    }
    if (r > out.max_residual) out.max_residual = r;
    out.residuals.push_back(r);
  }
  return out;
}

template <class T>
struct GrayReplaceReport {
  T before;
  T after;
  bool strict_decrease;
};

/// Recolours the non-gray edge xy of a p-core K gray and compares g before and after.
template <class T>
GrayReplaceReport<T> gray_replace_check(const Crg& k, const T& p, std::pair<std::size_t, std::size_t> edge, const SolveOptions& opt = {}) {
  auto [x, y] = edge;
  if (x == y || x >= k.size() || y >= k.size()) throw DomainError("invalid edge");
  if (k.edge(x, y) == EdgeColor::Gray) throw PreconditionError("edge is already gray");
  if (!is_p_core<T>(k, p, opt)) throw PreconditionError("gray replacement needs a p-core CRG");
  Crg l = k;
  l.set_edge(x, y, EdgeColor::Gray);
  GrayReplaceReport<T> r{solve_g<T>(k, p, opt).g, solve_g<T>(l, p, opt).g, false};
  if constexpr (Arith<T>::exact) r.strict_decrease = r.after < r.before;
  else r.strict_decrease = r.after < r.before - tol::kValue;
  return r;
}

/// |1/g_{K (+) L} - 1/g_K - 1/g_L|.
template <class T>
T join_identity_check(const Crg& k, const Crg& l, const T& p, const SolveOptions& opt = {}) {
  if (!(p > 0) || !(p < 1)) throw DomainError("join identity needs p in (0,1)");
  T gk = solve_g<T>(k, p, opt).g;
  T gl = solve_g<T>(l, p, opt).g;
  T gj = solve_g<T>(gray_join(k, l), p, opt).g;
  return Arith<T>::abs(T(T(1) / gj - T(1) / gk - T(1) / gl));
}

template <class T>
nlohmann::json scalar_json(const T& v) {
  if constexpr (Arith<T>::exact) return v.get_str();
  else return v;
}

template <class T>
nlohmann::json to_json(const GRecord<T>& rec) {
  nlohmann::json j;
  j["g"] = scalar_json(rec.g);
  j["minimizer"] = nlohmann::json::array();
  for (const auto& w : rec.minimizer.weights) j["minimizer"].push_back(scalar_json(w));
  j["support"] = rec.support;
  j["unique"] = rec.unique;
  j["full_support"] = rec.full_support;
  j["p_core"] = rec.p_core ? nlohmann::json(*rec.p_core) : nlohmann::json(nullptr);
  j["mode"] = rec.mode();
  j["minimizer_count"] = rec.minimizer_count;
  j["route"] = rec.route;
  return j;
}

}  // namespace edfn
