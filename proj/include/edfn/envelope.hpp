#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edfn/enumerate.hpp"
#include "edfn/family.hpp"
#include "edfn/parallel.hpp"
#include "edfn/solver.hpp"
#include "json.hpp"

namespace edfn {

struct EnvelopeOptions {
  SolveOptions solve;
  std::size_t threads = 0;
  /// Bisection width for changepoints; 0 disables refinement.
  double changepoint_width = 1e-6;
};

/// Pointwise minimum of g_K(p) over a catalog.
template <class T>
struct EnvelopeCurve {
  std::vector<T> grid;
  std::vector<T> value;
  /// Ids attaining the minimum at each grid point, ordered by canonical key.
  std::vector<std::vector<std::string>> attainers;
  std::vector<double> changepoints;
  std::string property_hash;
  Side side = Side::ZeroCore;
  std::size_t max_white = 0, max_black = 0;
  /// False when the catalog window is not certified complete for the quantity being computed.
  bool window_complete = false;
};

/// 1024 uniform points on (0, 1/2]: i/2048.
template <class T>
std::vector<T> default_grid(std::size_t points = 1024) {
  std::vector<T> g;
  for (std::size_t i = 1; i <= points; ++i) {
    if constexpr (Arith<T>::exact) g.push_back(ratio(static_cast<long>(i), static_cast<long>(2 * points)));
    else g.push_back(static_cast<double>(i) / static_cast<double>(2 * points));
  }
  return g;
}

namespace detail {

template <class T>
struct PointMin {
  T value;
  std::vector<std::size_t> who;  // catalog indices
};

template <class T>
PointMin<T> envelope_point(const Catalog& cat, const T& p, const SolveOptions& opt) {
  PointMin<T> out;
  std::vector<T> vals;
  vals.reserve(cat.entries.size());
  for (const auto& e : cat.entries) vals.push_back(solve_g<T>(e.crg, p, opt).g);
  out.value = *std::min_element(vals.begin(), vals.end());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    bool tie;
    if constexpr (Arith<T>::exact) tie = vals[i] == out.value;
    else tie = vals[i] <= out.value + tol::kValue;
    if (tie) out.who.push_back(i);
  }
  std::stable_sort(out.who.begin(), out.who.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(cat.entries[a].canonical_key, cat.entries[a].id) < std::tie(cat.entries[b].canonical_key, cat.entries[b].id);
  });
  return out;
}

}  // namespace detail

template <class T>
EnvelopeCurve<T> envelope(const Catalog& cat, const std::vector<T>& grid, const EnvelopeOptions& opt = {}) {
  if (cat.empty()) throw DomainError("envelope of an empty catalog");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || !(grid[i] < 1)) throw DomainError("envelope grid must lie in (0,1)");
    if (i > 0 && !(grid[i - 1] < grid[i])) throw DomainError("envelope grid must be strictly increasing");
  }
  EnvelopeCurve<T> c;
  c.grid = grid;
  c.property_hash = cat.property_hash;
  c.side = cat.side;
  c.max_white = cat.max_white;
  c.max_black = cat.max_black;
  std::vector<detail::PointMin<T>> pts(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { pts[i] = detail::envelope_point<T>(cat, grid[i], opt.solve); }, opt.threads);
  for (auto& pt : pts) {
    c.value.push_back(pt.value);
    std::vector<std::string> ids;
    for (auto i : pt.who) ids.push_back(cat.entries[i].id);
    c.attainers.push_back(std::move(ids));
  }
  if (opt.changepoint_width > 0) {
    std::vector<std::optional<double>> cps(grid.size());
    parallel_for(
        grid.size() > 0 ? grid.size() - 1 : 0,
        [&](std::size_t i) {
          if (pts[i].who == pts[i + 1].who) return;
          double lo = Arith<T>::to_double(grid[i]), hi = Arith<T>::to_double(grid[i + 1]);
          const auto& left = pts[i].who;
          while (hi - lo > opt.changepoint_width) {
            double mid = 0.5 * (lo + hi);
            if (detail::envelope_point<double>(cat, mid, opt.solve).who == left) lo = mid;
            else hi = mid;
          }
          cps[i] = 0.5 * (lo + hi);
        },
        opt.threads);
    for (auto& cp : cps)
      if (cp) c.changepoints.push_back(*cp);
  }
  return c;
}

/// Largest violation of midpoint concavity along the grid (<= 0 means concave).
template <class T>
double concavity_violation(const EnvelopeCurve<T>& c) {
  double worst = -1.0;
  for (std::size_t i = 1; i + 1 < c.grid.size(); ++i) {
    double x0 = Arith<T>::to_double(c.grid[i - 1]), x1 = Arith<T>::to_double(c.grid[i]), x2 = Arith<T>::to_double(c.grid[i + 1]);
    double y0 = Arith<T>::to_double(c.value[i - 1]), y1 = Arith<T>::to_double(c.value[i]), y2 = Arith<T>::to_double(c.value[i + 1]);
    double chord = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0);
    worst = std::max(worst, chord - y1);
  }
  return worst;
}

template <class T>
bool is_concave(const EnvelopeCurve<T>& c, double tol = 1e-9) {
  return concavity_violation(c) <= tol;
}

// ---- output --------------------------------------------------------------

/// CSV with `p,value,attainer_ids`; the leading comment lines carry the spec hash and bounds.
template <class T>
std::string to_csv(const EnvelopeCurve<T>& c) {
  std::ostringstream out;
  out << "# property_hash=" << c.property_hash << " side=" << to_string(c.side) << " max_white=" << c.max_white
      << " max_black=" << c.max_black << "\n";
  out << "p,value,attainer_ids\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    out << format_double(Arith<T>::to_double(c.grid[i])) << "," << format_double(Arith<T>::to_double(c.value[i])) << ",";
    for (std::size_t j = 0; j < c.attainers[i].size(); ++j) out << (j ? ";" : "") << c.attainers[i][j];
    out << "\n";
  }
  return out.str();
}

template <class T>
nlohmann::json to_json(const EnvelopeCurve<T>& c) {
  nlohmann::json j;
  j["property_hash"] = c.property_hash;
  j["side"] = to_string(c.side);
  j["bounds"] = {{"max_white", c.max_white}, {"max_black", c.max_black}};
  j["window_complete"] = c.window_complete;
  j["mode"] = Arith<T>::exact ? "exact" : "float";
  j["points"] = nlohmann::json::array();
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    nlohmann::json pt;
    pt["p"] = format_double(Arith<T>::to_double(c.grid[i]));
    pt["value"] = format_double(Arith<T>::to_double(c.value[i]));
    if constexpr (Arith<T>::exact) {
      pt["p_exact"] = c.grid[i].get_str();
      pt["value_exact"] = c.value[i].get_str();
    }
    pt["attainers"] = c.attainers[i];
    j["points"].push_back(pt);
  }
  j["changepoints"] = nlohmann::json::array();
  for (double cp : c.changepoints) j["changepoints"].push_back(format_double(cp));
  return j;
}

// ---- q curve -------------------------------------------------------------

/// The 0-core window with exactly chi(F)-1 white vertices. The black bound grows until a slice
/// has no F-free CRG; since every 0-core CRG with one more black vertex contains such a slice
/// member, that certifies the window is complete.
struct QCatalog {
  Catalog catalog;
  bool complete = false;
  std::size_t whites = 0;
};

inline QCatalog q_catalog(const FamilySpec& spec, const EnumerateOptions& opt = {}) {
  spec.validate();
  if (has_anti_clique(spec)) throw DomainError("q curve: the family contains an anti-clique");
  const std::size_t chi = family_chi(spec);
  if (chi < 2) throw DomainError("q curve needs chi(F) >= 2");
  QCatalog out;
  out.whites = chi - 1;
  if (out.whites > kCanonicalCap) throw SizeError("q curve: chi(F)-1 exceeds the enumeration cap");
  std::size_t b = 0;
  Catalog cat;
  while (true) {
    cat = cached_catalog(spec, out.whites, b, Side::ZeroCore, opt);
    bool slice_empty = std::none_of(cat.entries.begin(), cat.entries.end(), [&](const CatalogEntry& e) {
      return e.crg.white_count() == out.whites && e.crg.black_count() == b;
    });
    if (slice_empty && b > 0) {
      out.complete = true;
      break;
    }
    if (out.whites + b + 1 > kCanonicalCap) break;
    ++b;
  }
  Catalog slice = cat;
  slice.entries.clear();
  for (const auto& e : cat.entries)
    if (e.crg.white_count() == out.whites) slice.entries.push_back(e);
  out.catalog = std::move(slice);
  return out;
}

template <class T>
EnvelopeCurve<T> q_curve(const FamilySpec& spec, const std::vector<T>& grid, const EnvelopeOptions& opt = {}) {
  auto q = q_catalog(spec, {opt.threads});
  auto c = envelope<T>(q.catalog, grid, opt);
  c.window_complete = q.complete;
  return c;
}

// ---- path bounds ---------------------------------------------------------

template <class T>
struct PathboundReport {
  std::vector<std::size_t> lengths;
  T g;
  bool exceeds_quarter = false;
  std::vector<std::size_t> core_support;  // vertices of the 1/4-core sub-CRG
  bool core_verified = false;
  T identity_rhs;
  T identity_residual;
};

/// g at 1/4 of P_{n1} white-join ... white-join P_{nl}, and the identity
/// g = 1/4 + (1/4n) sum_{|NG(v)|=1} mu(v) + (1/2n) sum_{|NG(v)|=0} mu(v) on its 1/4-core sub-CRG.
template <class T>
PathboundReport<T> pathbound_check(const std::vector<std::size_t>& lengths, const SolveOptions& opt = {}) {
  const T quarter = Arith<T>::from_rational(Rational(1, 4));
  Crg k = make_path_forest(lengths);
  const std::size_t cap = Arith<T>::exact ? opt.exact_cap : opt.float_cap;
  if (k.size() > cap) throw SizeError("pathbound: total path length exceeds the solver cap");
  auto rec = solve_g<T>(k, quarter, opt);
  PathboundReport<T> r;
  r.lengths = lengths;
  r.g = rec.g;
  r.exceeds_quarter = rec.g > quarter;
  // Smallest-support minimizer: its support induces a 1/4-core sub-CRG.
  const ProbMass<T>* best = &rec.minimizers.front();
  for (const auto& m : rec.minimizers)
    if (m.support().size() < best->support().size()) best = &m;
  r.core_support = best->support();
  Crg core = k.induced(r.core_support);
  r.core_verified = is_p_core<T>(core, quarter, opt);
  auto sub = solve_g<T>(core, quarter, opt);
  const auto& mu = sub.minimizer.weights;
  const T n = T(static_cast<long>(core.size()));
  T s1 = T(0), s0 = T(0);
  for (std::size_t v = 0; v < core.size(); ++v) {
    std::size_t deg = 0;
    for (std::size_t u = 0; u < core.size(); ++u)
      if (u != v && core.edge(u, v) == EdgeColor::Gray) ++deg;
    if (deg == 1) s1 += mu[v];
    if (deg == 0) s0 += mu[v];
  }
  r.identity_rhs = quarter + s1 / (4 * n) + s0 / (2 * n);
  r.identity_residual = Arith<T>::abs(T(sub.g - r.identity_rhs));
  return r;
}

/// Every multiset of path lengths with total at most `total`, parts in nonincreasing order.
inline std::vector<std::vector<std::size_t>> path_compositions(std::size_t total) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto& self, std::size_t left, std::size_t max_part) -> void {
    if (!cur.empty()) out.push_back(cur);
    for (std::size_t part = std::min(left, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  rec(rec, total, total);
  return out;
}

template <class T>
struct PathUpperReport {
  std::size_t n;
  T g;
  T bound;
  bool holds;
};

/// g_{P_n}(p) <= p - (4p-1)/n + 4p/n^2.
template <class T>
PathUpperReport<T> path_upper_bound_check(std::size_t n, const T& p, const SolveOptions& opt = {}) {
  const T nn = T(static_cast<long>(n));
  T bound = p - (4 * p - 1) / nn + 4 * p / (nn * nn);
  T g = solve_g<T>(make_path_crg(n), p, opt).g;
  bool holds;
  if constexpr (Arith<T>::exact) holds = g <= bound;
  else holds = g <= bound + tol::kValue;
  return {n, g, bound, holds};
}

// ---- accumulation probe --------------------------------------------------

template <class T>
struct ProbeReport {
  T target;
  std::vector<T> approach;
  std::vector<T> value;
  std::vector<std::vector<std::string>> attainers;
  /// Fewest vertices among the attainers at each point (the path index for path catalogs).
  std::vector<std::size_t> attainer_size;
  bool stabilizes = false;
  bool size_monotone_toward_target = false;  // attainer size nondecreasing along the approach
  std::string label = "within cataloged window";
};

template <class T>
ProbeReport<T> accumulation_probe(const Catalog& cat, const T& target, const std::vector<T>& approach, const EnvelopeOptions& opt = {}) {
  if (cat.empty()) throw DomainError("accumulation probe on an empty catalog");
  for (std::size_t i = 1; i < approach.size(); ++i) {
    T d0 = Arith<T>::abs(T(approach[i - 1] - target)), d1 = Arith<T>::abs(T(approach[i] - target));
    if (d1 > d0) throw DomainError("approach sequence must move monotonically toward the target");
  }
  ProbeReport<T> r;
  r.target = target;
  r.approach = approach;
  std::vector<detail::PointMin<T>> pts(approach.size());
  parallel_for(approach.size(), [&](std::size_t i) { pts[i] = detail::envelope_point<T>(cat, approach[i], opt.solve); }, opt.threads);
  for (const auto& pt : pts) {
    r.value.push_back(pt.value);
    std::vector<std::string> ids;
    std::size_t smallest = SIZE_MAX;
    for (auto i : pt.who) {
      ids.push_back(cat.entries[i].id);
      smallest = std::min(smallest, cat.entries[i].crg.size());
    }
    r.attainers.push_back(std::move(ids));
    r.attainer_size.push_back(smallest);
  }
  r.stabilizes = std::all_of(r.attainers.begin(), r.attainers.end(), [&](const auto& a) { return a == r.attainers.front(); });
  r.size_monotone_toward_target = std::is_sorted(r.attainer_size.begin(), r.attainer_size.end());
  return r;
}

/// {K(1,0)} together with P_1 .. P_n, ids "K(1,0)" and "P_i".
inline Catalog path_catalog(std::size_t n, std::optional<FamilySpec> spec = std::nullopt) {
  std::vector<std::pair<std::string, Crg>> items = {{"K(1,0)", make_kwb(1, 0)}};
  for (std::size_t i = 1; i <= n; ++i) items.emplace_back("P_" + std::to_string(i), make_path_crg(i));
  return explicit_catalog(std::move(items), Side::ZeroCore, std::move(spec));
}

// ---- symmetry ------------------------------------------------------------

template <class T>
struct SymmetryReport {
  std::size_t entries = 0;
  bool catalogs_match = false;  // complement catalog is the entrywise complement
  T max_entry_residual;         // max |g_{complement K}(1-p) - g_K(p)|
  T max_envelope_residual;
};

/// The 0-core catalog of F against the 1-core catalog of the complemented family, evaluated at p
/// and 1-p respectively.
template <class T>
SymmetryReport<T> symmetry_check(const FamilySpec& spec, std::size_t max_white, std::size_t max_black, const std::vector<T>& grid,
                                 const EnvelopeOptions& opt = {}) {
  FamilySpec comp = complement_spec(spec);
  Catalog cat = cached_catalog(spec, max_white, max_black, Side::ZeroCore, {opt.threads});
  Catalog ccat = cached_catalog(comp, max_black, max_white, Side::OneCore, {opt.threads});
  SymmetryReport<T> r;
  r.entries = cat.size();
  r.max_entry_residual = T(0);
  r.max_envelope_residual = T(0);
  std::vector<std::string> keys, ckeys;
  for (const auto& e : cat.entries) keys.push_back(canonical_form(complement_crg(e.crg)));
  for (const auto& e : ccat.entries) ckeys.push_back(e.canonical_key);
  std::sort(keys.begin(), keys.end());
  std::sort(ckeys.begin(), ckeys.end());
  r.catalogs_match = keys == ckeys;
  for (const auto& p : grid) {
    T q = T(1) - p;
    for (const auto& e : cat.entries) {
      T d = Arith<T>::abs(T(solve_g<T>(complement_crg(e.crg), q, opt.solve).g - solve_g<T>(e.crg, p, opt.solve).g));
      if (d > r.max_entry_residual) r.max_entry_residual = d;
    }
    if (!cat.empty() && !ccat.empty()) {
      T d = Arith<T>::abs(T(detail::envelope_point<T>(cat, p, opt.solve).value - detail::envelope_point<T>(ccat, q, opt.solve).value));
      if (d > r.max_envelope_residual) r.max_envelope_residual = d;
    }
  }
  return r;
}

// ---- small p -------------------------------------------------------------

struct SlopeRow {
  double p;
  double envelope;
  double ratio;
  bool small_p_regime;
};

struct SlopeReport {
  std::size_t chi;
  double target;  // 1/(chi-1)
  std::vector<SlopeRow> rows;
  std::string note = "demonstration only: the slope statement is a limit and is not verified at finite p";
};

/// envelope(p)/p at each probe next to 1/(chi(F)-1). A probe counts as small when
/// p < 1/(N+1), N being the catalog's black bound.
inline SlopeReport slope_at_zero_demo(const FamilySpec& spec, const std::vector<double>& probes, std::size_t max_white,
                                      std::size_t max_black, const EnvelopeOptions& opt = {}) {
  if (has_anti_clique(spec)) throw DomainError("slope demo: the family contains an anti-clique");
  const std::size_t chi = family_chi(spec);
  if (chi < 2) throw DomainError("slope demo needs chi(F) >= 2");
  Catalog cat = cached_catalog(spec, max_white, max_black, Side::ZeroCore, {opt.threads});
  SlopeReport r{chi, 1.0 / static_cast<double>(chi - 1), {}};
  for (double p : probes) {
    if (!(p > 0) || !(p < 1)) throw DomainError("slope demo probes must lie in (0,1)");
    double v = detail::envelope_point<double>(cat, p, opt.solve).value;
    r.rows.push_back({p, v, v / p, p < 1.0 / static_cast<double>(cat.max_black + 1)});
  }
  return r;
}

/// p/(chi(F)-1) = g_{K(chi-1,0)}(p). With a catalog, also checks the envelope does not exceed it.
template <class T>
T ed_upper_bound_chi(const FamilySpec& spec, const T& p, const Catalog* cat = nullptr, const SolveOptions& opt = {}) {
  if (has_anti_clique(spec)) throw DomainError("chi bound: the family contains an anti-clique");
  const std::size_t chi = family_chi(spec);
  if (chi < 2) throw DomainError("chi bound needs chi(F) >= 2");
  T bound = p / T(static_cast<long>(chi - 1));
  if (cat && !cat->empty()) {
    T env = detail::envelope_point<T>(*cat, p, opt).value;
    bool ok;
    if constexpr (Arith<T>::exact) ok = env <= bound;
    else ok = env <= bound + tol::kValue;
    if (!ok) throw InconsistencyError("envelope exceeds p/(chi-1)");
  }
  return bound;
}

}  // namespace edfn
