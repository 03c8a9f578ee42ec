#pragma once

#include <vector>

#include "edfn/colored_graph.hpp"
#include "edfn/solver.hpp"
#include "json.hpp"

namespace edfn {

template <class T>
struct BlowupRow {
  std::size_t n;
  std::size_t vertices;  // |K[mu, n]|
  T delta;               // Delta_p(K[mu, n])
  T normalized;          // delta / vertices
  T error;               // |normalized - g|
  T scaled_error;        // n * error
};

template <class T>
struct BlowupTable {
  T g;
  ProbMass<T> mu;
  std::vector<BlowupRow<T>> rows;
  /// error(n_i) / error(n_{i+1}) for consecutive rows with nonzero errors.
  std::vector<double> error_ratios;
};

/// Delta_p(K[mu, n]) / |K[mu, n]| against g_K(p), with mu the minimizer of the p-core K.
/// Blow-ups stay compressed, so n may be large.
template <class T>
BlowupTable<T> blowup_degree_table(const Crg& k, const T& p, const std::vector<std::size_t>& ns, const SolveOptions& opt = {}) {
  if (!(p > 0) || !(p < 1)) throw DomainError("blow-up table needs p in (0,1)");
  if (!is_p_core<T>(k, p, opt)) throw PreconditionError("blow-up table needs a p-core CRG");
  auto rec = solve_g<T>(k, p, opt);
  BlowupTable<T> t{rec.g, rec.minimizer, {}, {}};
  for (std::size_t n : ns) {
    ColoredGraph g = blowup_mass(k, rec.minimizer, n);
    if (g.size() == 0) throw DomainError("blow-up at n = " + std::to_string(n) + " is empty");
    T delta = max_p_degree(g, p);
    T norm = delta / T(static_cast<long>(g.size()));
    T err = Arith<T>::abs(T(norm - rec.g));
    t.rows.push_back({n, g.size(), delta, norm, err, err * T(static_cast<long>(n))});
  }
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    double a = Arith<T>::to_double(t.rows[i].error), b = Arith<T>::to_double(t.rows[i + 1].error);
    if (b > 0) t.error_ratios.push_back(a / b);
  }
  return t;
}

template <class T>
nlohmann::json to_json(const BlowupTable<T>& t) {
  nlohmann::json j;
  j["g"] = scalar_json(t.g);
  j["mu"] = nlohmann::json::array();
  for (const auto& w : t.mu.weights) j["mu"].push_back(scalar_json(w));
  j["rows"] = nlohmann::json::array();
  for (const auto& r : t.rows)
    j["rows"].push_back({{"n", r.n},
                         {"vertices", r.vertices},
                         {"delta", scalar_json(r.delta)},
                         {"normalized", scalar_json(r.normalized)},
                         {"error", scalar_json(r.error)},
                         {"n_times_error", scalar_json(r.scaled_error)}});
  j["error_ratios"] = nlohmann::json::array();
  for (double x : t.error_ratios) j["error_ratios"].push_back(format_double(x));
  return j;
}

}  // namespace edfn
