#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edfn/colored_graph.hpp"
#include "edfn/crg.hpp"
#include "edfn/linalg.hpp"
#include "edfn/rational.hpp"

namespace edfn {

/// M_K(p): p on white vertices/edges, 1-p on black ones, 0 on gray edges.
template <class T>
struct MMatrix {
  std::size_t k = 0;
  std::vector<T> a;

  const T& operator()(std::size_t x, std::size_t y) const { return a[x * k + y]; }
  T& operator()(std::size_t x, std::size_t y) { return a[x * k + y]; }
  friend bool operator==(const MMatrix&, const MMatrix&) = default;
};

template <class T>
MMatrix<T> build_matrix(const Crg& k, const T& p) {
  MMatrix<T> m{k.size(), std::vector<T>(k.size() * k.size())};
  const T q = T(1) - p;
  for (std::size_t x = 0; x < k.size(); ++x) {
    m(x, x) = k.is_white(x) ? p : q;
    for (std::size_t y = x + 1; y < k.size(); ++y) {
      EdgeColor c = k.edge(x, y);
      T v = c == EdgeColor::White ? p : c == EdgeColor::Black ? q : T(0);
      m(x, y) = v;
      m(y, x) = v;
    }
  }
  return m;
}

template <class T>
MMatrix<T> build_matrix(const Crg& k, const PValue& p) {
  return build_matrix<T>(k, Arith<T>::from(p));
}

/// <mu, M mu>.
template <class T>
T quad_form(const MMatrix<T>& m, const std::vector<T>& mu) {
  T s = T(0);
  for (std::size_t x = 0; x < m.k; ++x) {
    if (mu[x] == 0) continue;
    T row = T(0);
    for (std::size_t y = 0; y < m.k; ++y) row += m(x, y) * mu[y];
    s += mu[x] * row;
  }
  return s;
}

/// A stationary point of <mu,M mu> on the face spanned by `support`: M_S mu_S = lambda 1, sum mu_S = 1.
template <class T>
struct Stationary {
  std::vector<T> mu;  // restricted to the support, same order
  T lambda;
};

/// Solves the bordered system for a support. `ill` reports a near-singular float system.
template <class T>
std::optional<Stationary<T>> stationary_point(const MMatrix<T>& m, const std::vector<std::size_t>& support, bool* ill = nullptr) {
  const std::size_t s = support.size();
  const std::size_t n = s + 1;
  std::vector<T> a(n * n, T(0)), b(n, T(0));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) a[i * n + j] = m(support[i], support[j]);
    a[i * n + s] = T(-1);
    a[s * n + i] = T(1);
  }
  b[s] = T(1);
  auto r = gauss_solve(a, b, n);
  if (ill) *ill = r.ill_conditioned;
  if (!r.x) return std::nullopt;
  Stationary<T> st;
  st.lambda = (*r.x)[s];
  st.mu.assign(r.x->begin(), r.x->begin() + static_cast<std::ptrdiff_t>(s));
  return st;
}

/// Result of evaluating g_K(p).
template <class T>
struct GRecord {
  T g;
  ProbMass<T> minimizer;
  std::vector<std::size_t> support;
  bool unique = true;
  bool full_support = false;
  std::optional<bool> p_core;
  /// Distinct minimizers found (the first is `minimizer`); may be truncated, see minimizer_count.
  std::vector<ProbMass<T>> minimizers;
  std::size_t minimizer_count = 1;
  std::string route;

  static constexpr bool exact = Arith<T>::exact;
  std::string mode() const { return exact ? "exact" : "float"; }
};

}  // namespace edfn
