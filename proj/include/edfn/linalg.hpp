#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "edfn/rational.hpp"

namespace edfn {

/// Outcome of a dense solve. `ill_conditioned` is only ever set in float mode.
template <class T>
struct SolveResult {
  std::optional<std::vector<T>> x;
  bool ill_conditioned = false;
};

/// Solves A x = b in place (A is n x n row-major). Partial pivoting in float mode, first
/// nonzero pivot in exact mode. Returns nullopt x when A is singular.
template <class T>
SolveResult<T> gauss_solve(std::vector<T>& a, std::vector<T>& b, std::size_t n) {
  SolveResult<T> out;
  double scale = 0.0;
  if constexpr (!Arith<T>::exact) {
    for (const auto& v : a) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return out;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    if constexpr (Arith<T>::exact) {
      for (std::size_t r = col; r < n; ++r)
        if (sgn(a[r * n + col]) != 0) {
          piv = r;
          break;
        }
      if (piv == n) return out;
    } else {
      double best = -1.0;
      for (std::size_t r = col; r < n; ++r) {
        double v = std::fabs(a[r * n + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best <= tol::kPivot * scale) {
        out.ill_conditioned = true;
        return out;
      }
      if (best <= 1e-9 * scale) out.ill_conditioned = true;
    }
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if constexpr (Arith<T>::exact) {
        if (sgn(a[r * n + col]) == 0) continue;
      } else {
        if (a[r * n + col] == 0.0) continue;
      }
      T f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  out.x = std::move(x);
  return out;
}

}  // namespace edfn
