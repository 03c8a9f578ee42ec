#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "edfn/error.hpp"

namespace edfn {

using Rational = mpq_class;

/// Numeric tolerances used in float mode.
namespace tol {
inline constexpr double kValue = 1e-10;        // absolute tolerance on g
inline constexpr double kSameMass = 1e-8;      // infinity-norm distance of "the same" minimizer
inline constexpr double kFeasible = 1e-12;     // allowed negativity of a stationary mass
inline constexpr double kPivot = 1e-12;        // relative pivot threshold for "singular"
inline constexpr double kSumToOne = 1e-12;     // probability mass normalization
}  // namespace tol

/// Parses "num/den" or an integer literal into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational", 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && (i == 0 || text[i - 1] == '/'));
    if (!ok) throw ParseError("invalid character in rational '" + std::string(text) + "'", i);
  }
  auto slash = text.find('/');
  if (slash != std::string_view::npos && text.find('/', slash + 1) != std::string_view::npos)
    throw ParseError("more than one '/' in rational", text.find('/', slash + 1));
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'", 0);
  if (slash != std::string_view::npos && q.get_den() == 0) throw ParseError("zero denominator", slash + 1);
  q.canonicalize();
  return q;
}

/// num/den in lowest terms.
inline Rational ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "num/den" (or "num" when the denominator is 1).
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Shortest round-tripping decimal for a double (17 significant digits).
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// A probability in [0,1], optionally carrying an exact rational value.
class PValue {
 public:
  PValue() = default;

  static PValue rational(Rational q) {
    q.canonicalize();
    if (q < 0 || q > 1) throw DomainError("p = " + q.get_str() + " is outside [0,1]");
    PValue p;
    p.approx_ = q.get_d();
    p.exact_ = std::move(q);
    return p;
  }
  static PValue rational(long num, long den) { return rational(ratio(num, den)); }

  static PValue real(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("p = " + format_double(x) + " is outside [0,1]");
    PValue p;
    p.approx_ = x;
    return p;
  }

  /// "num/den" parses as rational; decimals parse as floats.
  static PValue parse(std::string_view text) {
    bool decimal = text.find_first_of(".eE") != std::string_view::npos;
    if (!decimal) return rational(parse_rational(text));
    std::string s(text);
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ParseError("malformed probability '" + s + "'", 0);
    return real(x);
  }

  bool is_rational() const noexcept { return exact_.has_value(); }
  const Rational& exact() const {
    if (!exact_) throw DomainError("exact mode requires a rational p, got " + format_double(approx_));
    return *exact_;
  }
  double value() const noexcept { return approx_; }

  std::string str() const { return exact_ ? exact_->get_str() : format_double(approx_); }

  friend PValue midpoint(const PValue& a, const PValue& b) {
    if (a.is_rational() && b.is_rational()) return rational((a.exact() + b.exact()) / 2);
    return real(0.5 * (a.value() + b.value()));
  }
  friend PValue complement(const PValue& a) {
    if (a.is_rational()) return rational(1 - a.exact());
    return real(1.0 - a.value());
  }

 private:
  std::optional<Rational> exact_;
  double approx_ = 0.0;
};

/// Scalar policy shared by the templated algorithms (double = float mode, Rational = exact mode).
template <class T>
struct Arith;

template <>
struct Arith<double> {
  static constexpr bool exact = false;
  static double from(const PValue& p) { return p.value(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static bool near(double a, double b, double eps = tol::kValue) { return std::fabs(a - b) <= eps; }
  static bool positive(double x, double eps = tol::kFeasible) { return x > eps; }
  static std::string str(double x) { return format_double(x); }
};

template <>
struct Arith<Rational> {
  static constexpr bool exact = true;
  static Rational from(const PValue& p) { return p.exact(); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static bool near(const Rational& a, const Rational& b, double = 0.0) { return a == b; }
  static bool positive(const Rational& x, double = 0.0) { return sgn(x) > 0; }
  static std::string str(const Rational& x) { return x.get_str(); }
};

}  // namespace edfn
