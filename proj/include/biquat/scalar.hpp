// Scalar backends: exact rationals (GMP) and IEEE doubles.
//
// The algebra core is generic over the scalar type. Exact mode is only
// meaningful for rational parameters; floating mode is required by the
// trigonometric machinery in the period-domain layer.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace biquat {

using Rational = mpq_class;

// Thrown on malformed inputs and violated preconditions (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical result is inconsistent with the algebraic
// constraints it must satisfy (CLI exit code 3).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x, double /*tol*/) { return sgn(x) == 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
};

inline int sign_of(double x, double tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

inline int sign_of(const Rational& x, double /*tol*/ = 0.0) { return sgn(x); }

// Exact square root of a non-negative rational, when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

// Accepts "p/q" and plain integer or decimal strings.
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      Rational r(text, 10);
      r.canonicalize();
      return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      Rational r(text, 10);
      r.canonicalize();
      return r;
    }
    // Decimal literal: scale by a power of ten.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0) throw std::invalid_argument(text);
    std::string den = "1" + std::string(frac_len, '0');
    Rational r(digits + "/" + den, 10);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ValidationError("not a rational number: '" + text + "'");
  }
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace biquat
