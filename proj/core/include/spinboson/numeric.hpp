#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace spinboson {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);
BigInt to_bigint(__int128 value);

/// r^e for any integer e (r != 0 when e < 0).
Rational power(const Rational& base, int exponent);

/// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& value);

/// Fixed-point rendering with `digits` places after the decimal point,
/// rounding half to even.
std::string to_decimal(const Rational& value, int digits);

/// Accepts integers, decimals ("-1.25", "3e-2") and fractions ("3/4").
Rational parse_rational(std::string_view text);

/// Sets the default mpfr working precision for its lifetime.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits10);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// Exact complex number with rational real and imaginary parts.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT(implicit)
  GaussRational(long long re) : re_(re) {}            // NOLINT(implicit)
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);
  GaussRational operator-() const { return {-re_, -im_}; }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// "a", "a+bi", "a-bi", "bi" with rational parts rendered by to_string.
std::string to_string(const GaussRational& value);
/// Inverse of to_string(GaussRational).
GaussRational parse_gauss_rational(std::string_view text);
std::ostream& operator<<(std::ostream& os, const GaussRational& value);

/// Univariate polynomial with rational coefficients; coeffs[k] multiplies u^k.
/// Trailing zero coefficients are trimmed.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  static RationalPolynomial monomial(unsigned degree, Rational coeff = 1);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of u^k (zero beyond the degree).
  Rational coefficient(unsigned k) const;
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& u) const;
  double operator()(double u) const;
  RationalPolynomial derivative() const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& s);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

std::string to_string(const RationalPolynomial& p, std::string_view var = "u");

/// coefficient * sqrt(radicand), radicand a positive square-free integer
/// (1 for rational values).
struct QuadraticSurd {
  Rational coefficient{0};
  BigInt radicand{1};

  /// Builds c * sqrt(r) for rational r >= 0 and normalizes the radicand.
  static QuadraticSurd make(const Rational& c, const Rational& r);

  double to_double() const;
  Real to_real() const;
  bool is_rational() const { return radicand == 1 || coefficient == 0; }
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

std::string to_string(const QuadraticSurd& s);

}  // namespace spinboson
