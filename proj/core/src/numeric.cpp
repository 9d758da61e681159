#include "spinboson/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include "spinboson/errors.hpp"

namespace spinboson {

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  if (k > n) return out;
  mpz_bin_uiui(out.backend().data(), n, k);
  return out;
}

BigInt factorial(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.backend().data(), n);
  return out;
}

BigInt to_bigint(__int128 value) {
  const bool negative = value < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(value)
                                   : static_cast<unsigned __int128>(value);
  BigInt out = BigInt(static_cast<std::uint64_t>(mag >> 64));
  out <<= 64;
  out += BigInt(static_cast<std::uint64_t>(mag));
  return negative ? BigInt(-out) : out;
}

Rational power(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("power: zero to a negative exponent");
    return power(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  auto e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

std::string to_string(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) throw DomainError("to_decimal: negative digit count");
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  Rational scaled = value * scale;
  BigInt num = numerator(scaled);
  const BigInt den = denominator(scaled);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt q = num / den;
  const BigInt twice_r = 2 * (num % den);
  if (twice_r > den || (twice_r == den && (q % 2) == 1)) q += 1;

  std::string digits_str = q.str();
  if (digits > 0) {
    if (static_cast<int>(digits_str.size()) <= digits) {
      digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
    }
    digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && q != 0) digits_str.insert(0, "-");
  return digits_str;
}

namespace {

Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string int_digits;
  std::string frac_digits;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    int_digits += text[pos++];
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      frac_digits += text[pos++];
    }
  }
  if (int_digits.empty() && frac_digits.empty()) {
    throw DomainError("invalid number '" + std::string(whole) + "'");
  }
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_str;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) exp_str += text[pos++];
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exp_str += text[pos++];
    }
    if (exp_str.empty() || exp_str == "+" || exp_str == "-") {
      throw DomainError("invalid exponent in '" + std::string(whole) + "'");
    }
    exponent = std::stol(exp_str);
  }
  if (pos != text.size()) throw DomainError("invalid number '" + std::string(whole) + "'");

  // A leading zero would make the BigInt string constructor read octal.
  std::string all = int_digits + frac_digits;
  all.erase(0, std::min(all.find_first_not_of('0'), all.size()));
  BigInt mantissa(all.empty() ? "0" : all);
  Rational value(mantissa);
  exponent -= static_cast<long>(frac_digits.size());
  value *= power(Rational(10), static_cast<int>(exponent));
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw DomainError("empty number");
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(t.substr(0, slash)), t);
    Rational den = parse_decimal(trim(t.substr(slash + 1)), t);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(t) + "'");
    return num / den;
  }
  return parse_decimal(t, t);
}

PrecisionGuard::PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

// GaussRational

std::complex<double> GaussRational::to_complex() const {
  return {re_.convert_to<double>(), im_.convert_to<double>()};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (im_ == 0 && o.im_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const GaussRational& value) {
  if (value.is_real()) return to_string(value.real());
  if (value.real() == 0) return to_string(value.imag()) + "i";
  const bool neg = value.imag() < 0;
  return to_string(value.real()) + (neg ? "-" : "+") +
         to_string(neg ? Rational(-value.imag()) : value.imag()) + "i";
}

GaussRational parse_gauss_rational(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw DomainError("empty number");
  if (t.back() != 'i') return GaussRational(parse_rational(t));
  const std::string_view body = t.substr(0, t.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view s) {
    if (s.empty() || s == "+") return Rational(1);
    if (s == "-") return Rational(-1);
    return parse_rational(s);
  };
  if (split == std::string_view::npos) return {Rational(0), imag_of(body)};
  return {parse_rational(body.substr(0, split)), imag_of(body.substr(split))};
}

std::ostream& operator<<(std::ostream& os, const GaussRational& value) {
  return os << to_string(value);
}

// RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(unsigned degree, Rational coeff) {
  std::vector<Rational> c(degree + 1, Rational(0));
  c[degree] = std::move(coeff);
  return RationalPolynomial(std::move(c));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coefficient(unsigned k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational RationalPolynomial::operator()(const Rational& u) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double RationalPolynomial::operator()(double u) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * u + it->convert_to<double>();
  }
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * o.coeffs_[b];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

std::string to_string(const RationalPolynomial& p, std::string_view var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (k == 0 || mag != 1) out += to_string(mag);
    if (k > 0) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

// QuadraticSurd

QuadraticSurd QuadraticSurd::make(const Rational& c, const Rational& r) {
  if (r < 0) throw DomainError("square root of a negative number");
  QuadraticSurd out;
  if (c == 0 || r == 0) return out;
  // sqrt(p/q) = sqrt(p*q)/q
  const BigInt q = denominator(r);
  BigInt n = numerator(r) * q;
  Rational coeff = c / Rational(q);
  BigInt extracted = 1;
  for (unsigned long f = 2; f <= 100000 && BigInt(f) * f <= n; ++f) {
    const BigInt f2 = BigInt(f) * f;
    while (n % f2 == 0) {
      n /= f2;
      extracted *= f;
    }
  }
  if (n > 1 && mpz_perfect_square_p(n.backend().data()) != 0) {
    extracted *= boost::multiprecision::sqrt(n);
    n = 1;
  }
  out.coefficient = coeff * Rational(extracted);
  out.radicand = n;
  return out;
}

double QuadraticSurd::to_double() const {
  return coefficient.convert_to<double>() * std::sqrt(radicand.convert_to<double>());
}

Real QuadraticSurd::to_real() const {
  return Real(coefficient) * boost::multiprecision::sqrt(Real(radicand));
}

std::string to_string(const QuadraticSurd& s) {
  if (s.is_rational()) return to_string(s.coefficient);
  return to_string(s.coefficient) + "*sqrt(" + s.radicand.str() + ")";
}

}  // namespace spinboson
