#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinboson/numeric.hpp"

namespace spinboson {

/// (m, n): power of z* (or a-dagger) and power of z (or a).
using PowerPair = std::pair<unsigned, unsigned>;
using BosonTermMap = std::map<PowerPair, GaussRational>;

/// Commuting polynomial in (z*, z); the classical symbol of a single-mode
/// operator. No zero coefficients are stored.
class BosonSymbol {
 public:
  BosonSymbol() = default;

  static BosonSymbol constant(const GaussRational& c);
  static BosonSymbol monomial(unsigned m, unsigned n, const GaussRational& c = GaussRational(1));
  static BosonSymbol z_conj() { return monomial(1, 0); }
  static BosonSymbol z() { return monomial(0, 1); }

  const BosonTermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  GaussRational coefficient(unsigned m, unsigned n) const;
  void add_term(unsigned m, unsigned n, const GaussRational& c);

  BosonSymbol pow(unsigned exponent) const;

  BosonSymbol& operator+=(const BosonSymbol& o);
  BosonSymbol& operator-=(const BosonSymbol& o);
  BosonSymbol& operator*=(const BosonSymbol& o);
  BosonSymbol& operator*=(const GaussRational& s);
  friend BosonSymbol operator+(BosonSymbol a, const BosonSymbol& b) { return a += b; }
  friend BosonSymbol operator-(BosonSymbol a, const BosonSymbol& b) { return a -= b; }
  friend BosonSymbol operator*(BosonSymbol a, const BosonSymbol& b) { return a *= b; }
  friend BosonSymbol operator*(BosonSymbol a, const GaussRational& s) { return a *= s; }
  friend bool operator==(const BosonSymbol&, const BosonSymbol&) = default;

 private:
  BosonTermMap terms_;
};

/// sum c_{mn} (a^dagger)^m a^n.
class NormalForm {
 public:
  NormalForm() = default;

  static NormalForm identity() { return monomial(0, 0); }
  static NormalForm monomial(unsigned m, unsigned n, const GaussRational& c = GaussRational(1));

  const BosonTermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  GaussRational coefficient(unsigned m, unsigned n) const;
  void add_term(unsigned m, unsigned n, const GaussRational& c);

  /// (m, n) -> (n, m) with conjugated coefficients.
  NormalForm adjoint() const;

  NormalForm& operator+=(const NormalForm& o);
  NormalForm& operator*=(const GaussRational& s);
  friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
  friend NormalForm operator*(NormalForm a, const GaussRational& s) { return a *= s; }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  BosonTermMap terms_;
};

/// Text form "c ad^m a^n + ..." (zero powers omitted, "0" for the empty form).
std::string to_string(const NormalForm& form);
std::string to_string(const BosonSymbol& sym);

/// JSON object keyed by "m,n" with coefficient strings ("1/2", "3-1/4i").
std::string to_json(const NormalForm& form);
std::string to_json(const BosonSymbol& sym);
NormalForm normal_form_from_json(const std::string& json);
BosonSymbol boson_symbol_from_json(const std::string& json);

/// Re-types the commuting symbol as an operator with every a^dagger to the
/// left of every a, coefficients unchanged.
NormalForm normal_order_symbol(const BosonSymbol& sym);

enum class BosonLetter : unsigned char { Create, Annihilate };

class OperatorWord {
 public:
  OperatorWord() = default;
  explicit OperatorWord(std::vector<BosonLetter> letters) : letters_(std::move(letters)) {}
  OperatorWord(std::initializer_list<BosonLetter> letters) : letters_(letters) {}

  /// (a^dagger)^m a^n
  static OperatorWord normal(unsigned m, unsigned n);
  /// (a^dagger a)^l
  static OperatorWord number_power(unsigned l);

  const std::vector<BosonLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  /// Reversed with Create <-> Annihilate.
  OperatorWord adjoint() const;
  friend bool operator==(const OperatorWord&, const OperatorWord&) = default;

 private:
  std::vector<BosonLetter> letters_;
};

/// Rewrites a a^dagger -> a^dagger a + 1 until no such pair remains.
NormalForm wick_reorder(const OperatorWord& word);

/// Signed Stirling number of the first kind: coefficient of u^l in the falling
/// factorial u(u-1)...(u-n+1).
BigInt stirling_first_signed(unsigned n, unsigned l);

/// 2^n sum_l B^n_l u^l, the number-operator polynomial equal to
/// N(a^dagger a + a a^dagger)^n = 2^n (a^dagger)^n a^n.
RationalPolynomial number_polynomial(unsigned n);

/// Normal form of sum_l p_l (a^dagger a)^l.
NormalForm number_polynomial_normal_form(const RationalPolynomial& p);

/// N exp(c (a^dagger a + a a^dagger)) = (1+2c)^{a^dagger a}; returns 1+2c.
/// Throws ValidityError when 1+2c <= 0.
Rational normal_ordered_exponential(const Rational& c);

}  // namespace spinboson
