#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "spinboson/numeric.hpp"

namespace spinboson {

/// Generators of the collective spin algebra. Every letter carries an
/// implicit 1/sqrt(N) scale factor when traced (see normalized_trace).
enum class SpinLetter : std::uint8_t { Plus, Minus, Z };

/// "S+", "S-" or "Sz".
const char* letter_symbol(SpinLetter letter);

/// Finite product of spin letters, leftmost letter first. Letters act
/// right-to-left on kets. Ordered canonically: by length, then lexicographically
/// with Plus < Minus < Z.
class SpinWord {
 public:
  SpinWord() = default;
  explicit SpinWord(std::vector<SpinLetter> letters) : letters_(std::move(letters)) {}
  SpinWord(std::initializer_list<SpinLetter> letters) : letters_(letters) {}

  const std::vector<SpinLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::size_t count(SpinLetter letter) const;

  /// Reversed word with Plus <-> Minus (Z is Hermitian).
  SpinWord adjoint() const;

  friend SpinWord operator*(const SpinWord& a, const SpinWord& b);
  friend bool operator==(const SpinWord&, const SpinWord&) = default;
  friend std::strong_ordering operator<=>(const SpinWord& a, const SpinWord& b);

 private:
  std::vector<SpinLetter> letters_;
};

/// "S+*S-*Sz"; the empty word renders as "1".
std::string to_string(const SpinWord& word);

/// Complex-rational linear combination of spin words. Zero coefficients are
/// never stored.
class SpinPolynomial {
 public:
  using TermMap = std::map<SpinWord, GaussRational>;

  SpinPolynomial() = default;

  static SpinPolynomial identity();
  static SpinPolynomial constant(const GaussRational& c);
  static SpinPolynomial word(const SpinWord& w, const GaussRational& c = GaussRational(1));
  static SpinPolynomial letter(SpinLetter l);
  static SpinPolynomial plus() { return letter(SpinLetter::Plus); }
  static SpinPolynomial minus() { return letter(SpinLetter::Minus); }
  static SpinPolynomial z() { return letter(SpinLetter::Z); }
  /// (S+ + S-)/2
  static SpinPolynomial x();
  /// (S+ - S-)/(2i)
  static SpinPolynomial y();

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Longest word length; 0 for constants and for the zero polynomial.
  std::size_t degree() const;
  bool contains(SpinLetter l) const;
  GaussRational coefficient(const SpinWord& w) const;

  void add_term(const SpinWord& w, const GaussRational& c);

  SpinPolynomial adjoint() const;
  SpinPolynomial pow(unsigned exponent) const;

  SpinPolynomial& operator+=(const SpinPolynomial& o);
  SpinPolynomial& operator-=(const SpinPolynomial& o);
  SpinPolynomial& operator*=(const SpinPolynomial& o);
  SpinPolynomial& operator*=(const GaussRational& s);
  SpinPolynomial operator-() const;

  friend SpinPolynomial operator+(SpinPolynomial a, const SpinPolynomial& b) { return a += b; }
  friend SpinPolynomial operator-(SpinPolynomial a, const SpinPolynomial& b) { return a -= b; }
  friend SpinPolynomial operator*(SpinPolynomial a, const SpinPolynomial& b) { return a *= b; }
  friend SpinPolynomial operator*(SpinPolynomial a, const GaussRational& s) { return a *= s; }
  friend SpinPolynomial operator*(const GaussRational& s, SpinPolynomial a) { return a *= s; }
  friend bool operator==(const SpinPolynomial&, const SpinPolynomial&) = default;

 private:
  TermMap terms_;
};

}  // namespace spinboson
