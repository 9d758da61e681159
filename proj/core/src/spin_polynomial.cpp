#include "spinboson/spin_polynomial.hpp"

#include <algorithm>

namespace spinboson {

const char* letter_symbol(SpinLetter letter) {
  switch (letter) {
    case SpinLetter::Plus:
      return "S+";
    case SpinLetter::Minus:
      return "S-";
    case SpinLetter::Z:
      return "Sz";
  }
  return "?";
}

std::size_t SpinWord::count(SpinLetter letter) const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), letter));
}

SpinWord SpinWord::adjoint() const {
  std::vector<SpinLetter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) {
    if (l == SpinLetter::Plus) {
      l = SpinLetter::Minus;
    } else if (l == SpinLetter::Minus) {
      l = SpinLetter::Plus;
    }
  }
  return SpinWord(std::move(out));
}

SpinWord operator*(const SpinWord& a, const SpinWord& b) {
  std::vector<SpinLetter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return SpinWord(std::move(out));
}

std::strong_ordering operator<=>(const SpinWord& a, const SpinWord& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

std::string to_string(const SpinWord& word) {
  if (word.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k != 0) out += "*";
    out += letter_symbol(word.letters()[k]);
  }
  return out;
}

SpinPolynomial SpinPolynomial::identity() { return constant(GaussRational(1)); }

SpinPolynomial SpinPolynomial::constant(const GaussRational& c) { return word(SpinWord{}, c); }

SpinPolynomial SpinPolynomial::word(const SpinWord& w, const GaussRational& c) {
  SpinPolynomial p;
  p.add_term(w, c);
  return p;
}

SpinPolynomial SpinPolynomial::letter(SpinLetter l) { return word(SpinWord{l}); }

SpinPolynomial SpinPolynomial::x() {
  return (plus() + minus()) * GaussRational(Rational(1, 2));
}

SpinPolynomial SpinPolynomial::y() {
  return (plus() - minus()) * GaussRational(Rational(0), Rational(-1, 2));
}

std::size_t SpinPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

bool SpinPolynomial::contains(SpinLetter l) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [l](const auto& t) { return t.first.count(l) != 0; });
}

GaussRational SpinPolynomial::coefficient(const SpinWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? GaussRational() : it->second;
}

void SpinPolynomial::add_term(const SpinWord& w, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SpinPolynomial SpinPolynomial::adjoint() const {
  SpinPolynomial out;
  for (const auto& [w, c] : terms_) out.add_term(w.adjoint(), c.conj());
  return out;
}

SpinPolynomial SpinPolynomial::pow(unsigned exponent) const {
  SpinPolynomial result = identity();
  for (unsigned k = 0; k < exponent; ++k) result *= *this;
  return result;
}

SpinPolynomial& SpinPolynomial::operator+=(const SpinPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

SpinPolynomial& SpinPolynomial::operator-=(const SpinPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

SpinPolynomial& SpinPolynomial::operator*=(const SpinPolynomial& o) {
  SpinPolynomial out;
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) out.add_term(wa * wb, ca * cb);
  }
  terms_ = std::move(out.terms_);
  return *this;
}

SpinPolynomial& SpinPolynomial::operator*=(const GaussRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

SpinPolynomial SpinPolynomial::operator-() const { return *this * GaussRational(-1); }

}  // namespace spinboson
