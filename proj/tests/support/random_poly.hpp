#pragma once

// Seeded generators for property-style tests.

#include <random>

#include "spinboson/boson_core.hpp"
#include "spinboson/spin_polynomial.hpp"

namespace spinboson::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline GaussRational random_coefficient(std::mt19937_64& rng, bool allow_complex = true) {
  GaussRational c;
  do {
    const bool complex = allow_complex && std::bernoulli_distribution(0.4)(rng);
    c = complex ? GaussRational(random_rational(rng), random_rational(rng)) : GaussRational(random_rational(rng));
  } while (c.is_zero());
  return c;
}

inline SpinWord random_word(std::mt19937_64& rng, std::size_t max_length, bool with_z = true) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<int> letter(0, with_z ? 2 : 1);
  std::vector<SpinLetter> letters(len(rng));
  for (auto& l : letters) l = static_cast<SpinLetter>(letter(rng));
  return SpinWord(std::move(letters));
}

/// Balanced words (equal raising and lowering counts) have nonzero traces, so
/// half of the generated words are forced to be balanced.
inline SpinWord random_balanced_word(std::mt19937_64& rng, std::size_t max_length, bool with_z = true) {
  std::uniform_int_distribution<std::size_t> pairs_dist(0, max_length / 2);
  const std::size_t pairs = pairs_dist(rng);
  std::uniform_int_distribution<std::size_t> zs_dist(0, with_z ? max_length - 2 * pairs : 0);
  const std::size_t zs = zs_dist(rng);
  std::vector<SpinLetter> letters;
  letters.insert(letters.end(), pairs, SpinLetter::Plus);
  letters.insert(letters.end(), pairs, SpinLetter::Minus);
  letters.insert(letters.end(), zs, SpinLetter::Z);
  std::shuffle(letters.begin(), letters.end(), rng);
  return SpinWord(std::move(letters));
}

inline SpinPolynomial random_polynomial(std::mt19937_64& rng, std::size_t max_degree, std::size_t max_terms = 4,
                                        bool with_z = true) {
  std::uniform_int_distribution<std::size_t> terms(1, max_terms);
  SpinPolynomial p;
  const std::size_t n = terms(rng);
  for (std::size_t k = 0; k < n; ++k) {
    const bool balanced = std::bernoulli_distribution(0.5)(rng);
    const SpinWord w = balanced ? random_balanced_word(rng, max_degree, with_z) : random_word(rng, max_degree, with_z);
    p.add_term(w, random_coefficient(rng));
  }
  return p;
}

/// Random symbol in (z*, z) of total degree <= max_degree that always contains
/// at least one diagonal term z*^k z^k with k >= 2.
inline BosonSymbol random_symbol(std::mt19937_64& rng, unsigned max_degree, std::size_t max_terms = 4) {
  BosonSymbol s;
  std::uniform_int_distribution<std::size_t> terms(1, max_terms);
  const std::size_t n = terms(rng);
  for (std::size_t k = 0; k < n; ++k) {
    std::uniform_int_distribution<unsigned> m_dist(0, max_degree);
    const unsigned m = m_dist(rng);
    std::uniform_int_distribution<unsigned> n_dist(0, max_degree - m);
    s.add_term(m, n_dist(rng), random_coefficient(rng));
  }
  std::uniform_int_distribution<unsigned> k_dist(2, max_degree / 2);
  const unsigned k = k_dist(rng);
  s.add_term(k, k, GaussRational(Rational(std::uniform_int_distribution<int>(1, 6)(rng), 2)));
  return s;
}

/// Spin polynomial with symbol `s`: z*^m z^n -> S+^m S-^n.
inline SpinPolynomial spin_from_symbol(const BosonSymbol& s) {
  SpinPolynomial p;
  for (const auto& [powers, c] : s.terms()) {
    std::vector<SpinLetter> letters(powers.first, SpinLetter::Plus);
    letters.insert(letters.end(), powers.second, SpinLetter::Minus);
    p.add_term(SpinWord(std::move(letters)), c);
  }
  return p;
}

}  // namespace spinboson::testing
