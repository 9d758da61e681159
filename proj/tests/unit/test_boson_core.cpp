#include <doctest.h>

#include <cmath>
#include <random>

#include "spinboson/boson_core.hpp"
#include "spinboson/errors.hpp"
#include "support/random_poly.hpp"

using namespace spinboson;
using B = BosonLetter;

namespace {

NormalForm nf(std::initializer_list<std::tuple<unsigned, unsigned, long long>> terms) {
  NormalForm f;
  for (const auto& [m, n, c] : terms) f.add_term(m, n, GaussRational(c));
  return f;
}

// Product of normal forms by concatenating words and reordering: an
// independent route to compose (a^dagger a)^l.
NormalForm reorder_sum(const NormalForm& form) {
  NormalForm out;
  for (const auto& [mn, c] : form.terms()) out += wick_reorder(OperatorWord::normal(mn.first, mn.second)) * c;
  return out;
}

}  // namespace

TEST_CASE("normal_order_symbol re-types coefficients") {
  CHECK(normal_order_symbol(BosonSymbol::constant(1)) == NormalForm::identity());
  const BosonSymbol zz = BosonSymbol::z_conj() * BosonSymbol::z();
  const BosonSymbol sym = (zz + BosonSymbol::z() * BosonSymbol::z_conj()).pow(5);
  CHECK(normal_order_symbol(sym) == nf({{5, 5, 32}}));
  CHECK(normal_order_symbol(BosonSymbol::z_conj() + BosonSymbol::z()) == nf({{1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("wick_reorder examples") {
  CHECK(wick_reorder({B::Annihilate, B::Create}) == nf({{1, 1, 1}, {0, 0, 1}}));
  CHECK(wick_reorder({B::Annihilate, B::Create, B::Annihilate}) == nf({{1, 2, 1}, {0, 1, 1}}));
  CHECK(wick_reorder({B::Create, B::Annihilate}) == nf({{1, 1, 1}}));
  CHECK(wick_reorder({}) == NormalForm::identity());
  // a^2 a^dagger^2 = ad^2 a^2 + 4 ad a + 2
  CHECK(wick_reorder({B::Annihilate, B::Annihilate, B::Create, B::Create}) == nf({{2, 2, 1}, {1, 1, 4}, {0, 0, 2}}));
}

TEST_CASE("wick_reorder respects the adjoint") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    std::vector<B> letters(std::uniform_int_distribution<int>(0, 9)(rng));
    for (auto& l : letters) l = std::bernoulli_distribution(0.5)(rng) ? B::Create : B::Annihilate;
    const OperatorWord w(letters);
    CHECK(wick_reorder(w.adjoint()) == wick_reorder(w).adjoint());
  }
}

TEST_CASE("stirling_first_signed values") {
  CHECK(stirling_first_signed(1, 1) == 1);
  CHECK(stirling_first_signed(2, 2) == 1);
  CHECK(stirling_first_signed(2, 1) == -1);
  CHECK(stirling_first_signed(3, 3) == 1);
  CHECK(stirling_first_signed(3, 2) == -3);
  CHECK(stirling_first_signed(3, 1) == 2);
  CHECK(stirling_first_signed(4, 0) == 0);
  CHECK_THROWS_AS(stirling_first_signed(3, 4), DomainError);
}

TEST_CASE("Stirling expansion agrees with Wick reordering") {
  for (unsigned n = 1; n <= 8; ++n) {
    NormalForm via_stirling;
    for (unsigned l = 0; l <= n; ++l) {
      const BigInt b = stirling_first_signed(n, l);
      if (b != 0) via_stirling += wick_reorder(OperatorWord::number_power(l)) * GaussRational(Rational(b));
    }
    CHECK(via_stirling == nf({{n, n, 1}}));
    CHECK(number_polynomial_normal_form(number_polynomial(n)) == nf({{n, n, 1ll << n}}));
  }
}

TEST_CASE("generating function (1+t)^u reproduces the Stirling rows") {
  // (1+t)^u = sum_n t^n/n! * u(u-1)...(u-n+1): expand the falling factorials
  // directly as polynomials and compare coefficientwise through t^8.
  RationalPolynomial falling({Rational(1)});
  for (unsigned n = 1; n <= 8; ++n) {
    falling *= RationalPolynomial({Rational(-int(n - 1)), Rational(1)});
    for (unsigned l = 0; l <= n; ++l) CHECK(falling.coefficient(l) == Rational(stirling_first_signed(n, l)));
  }
}

TEST_CASE("number_polynomial values") {
  CHECK(number_polynomial(1) == RationalPolynomial({Rational(0), Rational(2)}));
  CHECK(number_polynomial(2) == RationalPolynomial({Rational(0), Rational(-4), Rational(4)}));
  const RationalPolynomial five({Rational(0), Rational(24), Rational(-50), Rational(35), Rational(-10), Rational(1)});
  CHECK(number_polynomial(5) == five * Rational(32));
}

TEST_CASE("normal_ordered_exponential") {
  CHECK(normal_ordered_exponential(0) == 1);
  CHECK(normal_ordered_exponential(Rational(-1, 4)) == Rational(1, 2));
  CHECK(normal_ordered_exponential(Rational(1, 2)) == 2);
  CHECK_THROWS_AS(normal_ordered_exponential(Rational(-1, 2)), ValidityError);
  CHECK_THROWS_AS(normal_ordered_exponential(-1), ValidityError);
}

TEST_CASE("exponential series matches the closed form") {
  for (double c : {-0.4, -0.25, -0.1, 0.0, 0.2, 0.4}) {
    for (int u = 0; u <= 6; ++u) {
      double sum = 0, cn = 1, nfact = 1;
      sum += 1;
      for (unsigned n = 1; n <= 12; ++n) {
        cn *= c;
        nfact *= n;
        sum += cn / nfact * number_polynomial(n)(static_cast<double>(u));
      }
      CHECK(std::abs(sum - std::pow(1 + 2 * c, u)) < 1e-9);
    }
  }
  // Exact check for the series at c = -1/4, u = 3: terms vanish beyond n = 3.
  Rational sum = 1, cn = 1;
  for (unsigned n = 1; n <= 12; ++n) {
    cn *= Rational(-1, 4);
    sum += cn / Rational(factorial(n)) * number_polynomial(n)(Rational(3));
  }
  CHECK(sum == power(normal_ordered_exponential(Rational(-1, 4)), 3));
}

TEST_CASE("rendering and JSON round trip") {
  CHECK(to_string(nf({{5, 5, 32}})) == "32 ad^5 a^5");
  CHECK(to_string(NormalForm()) == "0");
  std::mt19937_64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const BosonSymbol s = testing::random_symbol(rng, 8);
    CHECK(boson_symbol_from_json(to_json(s)) == s);
    const NormalForm f = normal_order_symbol(s);
    CHECK(normal_form_from_json(to_json(f)) == f);
  }
  CHECK_THROWS_AS(normal_form_from_json("{\"x\": \"1\"}"), DomainError);
}

TEST_CASE("adjoint of a normal form") {
  NormalForm f;
  f.add_term(2, 1, GaussRational(Rational(1), Rational(3)));
  NormalForm g;
  g.add_term(1, 2, GaussRational(Rational(1), Rational(-3)));
  CHECK(f.adjoint() == g);
  CHECK(reorder_sum(f) == f);
}
