#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <random>

#include "spinboson/dense_oracle.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/moments_gaussian.hpp"
#include "spinboson/spin_core.hpp"
#include "support/random_poly.hpp"

using namespace spinboson;
using L = SpinLetter;

namespace {

SpinPolynomial ladder_sum() {
  return SpinPolynomial::word({L::Plus, L::Minus}) + SpinPolynomial::word({L::Minus, L::Plus});
}

// Collective S^2 on the product space, for counting sector multiplicities
// independently of the closed form.
Eigen::MatrixXd total_spin_squared(unsigned sites) {
  const Eigen::Index dim = Eigen::Index(1) << sites;
  Eigen::Matrix2d sx, sz;
  sx << 0, 0.5, 0.5, 0;
  sz << 0.5, 0, 0, -0.5;
  Eigen::Matrix2cd sy;
  sy << 0, std::complex<double>(0, -0.5), std::complex<double>(0, 0.5), 0;
  auto embed = [&](const Eigen::MatrixXcd& single, unsigned site) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (unsigned s = 0; s < sites; ++s) {
      const Eigen::MatrixXcd factor = s == site ? single : Eigen::MatrixXcd::Identity(2, 2);
      Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
      for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * factor;
      out = next;
    }
    return out;
  };
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(dim, dim), Y = X, Z = X;
  for (unsigned s = 0; s < sites; ++s) {
    X += embed(sx.cast<std::complex<double>>(), s);
    Y += embed(sy, s);
    Z += embed(sz.cast<std::complex<double>>(), s);
  }
  return (X * X + Y * Y + Z * Z).real();
}

std::map<int, int> eigenvalue_counts(unsigned sites) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(total_spin_squared(sites));
  std::map<int, int> counts;  // keyed by twice_j
  for (double ev : solver.eigenvalues()) {
    const double j = (-1 + std::sqrt(1 + 4 * ev)) / 2;
    ++counts[static_cast<int>(std::lround(2 * j))];
  }
  return counts;
}

}  // namespace

TEST_CASE("irrep_multiplicity small sectors") {
  CHECK(irrep_multiplicity(1, 1) == 1);
  CHECK(irrep_multiplicity(2, 0) == 1);
  CHECK(irrep_multiplicity(2, 2) == 1);
  CHECK(irrep_multiplicity(4, 0) == 2);
  CHECK(irrep_multiplicity(4, 2) == 3);
  CHECK(irrep_multiplicity(4, 4) == 1);
}

TEST_CASE("irrep_multiplicity matches diagonalization of S^2") {
  for (unsigned n = 1; n <= 8; ++n) {
    const auto counts = eigenvalue_counts(n);
    for (int tj = static_cast<int>(n % 2); tj <= static_cast<int>(n); tj += 2) {
      const auto it = counts.find(tj);
      REQUIRE(it != counts.end());
      CHECK(BigInt(it->second) == irrep_multiplicity(n, tj) * (tj + 1));
    }
  }
}

TEST_CASE("irrep_multiplicity rejects invalid sectors") {
  CHECK_THROWS_AS(irrep_multiplicity(4, 1), DomainError);
  CHECK_THROWS_AS(irrep_multiplicity(4, 6), DomainError);
  CHECK_THROWS_AS(irrep_multiplicity(3, -1), DomainError);
  CHECK_THROWS_AS(irrep_multiplicity(0, 0), DomainError);
}

TEST_CASE("multiplicity sum rule up to 64 sites") {
  for (unsigned n = 1; n <= 64; ++n) {
    BigInt total = 0;
    for (const auto& s : irrep_decomposition(n)) total += s.multiplicity * s.dimension();
    CHECK(total == BigInt(1) << n);
  }
}

TEST_CASE("apply_word_in_irrep examples") {
  const WordImage z = apply_word_in_irrep({L::Z}, 1, 0);
  REQUIRE(z.index == 0);
  CHECK(z.coefficient == Rational(1, 2));
  CHECK(z.radicand == 1);

  const WordImage pm = apply_word_in_irrep({L::Plus, L::Minus}, 2, 1);
  REQUIRE(pm.index == 1);
  CHECK(pm.coefficient * pm.coefficient * pm.radicand == 4);
  CHECK(pm.to_double() == doctest::Approx(2.0));

  CHECK(apply_word_in_irrep({L::Minus, L::Plus}, 2, 0).is_zero());
  CHECK(apply_word_in_irrep({L::Minus}, 2, 2).is_zero());
}

TEST_CASE("apply_word_in_irrep single ladder steps") {
  // S+ |1,0> = sqrt(2) |1,1>
  const WordImage up = apply_word_in_irrep({L::Plus}, 2, 1);
  REQUIRE(up.index == 0);
  CHECK(up.to_double() == doctest::Approx(std::sqrt(2.0)));
  // S- |3/2,3/2> = sqrt(3) |3/2,1/2>
  const WordImage down = apply_word_in_irrep({L::Minus}, 3, 0);
  REQUIRE(down.index == 1);
  CHECK(down.to_double() == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(apply_word_in_irrep({L::Z}, 2, 3), DomainError);
}

TEST_CASE("diagonal images of balanced words are rational") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const SpinWord w = testing::random_balanced_word(rng, 8);
    const int tj = std::uniform_int_distribution<int>(0, 9)(rng);
    const int idx = std::uniform_int_distribution<int>(0, tj)(rng);
    const WordImage img = apply_word_in_irrep(w, tj, idx);
    if (img.is_zero()) continue;
    CHECK(*img.index == idx);
    CHECK(img.radicand == 1);
  }
}

TEST_CASE("normalized_trace examples") {
  for (unsigned n : {1u, 2u, 7u, 100u}) CHECK(normalized_trace(n, SpinPolynomial::identity()).exact.rational == 1);
  const SpinPolynomial x = SpinPolynomial::x();
  CHECK(normalized_trace(8, x * x).exact.rational == Rational(1, 4));
  CHECK(normalized_trace(8, x * x).exact.is_rational());
  const TraceResult odd = normalized_trace(6, x.pow(3));
  CHECK(odd.exact.rational.is_zero());
  CHECK(odd.exact.root_coefficient.is_zero());
  CHECK(normalized_trace(5, SpinPolynomial()).exact.rational.is_zero());
  CHECK(normalized_trace(4, SpinPolynomial::z() * SpinPolynomial::z()).decimal == "0.250000000000");
}

TEST_CASE("dense oracle examples") {
  const SpinPolynomial z = SpinPolynomial::z();
  CHECK(dense_oracle_trace(2, z * z).exact.rational == Rational(1, 4));
  CHECK(dense_oracle_trace(1, SpinPolynomial::plus()).exact.rational.is_zero());
  std::mt19937_64 rng(2024);
  const SpinPolynomial w = SpinPolynomial::word(testing::random_balanced_word(rng, 6));
  CHECK(dense_oracle_trace(12, w).exact == normalized_trace(12, w).exact);
  CHECK_THROWS_AS(dense_oracle_trace(15, z), ResourceError);
  CHECK_THROWS_AS(dense_oracle_trace(10, z, {.site_cap = 8}), ResourceError);
}

TEST_CASE("odd moments vanish") {
  const SpinPolynomial gens[] = {SpinPolynomial::x(), SpinPolynomial::y(), SpinPolynomial::z()};
  for (unsigned n = 1; n <= 12; ++n)
    for (const auto& g : gens)
      for (unsigned l = 0; l <= 4; ++l) {
        const ExactTrace t = normalized_trace(n, g.pow(2 * l + 1)).exact;
        CHECK(t.rational.is_zero());
        CHECK(t.root_coefficient.is_zero());
      }
}

TEST_CASE("engine agrees with the dense oracle on random polynomials") {
  std::mt19937_64 rng(31337);
  for (int k = 0; k < 30; ++k) {
    const SpinPolynomial p = testing::random_polynomial(rng, 6);
    const unsigned n = std::uniform_int_distribution<unsigned>(2, 10)(rng);
    CAPTURE(n);
    CHECK(normalized_trace(n, p).exact == dense_oracle_trace(n, p).exact);
  }
}

TEST_CASE("w + w^dagger has a real trace") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 60; ++k) {
    const SpinWord w = testing::random_word(rng, 7);
    const GaussRational c = testing::random_coefficient(rng);
    SpinPolynomial p = SpinPolynomial::word(w, c) + SpinPolynomial::word(w.adjoint(), c.conj());
    const unsigned n = std::uniform_int_distribution<unsigned>(1, 40)(rng);
    const ExactTrace t = normalized_trace(n, p).exact;
    CHECK(t.rational.is_real());
    CHECK(t.root_coefficient.is_real());
  }
}

TEST_CASE("odd-length words carry a sqrt(N) part") {
  const SpinPolynomial w = SpinPolynomial::word({L::Plus, L::Minus, L::Z});
  CHECK(normalized_trace(1, w).exact.rational == Rational(1, 4));
  const ExactTrace two = normalized_trace(2, w).exact;
  CHECK_FALSE(two.is_rational());
  CHECK(two == dense_oracle_trace(2, w).exact);
  CHECK(normalized_trace(5, w).exact == dense_oracle_trace(5, w).exact);
  CHECK(normalized_trace(4, w).exact.is_rational());
  CHECK(normalized_trace(4, w).exact == dense_oracle_trace(4, w).exact);
}

TEST_CASE("finite-N moments match the cumulant expansion") {
  // Sx is a sum of independent +-1/2 variables with cumulants k2 = 1/4,
  // k4 = -1/8, k6 = 1/4 per site, which gives the exact finite-N moments.
  const SpinPolynomial x = SpinPolynomial::x();
  for (unsigned n : {1u, 7u, 64u, 1000u}) CHECK(normalized_trace(n, x * x).exact.rational == Rational(1, 4));
  Rational previous4 = 1, previous6 = 1;
  for (unsigned n : {3u, 64u, 128u, 256u}) {
    const Rational m4 = normalized_trace(n, x.pow(4)).exact.rational.real();
    const Rational m6 = normalized_trace(n, x.pow(6)).exact.rational.real();
    CHECK(m4 == Rational(3, 16) - Rational(1, 8 * n));
    CHECK(m6 == Rational(15, 64) - Rational(15, 32 * n) + Rational(1, 4 * n * n));
    const Rational e4 = limit_moment(2) - m4, e6 = limit_moment(3) - m6;
    CHECK(e4 < previous4);
    CHECK(e6 < previous6);
    CHECK(e6 * n < Rational(15, 32));
    previous4 = e4;
    previous6 = e6;
  }
}

TEST_CASE("thread count does not change the result") {
  const SpinPolynomial p = ladder_sum().pow(3) + SpinPolynomial::x().pow(4);
  const ExactTrace one = normalized_trace(60, p, {.threads = 1}).exact;
  CHECK(normalized_trace(60, p, {.threads = 4}).exact == one);
  CHECK(normalized_trace(60, p, {.threads = 7}).exact == one);
}

TEST_CASE("diagonal fast path matches the general path") {
  // S+S-S+S- is block-decomposable; S+S+S-S- forces vector application.
  // Both are checked against the oracle and against each other via the
  // commutator identity S+S- - S-S+ = 2Sz.
  const SpinPolynomial pm = SpinPolynomial::word({L::Plus, L::Minus});
  const SpinPolynomial mp = SpinPolynomial::word({L::Minus, L::Plus});
  const SpinPolynomial z = SpinPolynomial::z();
  for (unsigned n : {3u, 8u, 11u}) {
    const SpinPolynomial fast = (pm + mp).pow(2) * z * z;
    CHECK(normalized_trace(n, fast).exact == dense_oracle_trace(n, fast).exact);
  }
  const SpinPolynomial lhs = (pm - mp) * (pm - mp);
  const SpinPolynomial rhs = z * z * GaussRational(4);
  // lhs has two more letters than rhs, hence the extra factor 1/N.
  for (unsigned n : {10u, 37u, 200u})
    CHECK(normalized_trace(n, lhs).exact.rational * GaussRational(n) == normalized_trace(n, rhs).exact.rational);
}

TEST_CASE("floating path is labelled and close to the exact value") {
  const SpinPolynomial p = ladder_sum().pow(4);
  const TraceResult exact = normalized_trace(300, p);
  const TraceResult approx = normalized_trace(300, p, {.floating = true});
  CHECK_FALSE(exact.approximate);
  CHECK(approx.approximate);
  CHECK(approx.approx.real() == doctest::Approx(exact.approx.real()).epsilon(1e-12));
}

TEST_CASE("work budget is enforced") {
  const SpinPolynomial p = SpinPolynomial::x().pow(8);
  CHECK(trace_work_estimate(200, p) > 0);
  CHECK_THROWS_AS(normalized_trace(200, p, {.work_budget = 1000}), ResourceError);
}

TEST_CASE("decimal field is a faithful rounding") {
  const TraceResult r = normalized_trace(10, SpinPolynomial::x().pow(4), {.digits = 6});
  CHECK(r.decimal == to_decimal(r.exact.rational.real(), 6));
}
