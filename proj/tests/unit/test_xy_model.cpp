#include <doctest.h>

#include <cmath>
#include <random>

#include "spinboson/dense_oracle.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/thermal_oscillator.hpp"
#include "spinboson/xy_model.hpp"
#include "support/random_poly.hpp"

using namespace spinboson;
using L = SpinLetter;

namespace {

SpinPolynomial ladder_sum() {
  return SpinPolynomial::word({L::Plus, L::Minus}) + SpinPolynomial::word({L::Minus, L::Plus});
}

// Boltzmann-weighted dense traces: sum_{j,m} w(j,m) tr(P_j Q_m W) / sum w tr(P_j Q_m).
std::pair<Real, Real> dense_thermal(const XYParams& p, unsigned sites, const SpinPolynomial& poly) {
  const Rational g = p.ratio();
  const auto numer = dense_projected_traces(sites, poly);
  const auto denom = dense_projected_traces(sites, SpinPolynomial::identity());
  auto weight = [&](int tj, int tm) {
    const Rational exponent = -g * Rational(tj * (tj + 2) - tm * tm, 2) / sites;
    return Real(exp(Real(exponent)));
  };
  Real re = 0, im = 0, z = 0;
  for (const auto& t : numer) {
    const auto [r, i] = t.trace.to_real();
    re += weight(t.twice_j, t.twice_m) * r;
    im += weight(t.twice_j, t.twice_m) * i;
  }
  for (const auto& t : denom) z += weight(t.twice_j, t.twice_m) * t.trace.to_real().first;
  return {re / z, im / z};
}

double as_double(const Real& r) { return r.convert_to<double>(); }

}  // namespace

TEST_CASE("parameters and validity") {
  CHECK_THROWS_AS(XYParams(1, 0), DomainError);
  CHECK_THROWS_AS(XYParams(1, -2), DomainError);
  CHECK(validity_check({-1, 2}).passes());
  CHECK(validity_check({-1, 2}).ferromagnetic);
  const ValidityVerdict bad = validity_check({1, Rational(3, 2)});
  CHECK_FALSE(bad.passes());
  CHECK_FALSE(bad.two_g_below_one);
  CHECK(bad.describe().find("2g") != std::string::npos);
  CHECK(validity_check({0, 5}).passes());
  CHECK(validity_check({0, 5}).describe() == "pass");
}

TEST_CASE("validity flips exactly at the bounds") {
  const Rational eps(1, BigInt(10) * BigInt("1000000000000000000000000000000"));
  CHECK(validity_check({Rational(1, 2) - eps, 1}).passes());
  CHECK_FALSE(validity_check({Rational(1, 2), 1}).passes());
  CHECK(validity_check({-1 + eps, 1}).passes());
  CHECK_FALSE(validity_check({-1, 1}).passes());
  CHECK_FALSE(validity_check({-1, 1}).minus_g_below_one);
  // Ferromagnetic form: kT > |gamma|.
  CHECK(validity_check({-3, 3 + eps}).passes());
  CHECK_FALSE(validity_check({-3, 3}).passes());
}

TEST_CASE("spin side reduces to the plain trace at zero coupling") {
  PrecisionGuard guard(50);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    const SpinPolynomial p = testing::random_polynomial(rng, 4);
    const unsigned n = std::uniform_int_distribution<unsigned>(2, 40)(rng);
    const ThermalValue v = spin_thermal_expectation({0, 1}, n, p);
    const auto [re, im] = normalized_trace(n, p).exact.to_real();
    CHECK(abs(v.real - re) < Real("1e-45"));
    CHECK(abs(v.imag - im) < Real("1e-45"));
  }
  CHECK(abs(spin_thermal_expectation({3, 7}, 10, SpinPolynomial::identity()).real - 1) < Real("1e-45"));
}

TEST_CASE("spin side agrees with the Boltzmann-weighted dense oracle") {
  PrecisionGuard guard(50);
  const XYParams p(Rational(1, 10), 1);
  const SpinPolynomial q = ladder_sum();
  const ThermalValue v = spin_thermal_expectation(p, 10, q);
  CHECK(abs(v.real - dense_thermal(p, 10, q).first) < Real("1e-40"));

  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    const SpinPolynomial r = testing::random_polynomial(rng, 4);
    const unsigned n = std::uniform_int_distribution<unsigned>(2, 9)(rng);
    const XYParams params(testing::random_rational(rng, 3, 4), Rational(std::uniform_int_distribution<int>(1, 5)(rng)));
    const ThermalValue got = spin_thermal_expectation(params, n, r);
    const auto [re, im] = dense_thermal(params, n, r);
    CHECK(abs(got.real - re) < Real("1e-40"));
    CHECK(abs(got.imag - im) < Real("1e-40"));
  }
}

TEST_CASE("boson side expectations") {
  CHECK(boson_thermal_expectation({0, 1}, NormalForm::monomial(1, 1)) == GaussRational(Rational(1, 2)));
  CHECK(boson_thermal_expectation({Rational(1, 3), 1}, NormalForm::identity()) == GaussRational(1));
  CHECK(boson_thermal_expectation({1, 4}, NormalForm::monomial(1, 1)) == GaussRational(Rational(1, 5)));
  double num = 0, den = 0;
  for (int n = 0; n < 400; ++n) {
    const double w = std::pow(1.0 / 6, n);
    num += w * n;
    den += w;
  }
  CHECK(num / den == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS(boson_thermal_expectation({1, 1}, NormalForm::identity()), ValidityError);
  // Joint ordering: thermal state with x = 1/(3 + 2g).
  CHECK(effective_boltzmann_ratio({1, 4}, BosonOrdering::Joint) == Rational(2, 7));
  CHECK(effective_boltzmann_ratio({1, 4}, BosonOrdering::Product) == Rational(1, 6));
  CHECK(boson_thermal_expectation({1, 4}, NormalForm::monomial(1, 1), BosonOrdering::Joint) ==
        GaussRational(Rational(2, 5)));
  CHECK(boson_thermal_expectation({0, 1}, NormalForm::monomial(3, 3), BosonOrdering::Joint) ==
        thermal_expect(ThermalState::infinite_temperature_spin_image(), NormalForm::monomial(3, 3)));
}

TEST_CASE("zero coupling collapse on the boson side") {
  std::mt19937_64 rng(21);
  const ThermalState s = ThermalState::infinite_temperature_spin_image();
  for (int k = 0; k < 10; ++k) {
    const NormalForm f = normal_order_symbol(testing::random_symbol(rng, 8));
    CHECK(boson_thermal_expectation({0, 2}, f) == thermal_expect(s, f));
  }
}

TEST_CASE("partition function") {
  CHECK(partition_function({0, 1}) == QuadraticSurd{Rational(1, 2), BigInt(3)});
  const QuadraticSurd third = partition_function({1, 3});
  CHECK(third.is_rational());
  CHECK(third.coefficient == Rational(3, 8));
  double direct = 0;
  for (int n = 0; n < 200; ++n) direct += std::pow(9.0, -(n + 0.5));
  CHECK(direct == doctest::Approx(0.375).epsilon(1e-14));
  // Monotone in g over the valid window; blows up towards g = -1.
  double previous = 1e300;
  for (const Rational& g : {Rational(-9, 10), Rational(-1, 2), Rational(0), Rational(1, 4), Rational(49, 100),
                            Rational(499, 1000)}) {
    const double z = partition_function({g, 1}).to_double();
    CHECK(z < previous);
    previous = z;
  }
  CHECK(partition_function({Rational(-999, 1000), 1}).to_double() > 1e3);
  CHECK_THROWS_AS(partition_function({Rational(1, 2), 1}), ValidityError);
}

TEST_CASE("effective temperature") {
  CHECK(effective_temperature({-1, 2}) == doctest::Approx(2 / std::log(1.5)).epsilon(1e-12));
  CHECK(effective_temperature({-1, 2}) == doctest::Approx(4.9326).epsilon(1e-4));
  CHECK(effective_temperature({-1, BigInt(10) * BigInt("1000000000000")}) ==
        doctest::Approx(2 / std::log(3.0)).epsilon(1e-9));
  CHECK(effective_temperature({3, BigInt("1000000000000")}) == doctest::Approx(6 / std::log(3.0)).epsilon(1e-9));
  CHECK_THROWS_AS(effective_temperature({0, 1}), DomainError);
  CHECK_THROWS_AS(effective_temperature({1, 1}), ValidityError);
}

TEST_CASE("mapped function") {
  const NormalForm f = NormalForm::monomial(2, 1, GaussRational(Rational(1), Rational(2)));
  const MappedFunction id = mapped_function({0, 1}, f);
  CHECK(id.base == 1);
  CHECK(id.form == f);
  const XYParams quarter(1, 4);
  CHECK(mapped_expectation(mapped_function(quarter, NormalForm::identity())) == GaussRational(1));
  const MappedFunction m = mapped_function(quarter, NormalForm::monomial(1, 1));
  CHECK(m.base == Rational(1, 2));
  CHECK(mapped_expectation(m) == boson_thermal_expectation(quarter, NormalForm::monomial(1, 1)));
  const MappedFunction minus = mapped_function(quarter, NormalForm::monomial(1, 1), WeightSign::Minus);
  CHECK(minus.base == 2);
  CHECK(mapped_expectation(minus) != mapped_expectation(m));
  CHECK_THROWS_AS(mapped_function({1, 1}, f), ValidityError);
}

TEST_CASE("finite-N gap to the boson side shrinks") {
  PrecisionGuard guard(50);
  const SpinPolynomial q = ladder_sum();
  const NormalForm image = NormalForm::monomial(1, 1, 2);
  for (const XYParams& p : {XYParams(-1, 2), XYParams(1, 4)}) {
    const double product = boson_thermal_expectation(p, image).to_complex().real();
    const double joint = boson_thermal_expectation(p, image, BosonOrdering::Joint).to_complex().real();
    double prev_product = 1e300, prev_joint = 1e300;
    for (unsigned n : {64u, 128u, 256u, 512u}) {
      const double spin = as_double(spin_thermal_expectation(p, n, q).real);
      const double gp = std::abs(spin - product);
      const double gj = std::abs(spin - joint);
      CHECK(gp < prev_product);
      CHECK(gj < prev_joint);
      CHECK(gj * n < 10);
      prev_product = gp;
      prev_joint = gj;
    }
  }
}

TEST_CASE("sweep rows and csv") {
  PrecisionGuard guard(50);
  std::vector<XYSweepRow> rows;
  rows.push_back(xy_sweep_row({-1, 2}, 32, ladder_sum()));
  rows.push_back(xy_sweep_row({1, 1}, 32, ladder_sum()));
  CHECK(rows[0].valid);
  CHECK(rows[0].t_eff.has_value());
  CHECK_FALSE(rows[1].valid);
  CHECK_FALSE(rows[1].partition.has_value());
  CHECK(rows[1].expectation_spin.has_value());
  const std::string csv = xy_sweep_csv(rows, 32);
  CHECK(csv.rfind("gamma,kT,g,valid,Z,T_eff,expectation_spin(32),expectation_boson\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
