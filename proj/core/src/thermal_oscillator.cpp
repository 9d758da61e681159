#include "spinboson/thermal_oscillator.hpp"

#include "spinboson/errors.hpp"
#include "spinboson/moments_gaussian.hpp"

namespace spinboson {

ThermalState::ThermalState(Rational boltzmann_ratio) : x_(std::move(boltzmann_ratio)) {
  if (x_ <= 0 || x_ >= 1) {
    throw DomainError("ThermalState: Boltzmann ratio " + to_string(x_) + " outside (0, 1)");
  }
}

Rational density_diagonal(const ThermalState& state, unsigned n) {
  const Rational& x = state.boltzmann_ratio();
  return (1 - x) * power(x, static_cast<int>(n));
}

RationalPolynomial polylog_numerator(unsigned k) {
  const RationalPolynomial x = RationalPolynomial::monomial(1);
  const RationalPolynomial one_minus_x(std::vector<Rational>{Rational(1), Rational(-1)});
  RationalPolynomial a = x;
  for (unsigned j = 0; j < k; ++j) {
    a = x * (one_minus_x * a.derivative() + a * Rational(j + 1));
  }
  return a;
}

Rational polylog_negative(unsigned k, const Rational& x) {
  if (x <= 0 || x >= 1) throw DomainError("polylog_negative: x=" + to_string(x) + " outside (0, 1)");
  return polylog_numerator(k)(x) / power(1 - x, static_cast<int>(k) + 1);
}

GaussRational thermal_expect(const ThermalState& state, const NormalForm& form) {
  const Rational nbar = state.mean_occupation();
  GaussRational sum;
  for (const auto& [p, c] : form.terms()) {
    if (p.first != p.second) continue;
    sum += c * GaussRational(Rational(factorial(p.first)) * power(nbar, static_cast<int>(p.first)));
  }
  return sum;
}

GaussRational thermal_expect_weighted(const ThermalState& state, const Rational& base,
                                      const NormalForm& form) {
  const Rational& x = state.boltzmann_ratio();
  const Rational y = base * x;
  if (base <= 0) throw ValidityError("thermal_expect_weighted: base " + to_string(base) + " is not positive");
  if (y >= 1) {
    throw ValidityError("thermal_expect_weighted: base * x = " + to_string(y) +
                        " >= 1, the weighted thermal sum diverges");
  }
  // sum_v (1-x) y^v v!/(v-k)! = (1-x) k! y^k / (1-y)^{k+1}
  GaussRational sum;
  for (const auto& [p, c] : form.terms()) {
    if (p.first != p.second) continue;
    const int k = static_cast<int>(p.first);
    sum += c * GaussRational((1 - x) * Rational(factorial(p.first)) * power(y, k) / power(1 - y, k + 1));
  }
  return sum;
}

QuadraticSurd infinite_temperature_partition_normalization() {
  // sum_n 3^{-n-1/2} = 3^{-1/2} * 3/2
  return QuadraticSurd::make(Rational(3, 2), Rational(1, 3));
}

Rational ground_position_expectation(const RationalPolynomial& f) { return gaussian_expectation(f); }

double ground_position_expectation(const std::function<double(double)>& f) {
  return gaussian_expectation(f);
}

}  // namespace spinboson
