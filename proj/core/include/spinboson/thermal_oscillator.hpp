#pragma once

#include <functional>

#include "spinboson/boson_core.hpp"
#include "spinboson/numeric.hpp"

namespace spinboson {

/// Single-mode thermal (geometric) state with populations (1-x) x^n, where
/// x = exp(-hbar omega / k_B T) is the only parameter: frequency and
/// temperature never enter separately.
class ThermalState {
 public:
  /// Requires 0 < x < 1.
  explicit ThermalState(Rational boltzmann_ratio);

  /// The state equivalent to N spins at infinite temperature:
  /// hbar omega / k_B T = ln 3, i.e. x = 1/3 and mean occupation 1/2.
  static ThermalState infinite_temperature_spin_image() { return ThermalState(Rational(1, 3)); }

  const Rational& boltzmann_ratio() const { return x_; }
  /// x / (1 - x) = 1 / (exp(hbar omega / k_B T) - 1)
  Rational mean_occupation() const { return x_ / (1 - x_); }

 private:
  Rational x_;
};

/// Zero-temperature oscillator whose position reproduces the Sz/sqrt(N) law:
/// mean 0, Delta x = 1/2, m * omega = 2 (hbar = 1).
struct GroundOscillator {
  static Rational mass_times_frequency() { return 2; }
  static Rational position_std() { return Rational(1, 2); }
  /// 1 / (2 m omega)
  static Rational position_variance() { return 1 / (2 * mass_times_frequency()); }
};

/// p_n = (1 - x) x^n
Rational density_diagonal(const ThermalState& state, unsigned n);

/// Numerator polynomial A_k with Li_{-k}(x) = A_k(x) / (1-x)^{k+1},
/// generated by A_0 = x and A_{k+1} = x ((1-x) A_k' + (k+1) A_k).
RationalPolynomial polylog_numerator(unsigned k);

/// Li_{-k}(x) = sum_{n>=1} n^k x^n for rational 0 < x < 1.
Rational polylog_negative(unsigned k, const Rational& x);

/// tr(rho N f): only diagonal terms survive, with
/// tr(rho a^dagger^n a^n) = n! nbar^n.
GaussRational thermal_expect(const ThermalState& state, const NormalForm& form);

/// sum_n p_n base^n <n|N f|n>, unnormalized. Requires base * x < 1.
GaussRational thermal_expect_weighted(const ThermalState& state, const Rational& base,
                                      const NormalForm& form);

/// Normalization of exp(-ln3 (a^dagger a + 1/2)): sum_n 3^{-(n+1/2)} = sqrt(3)/2.
QuadraticSurd infinite_temperature_partition_normalization();

/// <f(x)> in the ground state of GroundOscillator; the position density is the
/// same Gaussian as the Sz/sqrt(N) law.
Rational ground_position_expectation(const RationalPolynomial& f);
double ground_position_expectation(const std::function<double(double)>& f);

}  // namespace spinboson
