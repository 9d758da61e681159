#pragma once

#include <complex>
#include <functional>

#include "spinboson/boson_core.hpp"
#include "spinboson/numeric.hpp"

namespace spinboson {

/// Large-N spectral law of S_alpha/sqrt(N): zero mean, standard deviation 1/2,
/// density sqrt(2/pi) exp(-2 eta^2).
struct GaussianLaw {
  static constexpr double mean = 0.0;
  static constexpr double standard_deviation = 0.5;
  static double density(double eta);
};

/// Law of the pair (S+/sqrt(N), S-/sqrt(N)) -> (z*, z): (2/pi) exp(-2|z|^2).
struct ComplexGaussianLaw {
  static double density(std::complex<double> z);
};

/// (2l)! / (2^{3l} l!)
Rational limit_moment(unsigned l);

/// (2m)!(2l)! / (2^{3l+3m} l! m!), the joint limit of
/// 2^{-N} tr (S_a/sqrt N)^{2m} (S_b/sqrt N)^{2l} for a != b.
Rational mixed_limit_moment(unsigned m, unsigned l);

/// exp(-t^2/8)
template <class T>
T characteristic_function(const T& t) {
  using std::exp;
  return exp(-t * t / 8);
}

/// n-th Taylor coefficient of the characteristic function in powers of t:
/// i^n <eta^n>/n!, zero for odd n. Returned as the real coefficient of t^n.
Rational characteristic_series_coefficient(unsigned n);

struct QuadratureOptions {
  double tolerance = 1e-12;
  unsigned max_depth = 20;
};

/// sqrt(2/pi) \int p(eta) exp(-2 eta^2), exact via the limit moments.
Rational gaussian_expectation(const RationalPolynomial& f);

/// Adaptive Gauss-Kronrod quadrature on |eta| <= 8 standard deviations; the
/// neglected tails are bounded by sup|f| over the truncation point times the
/// Gaussian tail mass. Throws ResourceError with the residual estimate when
/// the requested tolerance is not met.
double gaussian_expectation(const std::function<double(double)>& f,
                            const QuadratureOptions& options = {});

/// (2/pi) \int g(z*, z) exp(-2|z|^2) d^2z. Monomials z*^m z^n integrate to
/// m!/2^m when m == n and to 0 otherwise.
GaussRational complex_gaussian_expectation(const BosonSymbol& g);

/// Quadrature version in polar coordinates; `g` receives z.
std::complex<double> complex_gaussian_expectation(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const QuadratureOptions& options = {});

}  // namespace spinboson
