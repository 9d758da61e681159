#include "spinboson/moments_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spinboson/errors.hpp"

namespace spinboson {

namespace {

constexpr double kTruncation = 8.0 * GaussianLaw::standard_deviation;

// P(|eta| > a) for the sigma = 1/2 law.
double tail_mass(double a) { return std::erfc(a * std::numbers::sqrt2); }

struct Integral {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Bisection around the fixed 61-point Kronrod rule. Stops on an absolute
// tolerance so that integrals whose value is zero still terminate.
template <class F>
Integral integrate_absolute(const F& f, double a, double b, double abs_tol, unsigned depth) {
  using boost::math::quadrature::gauss_kronrod;
  Integral out;
  out.value = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &out.error, &out.l1);
  if (out.error <= abs_tol || depth == 0 || !std::isfinite(out.value)) return out;
  const double mid = 0.5 * (a + b);
  const Integral left = integrate_absolute(f, a, mid, abs_tol / 2, depth - 1);
  const Integral right = integrate_absolute(f, mid, b, abs_tol / 2, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

template <class F>
Integral integrate_relative_to_l1(const F& f, double a, double b, const QuadratureOptions& options) {
  using boost::math::quadrature::gauss_kronrod;
  double l1 = 0.0;
  gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, nullptr, &l1);
  return integrate_absolute(f, a, b, options.tolerance * std::max(1.0, l1), options.max_depth);
}

// Mean of g over the circle |z| = r. The integrand is smooth and periodic, so
// the trapezoid rule converges geometrically; points are doubled until two
// successive means agree.
std::complex<double> ring_mean(const std::function<std::complex<double>(std::complex<double>)>& g, double r,
                               double tolerance) {
  constexpr unsigned kMaxPoints = 1u << 14;
  unsigned points = 16;
  std::complex<double> sum = 0.0;
  double scale = 0.0;
  for (unsigned k = 0; k < points; ++k) {
    const std::complex<double> v = g(std::polar(r, 2.0 * std::numbers::pi * k / points));
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  std::complex<double> mean = sum / static_cast<double>(points);
  while (points < kMaxPoints) {
    for (unsigned k = 0; k < points; ++k) {
      const std::complex<double> v = g(std::polar(r, 2.0 * std::numbers::pi * (k + 0.5) / points));
      sum += v;
      scale = std::max(scale, std::abs(v));
    }
    points *= 2;
    const std::complex<double> next = sum / static_cast<double>(points);
    const bool settled = std::abs(next - mean) <= tolerance * std::max(1.0, scale);
    mean = next;
    if (settled) break;
  }
  return mean;
}

}  // namespace

double GaussianLaw::density(double eta) {
  return std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * eta * eta);
}

double ComplexGaussianLaw::density(std::complex<double> z) {
  return (2.0 / std::numbers::pi) * std::exp(-2.0 * std::norm(z));
}

Rational limit_moment(unsigned l) {
  return Rational(factorial(2 * l)) / (Rational(factorial(l)) * power(Rational(2), static_cast<int>(3 * l)));
}

Rational mixed_limit_moment(unsigned m, unsigned l) {
  return Rational(factorial(2 * m) * factorial(2 * l)) /
         (Rational(factorial(l) * factorial(m)) * power(Rational(2), static_cast<int>(3 * l + 3 * m)));
}

Rational characteristic_series_coefficient(unsigned n) {
  if (n % 2 != 0) return 0;
  const unsigned half = n / 2;
  const Rational sign = half % 2 == 0 ? 1 : -1;
  return sign * limit_moment(half) / Rational(factorial(n));
}

Rational gaussian_expectation(const RationalPolynomial& f) {
  Rational sum = 0;
  for (int k = 0; k <= f.degree(); k += 2) {
    const Rational& c = f.coefficients()[static_cast<std::size_t>(k)];
    if (c != 0) sum += c * limit_moment(static_cast<unsigned>(k / 2));
  }
  return sum;
}

double gaussian_expectation(const std::function<double(double)>& f, const QuadratureOptions& options) {
  const Integral r = integrate_relative_to_l1([&](double eta) { return f(eta) * GaussianLaw::density(eta); },
                                              -kTruncation, kTruncation, options);
  const double edge = std::max(std::abs(f(kTruncation)), std::abs(f(-kTruncation)));
  const double tail = edge * tail_mass(kTruncation);
  const double residual = r.error + tail;
  const double scale = std::max(1.0, r.l1);
  if (!std::isfinite(r.value) || residual > options.tolerance * scale) {
    std::ostringstream os;
    os << "gaussian_expectation: quadrature did not converge (residual estimate " << residual << ")";
    throw ResourceError(os.str());
  }
  return r.value;
}

GaussRational complex_gaussian_expectation(const BosonSymbol& g) {
  GaussRational sum;
  for (const auto& [powers, c] : g.terms()) {
    if (powers.first != powers.second) continue;
    const unsigned m = powers.first;
    sum += c * GaussRational(Rational(factorial(m)) * power(Rational(2), -static_cast<int>(m)));
  }
  return sum;
}

std::complex<double> complex_gaussian_expectation(
    const std::function<std::complex<double>(std::complex<double>)>& g,
    const QuadratureOptions& options) {
  // (2/pi) exp(-2 r^2) r dr dphi = 4 r exp(-2 r^2) dr * (dphi / 2pi)
  const double r_max = kTruncation;
  auto radial = [&](bool imag_part) {
    return [&, imag_part](double r) {
      const std::complex<double> m = ring_mean(g, r, options.tolerance);
      return 4.0 * r * std::exp(-2.0 * r * r) * (imag_part ? m.imag() : m.real());
    };
  };
  const Integral re = integrate_relative_to_l1(radial(false), 0.0, r_max, options);
  const Integral im = integrate_relative_to_l1(radial(true), 0.0, r_max, options);
  const std::complex<double> value(re.value, im.value);
  const double edge = std::abs(g(std::complex<double>(r_max, 0.0)));
  const double residual = re.error + im.error + edge * std::exp(-2.0 * r_max * r_max);
  if (!std::isfinite(re.value) || !std::isfinite(im.value) ||
      residual > options.tolerance * std::max(1.0, re.l1 + im.l1)) {
    std::ostringstream os;
    os << "complex_gaussian_expectation: quadrature did not converge (residual estimate " << residual
       << ")";
    throw ResourceError(os.str());
  }
  return value;
}

}  // namespace spinboson
