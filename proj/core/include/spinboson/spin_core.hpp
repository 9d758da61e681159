#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinboson/numeric.hpp"
#include "spinboson/spin_polynomial.hpp"

namespace spinboson {

/// One total-spin sector of N spin-1/2 sites: spin j = twice_j/2 with
/// dimension 2j+1, appearing `multiplicity` times.
struct IrrepSpec {
  int twice_j = 0;
  BigInt multiplicity;

  int dimension() const { return twice_j + 1; }
};

/// Number of copies of the spin-j irrep in (C^2)^{\otimes N}:
/// C(N, N/2-j) - C(N, N/2-j-1).
BigInt irrep_multiplicity(unsigned sites, int twice_j);

/// All sectors, ascending in j.
std::vector<IrrepSpec> irrep_decomposition(unsigned sites);

/// Image of a single basis ket under a word, in the orthonormal |j,m> basis.
/// A word maps a basis ket to a multiple of a single basis ket, so the image
/// is `coefficient * sqrt(radicand) |j, m'>`. Ladder amplitudes are kept as
/// squared factors; every edge crossed an even number of times leaves the
/// radicand.
struct WordImage {
  std::optional<int> index;  ///< target basis index; empty for the zero vector
  Rational coefficient{0};
  Rational radicand{1};

  bool is_zero() const { return !index.has_value(); }
  double to_double() const;
};

/// Basis index i <-> m = j - i (index 0 is the highest weight).
WordImage apply_word_in_irrep(const SpinWord& word, int twice_j, int index);

/// Exact value `rational + root_coefficient * sqrt(sites)`. The root part
/// collects odd-length words, whose N^{-L/2} scaling is irrational unless N
/// is a perfect square (in which case it is folded into `rational`).
struct ExactTrace {
  GaussRational rational;
  GaussRational root_coefficient;
  unsigned sites = 1;

  bool is_rational() const { return root_coefficient.is_zero(); }
  std::complex<double> to_complex() const;
  /// Real and imaginary parts evaluated at the current mpfr precision.
  std::pair<Real, Real> to_real() const;
  /// Fixed-point rendering, rounding half to even; "a" or "a+bi".
  std::string to_decimal(int digits) const;

  ExactTrace& operator+=(const ExactTrace& o);
  friend bool operator==(const ExactTrace& a, const ExactTrace& b) {
    return a.sites == b.sites && a.rational == b.rational &&
           a.root_coefficient == b.root_coefficient;
  }
};

/// Scales a raw per-word value by N^{-length/2}, splitting into the rational
/// and sqrt(N) parts.
ExactTrace scale_by_sites(const GaussRational& value, std::size_t word_length, unsigned sites);

/// 2^{-N} tr of a spin polynomial with each letter scaled by 1/sqrt(N).
struct TraceResult {
  ExactTrace exact;                ///< unset when `approximate`
  bool approximate = false;        ///< produced by the binary64 path
  std::complex<double> approx{};   ///< binary64 value (always filled)
  int digits = 12;
  std::string decimal;             ///< rendered at `digits` places

  std::complex<double> value() const { return approx; }
};

struct TraceOptions {
  /// Upper bound on basis-state x letter steps.
  std::uint64_t work_budget = 40'000'000'000ULL;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// binary64 with compensated summation instead of exact arithmetic.
  bool floating = false;
  int digits = 12;
};

TraceResult normalized_trace(unsigned sites, const SpinPolynomial& poly,
                             const TraceOptions& options = {});

/// Estimated letter steps normalized_trace would perform.
std::uint64_t trace_work_estimate(unsigned sites, const SpinPolynomial& poly);

}  // namespace spinboson
