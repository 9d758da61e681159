#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinboson/boson_core.hpp"
#include "spinboson/numeric.hpp"
#include "spinboson/spin_core.hpp"

namespace spinboson {

/// Finite-N spin traces against their exact large-N bosonic value.
struct ConvergenceReport {
  std::vector<unsigned> n_values;
  std::vector<TraceResult> spin_values;
  GaussRational boson_value;
  std::vector<double> abs_errors;
  /// -slope of the least-squares line through (log N, log error); empty when
  /// fewer than two errors are nonzero.
  std::optional<double> fitted_rate;
};

/// Commutative image of a Plus/Minus polynomial: S+/sqrt(N) -> z*,
/// S-/sqrt(N) -> z. Letter order within a word is discarded.
BosonSymbol spin_symbol(const SpinPolynomial& poly);

/// normal_order_symbol(spin_symbol(poly)). Throws DomainError if a Z letter is
/// present (that sector maps to position_sector instead).
NormalForm boson_image(const SpinPolynomial& poly);

/// Spin side via normalized_trace, boson side via thermal_expect in the
/// x = 1/3 state. `n_values` must be strictly ascending.
ConvergenceReport verify_theorem(const SpinPolynomial& poly, const std::vector<unsigned>& n_values,
                                 const TraceOptions& options = {});

/// Largest |coeff| * |tr(w_a) - tr(w_b)| over all distinct reorderings w_a,
/// w_b of each term's letters. Words longer than 10 letters are refused.
double ordering_sensitivity(const SpinPolynomial& poly, unsigned sites,
                            const TraceOptions& options = {});

/// f(Sz/sqrt(N)) as a spin polynomial.
SpinPolynomial position_polynomial(const RationalPolynomial& f);

/// Spin side normalized_trace(f(Sz/sqrt(N))) against the ground-oscillator
/// position expectation.
ConvergenceReport position_sector(const RationalPolynomial& f, const std::vector<unsigned>& n_values,
                                  const TraceOptions& options = {});

std::optional<double> fit_power_law_rate(const std::vector<unsigned>& n_values,
                                         const std::vector<double>& errors);

/// {"N": [...], "spin_value": [...], "spin_exact": [...], "boson_value": ...,
///  "abs_error": [...], "fitted_rate": ...}
std::string to_json(const ConvergenceReport& report);
/// Header "N,spin_value,boson_value,abs_error", one row per N.
std::string to_csv(const ConvergenceReport& report, int digits = 12);

}  // namespace spinboson
