#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinboson/boson_core.hpp"
#include "spinboson/numeric.hpp"
#include "spinboson/spin_core.hpp"

namespace spinboson {

/// Coupling gamma (units of hbar, any sign) and temperature kT (k_B = 1),
/// both exact. Only the ratio g = gamma/kT enters the bosonic side.
class XYParams {
 public:
  /// Requires kT > 0.
  XYParams(Rational gamma, Rational kT);

  const Rational& gamma() const { return gamma_; }
  const Rational& kT() const { return kT_; }
  Rational ratio() const { return gamma_ / kT_; }

 private:
  Rational gamma_;
  Rational kT_;
};

/// The two conditions 1 > 2 gamma/kT and 1 > -gamma/kT. For ferromagnetic
/// coupling (gamma < 0) the second reads kT > |gamma|.
struct ValidityVerdict {
  bool two_g_below_one = true;
  bool minus_g_below_one = true;
  bool ferromagnetic = false;
  Rational g;

  bool passes() const { return two_g_below_one && minus_g_below_one; }
  /// "pass" or the violated bounds, e.g. "1 > 2g violated (2g = 4/3)".
  std::string describe() const;
};

ValidityVerdict validity_check(const XYParams& params);

struct ThermalValue {
  Real real;
  Real imag;
};

struct XYOptions {
  /// mpfr working precision for the Boltzmann factors.
  unsigned digits = 50;
  TraceOptions trace;
};

/// tr[exp(-H/kT) poly] / tr[exp(-H/kT)] for H = (gamma/N)(S+S- + S-S+) on N
/// sites, evaluated sector by sector. H is diagonal in |j,m> with eigenvalue
/// (gamma/N) 2 (j(j+1) - m^2); the polynomial part stays exact and only the
/// Boltzmann factors are rounded.
ThermalValue spin_thermal_expectation(const XYParams& params, unsigned sites, const SpinPolynomial& poly,
                                      const XYOptions& options = {});

/// How the Boltzmann factor and f are combined on the bosonic side.
enum class BosonOrdering {
  /// (1-2g)^{a^dagger a} N f, weighting the x = 1/3 state: the closed form
  /// used for the partition function and effective temperature.
  Product,
  /// N[exp(-2g |z|^2) f] taken as a single symbol. This is the large-N limit of
  /// the spin side; it equals a thermal state with x = 1/(3+2g).
  Joint,
};

/// Normalized bosonic expectation of N f. Product ordering requires
/// validity_check to pass; Joint ordering requires only 1 + g > 0.
GaussRational boson_thermal_expectation(const XYParams& params, const NormalForm& form,
                                        BosonOrdering ordering = BosonOrdering::Product);

/// Boltzmann ratio of the single-mode state the XY model maps onto.
/// Product: (1-2g)/3. Joint: 1/(3+2g).
Rational effective_boltzmann_ratio(const XYParams& params, BosonOrdering ordering);

/// Z = tr exp(-ln r (a^dagger a + 1/2)) with r = 3/(1-2g):
/// Z = r^{-1/2} / (1 - 1/r). Throws ValidityError outside the valid region.
QuadraticSurd partition_function(const XYParams& params);

/// k_B T_eff = 2|gamma| / ln(3/(1-2g)), with hbar omega_0 = 2|gamma| the
/// low-excitation oscillator scale. Undefined for gamma = 0.
double effective_temperature(const XYParams& params);

/// Sign of the number-operator weight exp(+-ln(1-2g) a^dagger a).
enum class WeightSign { Plus, Minus };

/// base^{a^dagger a} N f, to be averaged in the x = 1/3 state.
struct MappedFunction {
  Rational base;
  NormalForm form;
};

/// Plus reproduces boson_thermal_expectation(Product); Minus is the literal
/// printed weight and does not.
MappedFunction mapped_function(const XYParams& params, const NormalForm& form,
                               WeightSign sign = WeightSign::Plus);

/// thermal_expect_weighted(x=1/3, base, form) / thermal_expect_weighted(x=1/3, base, 1)
GaussRational mapped_expectation(const MappedFunction& mapped);

/// One row of a parameter sweep.
struct XYSweepRow {
  Rational gamma;
  Rational kT;
  Rational g;
  bool valid = false;
  std::optional<QuadraticSurd> partition;
  std::optional<double> t_eff;
  std::optional<ThermalValue> expectation_spin;
  std::optional<GaussRational> expectation_boson;
};

XYSweepRow xy_sweep_row(const XYParams& params, unsigned sites, const SpinPolynomial& poly,
                        const XYOptions& options = {});

/// Columns gamma,kT,g,valid,Z,T_eff,expectation_spin(N),expectation_boson.
std::string xy_sweep_csv(const std::vector<XYSweepRow>& rows, unsigned sites, int digits = 12);

}  // namespace spinboson
