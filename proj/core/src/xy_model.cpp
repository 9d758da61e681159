#include "spinboson/xy_model.hpp"

#include <cmath>
#include <sstream>

#include "sector_kernel.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/theorem_bridge.hpp"
#include "spinboson/thermal_oscillator.hpp"

namespace spinboson {

XYParams::XYParams(Rational gamma, Rational kT) : gamma_(std::move(gamma)), kT_(std::move(kT)) {
  if (kT_ <= 0) throw DomainError("XYParams: kT must be positive, got " + to_string(kT_));
}

std::string ValidityVerdict::describe() const {
  if (passes()) return ferromagnetic ? "pass (ferromagnetic: kT > |gamma|)" : "pass";
  std::string out;
  if (!two_g_below_one) out += "1 > 2*gamma/kT violated (2g = " + to_string(Rational(2 * g)) + ")";
  if (!minus_g_below_one) {
    if (!out.empty()) out += "; ";
    out += "1 > -gamma/kT violated (-g = " + to_string(Rational(-g)) + ")";
    if (ferromagnetic) out += ", i.e. kT > |gamma| fails";
  }
  return out;
}

ValidityVerdict validity_check(const XYParams& params) {
  ValidityVerdict v;
  v.g = params.ratio();
  v.two_g_below_one = 2 * v.g < 1;
  v.minus_g_below_one = -v.g < 1;
  v.ferromagnetic = params.gamma() < 0;
  return v;
}

namespace {

void require_valid(const XYParams& params, const char* what) {
  const auto verdict = validity_check(params);
  if (!verdict.passes()) throw ValidityError(std::string(what) + ": " + verdict.describe());
}

}  // namespace

ThermalValue spin_thermal_expectation(const XYParams& params, unsigned sites, const SpinPolynomial& poly,
                                      const XYOptions& options) {
  if (sites < 1) throw DomainError("spin_thermal_expectation: N must be at least 1");
  const std::uint64_t work = trace_work_estimate(sites, poly);
  if (work > options.trace.work_budget) {
    throw ResourceError("spin_thermal_expectation: estimated work " + std::to_string(work) +
                        " letter steps exceeds budget " + std::to_string(options.trace.work_budget));
  }
  PrecisionGuard guard(options.digits);
  const auto jobs = detail::plan_jobs(poly);

  // Per-job constant factor 1/(4^p 2^z N^{L/2}), split into real/imag parts.
  std::vector<Real> scale_re;
  std::vector<Real> scale_im;
  const Real sqrt_n = boost::multiprecision::sqrt(Real(sites));
  for (const auto& job : jobs) {
    // Evaluate to a Rational first: building a Real from a rational expression
    // template picks an enormous working precision.
    const Rational factor = power(Rational(4), -job.raises) * power(Rational(2), -job.z_count);
    Real s = Real(factor) / boost::multiprecision::pow(sqrt_n, static_cast<int>(job.length));
    scale_re.push_back(s * Real(job.coefficient.real()));
    scale_im.push_back(s * Real(job.coefficient.imag()));
  }

  const Real g_over_n = Real(params.ratio()) / Real(sites);
  Real num_re = 0;
  Real num_im = 0;
  Real den = 0;
  for (int tj = static_cast<int>(sites % 2); tj <= static_cast<int>(sites); tj += 2) {
    const Real mult = Real(irrep_multiplicity(sites, tj));
    const long long casimir4 = static_cast<long long>(tj) * (tj + 2);
    for (int tm = -tj; tm <= tj; tm += 2) {
      // (S+S- + S-S+) eigenvalue 2(j(j+1) - m^2) = (4j(j+1) - 4m^2)/2
      const Real energy = Real(casimir4 - static_cast<long long>(tm) * tm) / 2;
      const Real w = mult * boost::multiprecision::exp(-g_over_n * energy);
      den += w;
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        const BigInt d = detail::scaled_diagonal<BigInt>(jobs[k], tj, tm);
        if (d == 0) continue;
        const Real wd = w * Real(d);
        num_re += wd * scale_re[k];
        num_im += wd * scale_im[k];
      }
    }
  }
  return {num_re / den, num_im / den};
}

Rational effective_boltzmann_ratio(const XYParams& params, BosonOrdering ordering) {
  const Rational g = params.ratio();
  if (ordering == BosonOrdering::Product) {
    require_valid(params, "effective_boltzmann_ratio");
    return normal_ordered_exponential(-g) / 3;
  }
  if (1 + g <= 0) {
    throw ValidityError("effective_boltzmann_ratio: joint ordering needs 1 > -gamma/kT (-g = " +
                        to_string(Rational(-g)) + ")");
  }
  return 1 / (3 + 2 * g);
}

GaussRational boson_thermal_expectation(const XYParams& params, const NormalForm& form, BosonOrdering ordering) {
  const ThermalState image = ThermalState::infinite_temperature_spin_image();
  if (ordering == BosonOrdering::Joint) {
    return thermal_expect(ThermalState(effective_boltzmann_ratio(params, ordering)), form);
  }
  require_valid(params, "boson_thermal_expectation");
  const Rational base = normal_ordered_exponential(-params.ratio());
  return thermal_expect_weighted(image, base, form) /
         thermal_expect_weighted(image, base, NormalForm::identity());
}

QuadraticSurd partition_function(const XYParams& params) {
  require_valid(params, "partition_function");
  const Rational r = 3 / normal_ordered_exponential(-params.ratio());
  return QuadraticSurd::make(r / (r - 1), 1 / r);
}

double effective_temperature(const XYParams& params) {
  if (params.gamma() == 0) {
    throw DomainError("effective_temperature: undefined for gamma = 0 (the oscillator scale 2|gamma| vanishes)");
  }
  require_valid(params, "effective_temperature");
  const Rational r = 3 / normal_ordered_exponential(-params.ratio());
  const double two_gamma = 2.0 * std::abs(params.gamma().convert_to<double>());
  return two_gamma / std::log(r.convert_to<double>());
}

MappedFunction mapped_function(const XYParams& params, const NormalForm& form, WeightSign sign) {
  require_valid(params, "mapped_function");
  const Rational b = normal_ordered_exponential(-params.ratio());
  return {sign == WeightSign::Plus ? b : Rational(1 / b), form};
}

GaussRational mapped_expectation(const MappedFunction& mapped) {
  const ThermalState image = ThermalState::infinite_temperature_spin_image();
  return thermal_expect_weighted(image, mapped.base, mapped.form) /
         thermal_expect_weighted(image, mapped.base, NormalForm::identity());
}

XYSweepRow xy_sweep_row(const XYParams& params, unsigned sites, const SpinPolynomial& poly,
                        const XYOptions& options) {
  XYSweepRow row;
  row.gamma = params.gamma();
  row.kT = params.kT();
  row.g = params.ratio();
  row.valid = validity_check(params).passes();
  if (row.valid) {
    row.partition = partition_function(params);
    if (params.gamma() != 0) row.t_eff = effective_temperature(params);
    if (!poly.contains(SpinLetter::Z)) row.expectation_boson = boson_thermal_expectation(params, boson_image(poly));
  }
  if (sites > 0) row.expectation_spin = spin_thermal_expectation(params, sites, poly, options);
  return row;
}

std::string xy_sweep_csv(const std::vector<XYSweepRow>& rows, unsigned sites, int digits) {
  std::ostringstream os;
  os << "gamma,kT,g,valid,Z,T_eff,expectation_spin(" << sites << "),expectation_boson\n";
  for (const auto& r : rows) {
    os << to_string(r.gamma) << ',' << to_string(r.kT) << ',' << to_string(r.g) << ','
       << (r.valid ? "true" : "false") << ',';
    if (r.partition) {
      PrecisionGuard guard(static_cast<unsigned>(digits) + 20);
      os << r.partition->to_real().str(digits, std::ios_base::fixed);
    }
    os << ',';
    if (r.t_eff) {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(std::min(digits, 15));
      t << *r.t_eff;
      os << t.str();
    }
    os << ',';
    if (r.expectation_spin) os << r.expectation_spin->real.str(digits, std::ios_base::fixed);
    os << ',';
    if (r.expectation_boson) {
      os << (r.expectation_boson->is_real() ? to_decimal(r.expectation_boson->real(), digits)
                                            : to_string(*r.expectation_boson));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace spinboson
