#include "spinboson/theorem_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "spinboson/errors.hpp"
#include "spinboson/thermal_oscillator.hpp"

namespace spinboson {

namespace {

void check_ascending(const std::vector<unsigned>& n_values) {
  if (n_values.empty()) throw DomainError("N list is empty");
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (n_values[k] < 1) throw DomainError("N must be at least 1");
    if (k > 0 && n_values[k] <= n_values[k - 1]) throw DomainError("N list must be strictly ascending");
  }
}

double distance(const ExactTrace& spin, const GaussRational& target) {
  ExactTrace diff = spin;
  diff.rational -= target;
  return std::abs(diff.to_complex());
}

ConvergenceReport build_report(const SpinPolynomial& poly, const GaussRational& target,
                               const std::vector<unsigned>& n_values, const TraceOptions& options) {
  check_ascending(n_values);
  ConvergenceReport report;
  report.n_values = n_values;
  report.boson_value = target;
  for (unsigned n : n_values) {
    TraceResult spin = normalized_trace(n, poly, options);
    const double err = spin.approximate ? std::abs(spin.approx - target.to_complex())
                                        : distance(spin.exact, target);
    report.abs_errors.push_back(err);
    report.spin_values.push_back(std::move(spin));
  }
  report.fitted_rate = fit_power_law_rate(report.n_values, report.abs_errors);
  return report;
}

}  // namespace

BosonSymbol spin_symbol(const SpinPolynomial& poly) {
  BosonSymbol sym;
  for (const auto& [word, coeff] : poly.terms()) {
    if (word.count(SpinLetter::Z) != 0) {
      throw DomainError("boson_image: word " + to_string(word) +
                        " contains Sz; use position_sector for the z component");
    }
    sym.add_term(static_cast<unsigned>(word.count(SpinLetter::Plus)),
                 static_cast<unsigned>(word.count(SpinLetter::Minus)), coeff);
  }
  return sym;
}

NormalForm boson_image(const SpinPolynomial& poly) { return normal_order_symbol(spin_symbol(poly)); }

ConvergenceReport verify_theorem(const SpinPolynomial& poly, const std::vector<unsigned>& n_values,
                                 const TraceOptions& options) {
  const GaussRational target = thermal_expect(ThermalState::infinite_temperature_spin_image(), boson_image(poly));
  return build_report(poly, target, n_values, options);
}

double ordering_sensitivity(const SpinPolynomial& poly, unsigned sites, const TraceOptions& options) {
  double worst = 0.0;
  for (const auto& [word, coeff] : poly.terms()) {
    if (word.size() > 10) {
      throw DomainError("ordering_sensitivity: word " + to_string(word) +
                        " is longer than the 10-letter permutation cap");
    }
    std::vector<SpinLetter> letters = word.letters();
    std::sort(letters.begin(), letters.end());
    std::vector<std::complex<double>> traces;
    do {
      traces.push_back(normalized_trace(sites, SpinPolynomial::word(SpinWord(letters)), options).approx);
    } while (std::next_permutation(letters.begin(), letters.end()));
    double spread = 0.0;
    for (std::size_t a = 0; a < traces.size(); ++a) {
      for (std::size_t b = a + 1; b < traces.size(); ++b) spread = std::max(spread, std::abs(traces[a] - traces[b]));
    }
    worst = std::max(worst, std::abs(coeff.to_complex()) * spread);
  }
  return worst;
}

SpinPolynomial position_polynomial(const RationalPolynomial& f) {
  SpinPolynomial p;
  for (int k = 0; k <= f.degree(); ++k) {
    const Rational& c = f.coefficients()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    p.add_term(SpinWord(std::vector<SpinLetter>(static_cast<std::size_t>(k), SpinLetter::Z)), GaussRational(c));
  }
  return p;
}

ConvergenceReport position_sector(const RationalPolynomial& f, const std::vector<unsigned>& n_values,
                                  const TraceOptions& options) {
  return build_report(position_polynomial(f), GaussRational(ground_position_expectation(f)), n_values, options);
}

std::optional<double> fit_power_law_rate(const std::vector<unsigned>& n_values,
                                         const std::vector<double>& errors) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < std::min(n_values.size(), errors.size()); ++k) {
    if (errors[k] > 0.0 && std::isfinite(errors[k])) {
      xs.push_back(std::log(static_cast<double>(n_values[k])));
      ys.push_back(std::log(errors[k]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return -sxy / sxx;
}

std::string to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["N"] = report.n_values;
  auto spin = nlohmann::ordered_json::array();
  auto exact = nlohmann::ordered_json::array();
  for (const auto& v : report.spin_values) {
    spin.push_back(v.decimal);
    if (v.approximate) {
      exact.push_back(nullptr);
    } else if (v.exact.is_rational()) {
      exact.push_back(to_string(v.exact.rational));
    } else {
      exact.push_back(to_string(v.exact.rational) + " + (" + to_string(v.exact.root_coefficient) + ")*sqrt(" +
                      std::to_string(v.exact.sites) + ")");
    }
  }
  j["spin_value"] = std::move(spin);
  j["spin_exact"] = std::move(exact);
  j["boson_value"] = to_string(report.boson_value);
  j["abs_error"] = report.abs_errors;
  if (report.fitted_rate) {
    j["fitted_rate"] = *report.fitted_rate;
  } else {
    j["fitted_rate"] = nullptr;
  }
  return j.dump();
}

std::string to_csv(const ConvergenceReport& report, int digits) {
  std::ostringstream os;
  os << "N,spin_value,boson_value,abs_error\n";
  const std::string boson = report.boson_value.is_real()
                                ? to_decimal(report.boson_value.real(), digits)
                                : to_string(report.boson_value);
  os.precision(6);
  for (std::size_t k = 0; k < report.n_values.size(); ++k) {
    os << report.n_values[k] << ',' << report.spin_values[k].decimal << ',' << boson << ','
       << std::scientific << report.abs_errors[k] << std::defaultfloat << '\n';
  }
  return os.str();
}

}  // namespace spinboson
