#include "spinboson_cli/app.hpp"

#include <algorithm>
#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "spinboson/dense_oracle.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/moments_gaussian.hpp"
#include "spinboson/theorem_bridge.hpp"
#include "spinboson/thermal_oscillator.hpp"
#include "spinboson/xy_model.hpp"
#include "spinboson_cli/parser.hpp"

namespace spinboson::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kCommands[] = {"trace", "moments", "verify", "xy", "normal-order", "oracle"};
constexpr const char* kDefaultXYExpr = "S+*S- + S-*S+";
constexpr unsigned kDefaultXYSites = 64;

std::vector<unsigned> site_list(const RunConfig& c) {
  if (!c.n_list.empty()) return c.n_list;
  if (c.n) return {*c.n};
  throw DomainError(c.command + ": --n or --n-list is required");
}

std::string exact_string(const ExactTrace& t) {
  if (t.is_rational()) return to_string(t.rational);
  return to_string(t.rational) + " + (" + to_string(t.root_coefficient) + ")*sqrt(" + std::to_string(t.sites) + ")";
}

std::string real_string(const Real& r, int digits) { return r.str(digits, std::ios_base::fixed); }

std::string thermal_string(const ThermalValue& v, int digits) {
  if (v.imag == 0) return real_string(v.real, digits);
  const std::string im = real_string(abs(v.imag), digits);
  return real_string(v.real, digits) + (v.imag < 0 ? "-" : "+") + im + "i";
}

std::string gauss_decimal(const GaussRational& g, int digits) {
  if (g.is_real()) return to_decimal(g.real(), digits);
  const std::string im = to_decimal(abs(g.imag()), digits);
  return to_decimal(g.real(), digits) + (g.imag() < 0 ? "-" : "+") + im + "i";
}

std::string surd_string(const QuadraticSurd& s, int digits) {
  PrecisionGuard guard(static_cast<unsigned>(digits) + 20);
  return real_string(s.to_real(), digits);
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(std::min(digits, 15));
  os << v;
  return os.str();
}

TraceOptions trace_options(const RunConfig& c) {
  TraceOptions o;
  o.threads = c.threads;
  o.floating = c.floating;
  o.digits = c.digits;
  return o;
}

Json base_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["inputs"] = Json::object();
  j["results"] = Json::array();
  return j;
}

// Each command fills `doc` and returns the text and csv renderings.
struct Rendered {
  Json doc;
  std::string text;
  std::string csv;
};

Rendered run_trace(const RunConfig& c) {
  const SpinPolynomial poly = parse_polynomial(c.expr);
  const auto ns = site_list(c);
  Rendered r{base_json(c), {}, "N,value,exact\n"};
  r.doc["inputs"] = {{"expr", c.expr}, {"canonical", render_polynomial(poly)}, {"N", ns},
                     {"digits", c.digits}, {"float", c.floating}};
  std::ostringstream text;
  for (unsigned n : ns) {
    const TraceResult t = normalized_trace(n, poly, trace_options(c));
    const std::string exact = t.approximate ? "" : exact_string(t.exact);
    Json row = {{"N", n}, {"value", t.decimal}};
    row["exact"] = t.approximate ? Json(nullptr) : Json(exact);
    row["approximate"] = t.approximate;
    r.doc["results"].push_back(row);
    text << "N=" << n << " trace=" << t.decimal << (t.approximate ? " (binary64 approximation)" : "") << '\n';
    r.csv += std::to_string(n) + ',' + t.decimal + ',' + exact + '\n';
  }
  r.text = text.str();
  return r;
}

Rendered run_moments(const RunConfig& c) {
  Rendered r{base_json(c), {}, {}};
  r.doc["inputs"] = {{"max_l", c.max_l}, {"digits", c.digits}};
  const SpinPolynomial x = SpinPolynomial::x();
  if (c.n) r.doc["inputs"]["N"] = *c.n;
  r.csv = c.n ? "l,limit_moment,decimal,trace_N" + std::to_string(*c.n) + "\n" : "l,limit_moment,decimal\n";
  std::ostringstream text;
  for (unsigned l = 0; l <= c.max_l; ++l) {
    const Rational m = limit_moment(l);
    Json row = {{"l", l}, {"limit_moment", to_string(m)}, {"decimal", to_decimal(m, c.digits)}};
    text << "l=" << l << " limit_moment=" << to_string(m) << " (" << to_decimal(m, c.digits) << ")";
    std::string csv_row = std::to_string(l) + ',' + to_string(m) + ',' + to_decimal(m, c.digits);
    if (c.n) {
      const TraceResult t = normalized_trace(*c.n, x.pow(2 * l), trace_options(c));
      row["trace"] = t.decimal;
      text << " trace(N=" << *c.n << ")=" << t.decimal;
      csv_row += ',' + t.decimal;
    }
    r.doc["results"].push_back(row);
    text << '\n';
    r.csv += csv_row + '\n';
  }
  r.text = text.str();
  return r;
}

// Polynomials made only of Sz words are routed to the position sector.
std::optional<RationalPolynomial> as_position_polynomial(const SpinPolynomial& poly) {
  std::vector<Rational> coeffs;
  for (const auto& [word, c] : poly.terms()) {
    if (word.count(SpinLetter::Z) != word.size() || !c.is_real()) return std::nullopt;
    if (coeffs.size() <= word.size()) coeffs.resize(word.size() + 1);
    coeffs[word.size()] = c.real();
  }
  if (poly.is_zero() || poly.contains(SpinLetter::Plus) || poly.contains(SpinLetter::Minus)) return std::nullopt;
  return RationalPolynomial(std::move(coeffs));
}

Rendered run_verify(const RunConfig& c) {
  const SpinPolynomial poly = parse_polynomial(c.expr);
  const auto ns = site_list(c);
  const auto position = as_position_polynomial(poly);
  const ConvergenceReport rep =
      position ? position_sector(*position, ns, trace_options(c)) : verify_theorem(poly, ns, trace_options(c));
  Rendered r{base_json(c), {}, to_csv(rep, c.digits)};
  r.doc["inputs"] = {{"expr", c.expr}, {"canonical", render_polynomial(poly)}, {"N", ns},
                     {"sector", position ? "position" : "ladder"}, {"digits", c.digits}};
  std::ostringstream text;
  const std::string boson = to_string(rep.boson_value);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const TraceResult& t = rep.spin_values[k];
    Json row = {{"N", ns[k]}, {"spin_value", t.decimal}};
    row["spin_exact"] = t.approximate ? Json(nullptr) : Json(exact_string(t.exact));
    row["boson_value"] = boson;
    row["abs_error"] = rep.abs_errors[k];
    r.doc["results"].push_back(row);
    text << "N=" << ns[k] << " spin=" << t.decimal << " boson=" << boson << " abs_error=" << rep.abs_errors[k]
         << '\n';
  }
  r.doc["summary"] = {{"boson_value", boson}};
  r.doc["summary"]["fitted_rate"] = rep.fitted_rate ? Json(*rep.fitted_rate) : Json(nullptr);
  if (rep.fitted_rate) text << "fitted_rate=" << *rep.fitted_rate << '\n';
  r.text = text.str();
  return r;
}

Rendered run_xy(const RunConfig& c) {
  if (c.gamma.empty() || c.kt.empty()) throw DomainError("xy: --gamma and --kt are required");
  const std::string expr = c.expr.empty() ? kDefaultXYExpr : c.expr;
  const SpinPolynomial poly = parse_polynomial(expr);
  const unsigned sites = c.n ? *c.n : !c.n_list.empty() ? c.n_list.front() : kDefaultXYSites;
  XYOptions options;
  options.digits = std::max(50u, static_cast<unsigned>(c.digits) + 10);
  options.trace = trace_options(c);
  PrecisionGuard guard(options.digits);
  const std::optional<NormalForm> image =
      poly.contains(SpinLetter::Z) ? std::nullopt : std::optional<NormalForm>(boson_image(poly));

  Rendered r{base_json(c), {}, {}};
  r.doc["inputs"] = {{"expr", expr}, {"canonical", render_polynomial(poly)}, {"N", sites},
                     {"gamma", c.gamma}, {"kT", c.kt}, {"digits", c.digits}};
  std::vector<XYSweepRow> rows;
  std::ostringstream text;
  for (const auto& gs : c.gamma) {
    for (const auto& ks : c.kt) {
      const XYParams params(parse_rational(gs), parse_rational(ks));
      const ValidityVerdict verdict = validity_check(params);
      XYSweepRow row = xy_sweep_row(params, sites, poly, options);
      Json j = {{"gamma", to_string(row.gamma)}, {"kT", to_string(row.kT)}, {"g", to_string(row.g)},
                {"valid", row.valid}, {"validity", verdict.describe()}};
      text << "gamma=" << to_string(row.gamma) << " kT=" << to_string(row.kT) << " g=" << to_string(row.g)
           << " validity=" << verdict.describe();
      j["Z"] = row.partition ? Json(surd_string(*row.partition, c.digits)) : Json(nullptr);
      if (row.partition) text << " Z=" << to_string(*row.partition);
      j["T_eff"] = row.t_eff ? Json(*row.t_eff) : Json(nullptr);
      if (row.t_eff) text << " T_eff=" << fixed(*row.t_eff, c.digits);
      const std::string spin = thermal_string(*row.expectation_spin, c.digits);
      j["expectation_spin"] = spin;
      text << " spin(N=" << sites << ")=" << spin;
      j["expectation_boson"] = row.expectation_boson ? Json(gauss_decimal(*row.expectation_boson, c.digits))
                                                     : Json(nullptr);
      if (row.expectation_boson) text << " boson=" << gauss_decimal(*row.expectation_boson, c.digits);
      j["expectation_boson_joint"] = nullptr;
      if (image && 1 + params.ratio() > 0) {
        const std::string joint =
            gauss_decimal(boson_thermal_expectation(params, *image, BosonOrdering::Joint), c.digits);
        j["expectation_boson_joint"] = joint;
        text << " boson_joint=" << joint;
      }
      text << '\n';
      r.doc["results"].push_back(j);
      rows.push_back(std::move(row));
    }
  }
  r.csv = xy_sweep_csv(rows, sites, c.digits);
  r.text = text.str();
  return r;
}

Rendered run_normal_order(const RunConfig& c) {
  const SpinPolynomial poly = parse_polynomial(c.expr);
  const BosonSymbol sym = spin_symbol(poly);
  const NormalForm form = normal_order_symbol(sym);
  const GaussRational value = thermal_expect(ThermalState::infinite_temperature_spin_image(), form);
  Rendered r{base_json(c), {}, "m,n,coefficient\n"};
  r.doc["inputs"] = {{"expr", c.expr}, {"canonical", render_polynomial(poly)}};
  for (const auto& [mn, coeff] : form.terms()) {
    r.doc["results"].push_back({{"m", mn.first}, {"n", mn.second}, {"coefficient", to_string(coeff)}});
    r.csv += std::to_string(mn.first) + ',' + std::to_string(mn.second) + ',' + to_string(coeff) + '\n';
  }
  r.doc["summary"] = {{"symbol", to_string(sym)},
                      {"normal_form", to_string(form)},
                      {"thermal_expectation", to_string(value)}};
  r.text = "symbol: " + to_string(sym) + "\nnormal form: " + to_string(form) +
           "\nthermal expectation (x=1/3): " + to_string(value) + '\n';
  return r;
}

Rendered run_oracle(const RunConfig& c) {
  const SpinPolynomial poly = parse_polynomial(c.expr);
  const auto ns = site_list(c);
  Rendered r{base_json(c), {}, "N,engine,oracle,match\n"};
  r.doc["inputs"] = {{"expr", c.expr}, {"canonical", render_polynomial(poly)}, {"N", ns},
                     {"oracle_cap", c.oracle_cap}};
  std::ostringstream text;
  std::vector<unsigned> mismatches;
  for (unsigned n : ns) {
    TraceOptions opts = trace_options(c);
    opts.floating = false;
    const TraceResult engine = normalized_trace(n, poly, opts);
    const TraceResult oracle = dense_oracle_trace(n, poly, {.site_cap = c.oracle_cap, .digits = c.digits});
    const bool match = engine.exact == oracle.exact;
    if (!match) mismatches.push_back(n);
    r.doc["results"].push_back({{"N", n},
                                {"engine", exact_string(engine.exact)},
                                {"oracle", exact_string(oracle.exact)},
                                {"match", match}});
    text << "N=" << n << " engine=" << engine.decimal << " oracle=" << oracle.decimal
         << (match ? " match" : " MISMATCH") << '\n';
    r.csv += std::to_string(n) + ',' + exact_string(engine.exact) + ',' + exact_string(oracle.exact) + ',' +
             (match ? "true" : "false") + '\n';
  }
  if (!mismatches.empty()) {
    throw DomainError("oracle: engine and dense oracle disagree at N=" + std::to_string(mismatches.front()));
  }
  r.text = text.str();
  return r;
}

std::vector<unsigned> parse_site_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v == 0 || v > 1'000'000) throw DomainError("invalid N value '" + item + "'");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

std::vector<std::string> split_values(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& chunk : raw) {
    std::stringstream ss(chunk);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

}  // namespace

void validate(const RunConfig& c) {
  if (std::find(std::begin(kCommands), std::end(kCommands), c.command) == std::end(kCommands)) {
    throw DomainError("unknown command '" + c.command + "'");
  }
  if (c.digits < 0 || c.digits > 1000) throw DomainError("--digits must be in [0, 1000]");
  const bool needs_expr = c.command == "trace" || c.command == "verify" || c.command == "normal-order" ||
                          c.command == "oracle";
  if (needs_expr && c.expr.empty()) throw DomainError(c.command + ": --expr is required");
  if ((c.command == "trace" || c.command == "verify" || c.command == "oracle") && c.n_list.empty() && !c.n) {
    throw DomainError(c.command + ": --n or --n-list is required");
  }
  if (c.command == "moments" && !c.n_list.empty()) {
    throw DomainError("moments: takes a single --n for the finite-N column, not --n-list");
  }
  if (c.n && *c.n == 0) throw DomainError("--n must be at least 1");
  for (unsigned n : c.n_list) {
    if (n == 0) throw DomainError("--n-list entries must be at least 1");
  }
  for (const auto& s : c.gamma) parse_rational(s);
  for (const auto& s : c.kt) {
    if (parse_rational(s) <= 0) throw DomainError("--kt must be positive, got " + s);
  }
}

std::string execute(const RunConfig& c) {
  validate(c);
  Rendered r;
  if (c.command == "trace") r = run_trace(c);
  else if (c.command == "moments") r = run_moments(c);
  else if (c.command == "verify") r = run_verify(c);
  else if (c.command == "xy") r = run_xy(c);
  else if (c.command == "normal-order") r = run_normal_order(c);
  else r = run_oracle(c);
  switch (c.format) {
    case OutputFormat::Json: return r.doc.dump(2) + '\n';
    case OutputFormat::Csv: return r.csv;
    case OutputFormat::Text: break;
  }
  return r.text;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string result = execute(config);
    if (config.out.empty()) {
      out << result;
    } else {
      std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
      if (!file) throw DomainError("cannot open output file '" + config.out + "'");
      file << result;
    }
    return 0;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact collective-spin traces and their bosonic large-N images"};
  app.set_config("--config", "", "File of key=value lines using the flag names; command-line flags win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig c;
  std::optional<unsigned> n;
  std::vector<std::string> n_list, gamma, kt;
  std::string format = "text";
  app.add_option("--expr", c.expr, "Polynomial in S+, S-, Sz, Sx, Sy, e.g. \"(S+*S- + S-*S+)^5\"");
  app.add_option("--n", n, "Number of spin-1/2 sites");
  app.add_option("--n-list", n_list, "Comma-separated site counts, ascending for verify")->delimiter(',');
  app.add_option("--gamma", gamma, "XY coupling(s), comma-separated rationals or decimals")->delimiter(',');
  app.add_option("--kt", kt, "Temperature(s) k_B T, comma-separated, positive")->delimiter(',');
  app.add_option("--max-l", c.max_l, "Largest moment order for `moments`")->capture_default_str();
  app.add_option("--digits", c.digits, "Decimal places in rendered values")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", c.out, "Write output to this file instead of standard output");
  app.add_option("--oracle-cap", c.oracle_cap, "Largest N accepted by the dense oracle")->capture_default_str();
  app.add_flag("--float", c.floating, "Use the binary64 path (results are labelled approximate)");
  app.add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();

  app.add_subcommand("trace", "Normalized trace 2^-N tr f(S+/sqrt N, S-/sqrt N, Sz/sqrt N)");
  app.add_subcommand("moments", "Gaussian limit moments (2l)!/(2^3l l!), optionally with finite-N traces");
  app.add_subcommand("verify", "Spin traces against the thermal-oscillator value over a list of N");
  app.add_subcommand("xy", "XY model validity, partition function, effective temperature and expectations");
  app.add_subcommand("normal-order", "Commuting symbol, normal form and thermal expectation of a polynomial");
  app.add_subcommand("oracle", "Compare the sector engine with the dense tensor-product oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.n = n;
    std::string joined;
    for (const auto& part : n_list) joined += (joined.empty() ? "" : ",") + part;
    c.n_list = parse_site_list(joined);
    c.gamma = split_values(gamma);
    c.kt = split_values(kt);
    c.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Text;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return dispatch(c, out, err);
}

}  // namespace spinboson::cli
