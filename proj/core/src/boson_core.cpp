#include "spinboson/boson_core.hpp"

#include <algorithm>

#include <json.hpp>

#include "spinboson/errors.hpp"

namespace spinboson {

namespace {

void add_to(BosonTermMap& terms, unsigned m, unsigned n, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace({m, n}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

std::string render_terms(const BosonTermMap& terms, const char* create, const char* annihilate) {
  if (terms.empty()) return "0";
  std::string out;
  // Highest total degree first, then by creation power.
  std::vector<std::pair<PowerPair, GaussRational>> sorted(terms.begin(), terms.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const auto da = a.first.first + a.first.second;
    const auto db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  for (const auto& [p, c] : sorted) {
    std::vector<std::string> pieces;
    const bool bare = p.first == 0 && p.second == 0;
    if (bare || c != GaussRational(1)) pieces.push_back(c.is_real() ? to_string(c) : "(" + to_string(c) + ")");
    if (p.first != 0) pieces.push_back(std::string(create) + "^" + std::to_string(p.first));
    if (p.second != 0) pieces.push_back(std::string(annihilate) + "^" + std::to_string(p.second));
    if (!out.empty()) out += " + ";
    for (std::size_t k = 0; k < pieces.size(); ++k) out += (k == 0 ? "" : " ") + pieces[k];
  }
  return out;
}

std::string terms_to_json(const BosonTermMap& terms) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [p, c] : terms) j[std::to_string(p.first) + "," + std::to_string(p.second)] = to_string(c);
  return j.dump();
}

BosonTermMap terms_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("invalid term-map JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("term-map JSON must be an object keyed by \"m,n\"");
  BosonTermMap terms;
  for (const auto& [key, value] : j.items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw DomainError("term-map key '" + key + "' is not \"m,n\"");
    unsigned m = 0;
    unsigned n = 0;
    try {
      m = static_cast<unsigned>(std::stoul(key.substr(0, comma)));
      n = static_cast<unsigned>(std::stoul(key.substr(comma + 1)));
    } catch (const std::exception&) {
      throw DomainError("term-map key '" + key + "' is not \"m,n\"");
    }
    if (!value.is_string()) throw DomainError("term-map coefficient for '" + key + "' must be a string");
    add_to(terms, m, n, parse_gauss_rational(value.get<std::string>()));
  }
  return terms;
}

}  // namespace

// BosonSymbol

BosonSymbol BosonSymbol::constant(const GaussRational& c) { return monomial(0, 0, c); }

BosonSymbol BosonSymbol::monomial(unsigned m, unsigned n, const GaussRational& c) {
  BosonSymbol s;
  s.add_term(m, n, c);
  return s;
}

GaussRational BosonSymbol::coefficient(unsigned m, unsigned n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? GaussRational() : it->second;
}

void BosonSymbol::add_term(unsigned m, unsigned n, const GaussRational& c) { add_to(terms_, m, n, c); }

BosonSymbol BosonSymbol::pow(unsigned exponent) const {
  BosonSymbol r = constant(GaussRational(1));
  for (unsigned k = 0; k < exponent; ++k) r *= *this;
  return r;
}

BosonSymbol& BosonSymbol::operator+=(const BosonSymbol& o) {
  for (const auto& [p, c] : o.terms_) add_term(p.first, p.second, c);
  return *this;
}

BosonSymbol& BosonSymbol::operator-=(const BosonSymbol& o) {
  for (const auto& [p, c] : o.terms_) add_term(p.first, p.second, -c);
  return *this;
}

BosonSymbol& BosonSymbol::operator*=(const BosonSymbol& o) {
  BosonTermMap out;
  for (const auto& [pa, ca] : terms_) {
    for (const auto& [pb, cb] : o.terms_) add_to(out, pa.first + pb.first, pa.second + pb.second, ca * cb);
  }
  terms_ = std::move(out);
  return *this;
}

BosonSymbol& BosonSymbol::operator*=(const GaussRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

// NormalForm

NormalForm NormalForm::monomial(unsigned m, unsigned n, const GaussRational& c) {
  NormalForm f;
  f.add_term(m, n, c);
  return f;
}

GaussRational NormalForm::coefficient(unsigned m, unsigned n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? GaussRational() : it->second;
}

void NormalForm::add_term(unsigned m, unsigned n, const GaussRational& c) { add_to(terms_, m, n, c); }

NormalForm NormalForm::adjoint() const {
  NormalForm out;
  for (const auto& [p, c] : terms_) out.add_term(p.second, p.first, c.conj());
  return out;
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  for (const auto& [p, c] : o.terms_) add_term(p.first, p.second, c);
  return *this;
}

NormalForm& NormalForm::operator*=(const GaussRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

std::string to_string(const NormalForm& form) { return render_terms(form.terms(), "ad", "a"); }
std::string to_string(const BosonSymbol& sym) { return render_terms(sym.terms(), "z*", "z"); }

std::string to_json(const NormalForm& form) { return terms_to_json(form.terms()); }
std::string to_json(const BosonSymbol& sym) { return terms_to_json(sym.terms()); }

NormalForm normal_form_from_json(const std::string& json) {
  NormalForm f;
  for (const auto& [p, c] : terms_from_json(json)) f.add_term(p.first, p.second, c);
  return f;
}

BosonSymbol boson_symbol_from_json(const std::string& json) {
  BosonSymbol s;
  for (const auto& [p, c] : terms_from_json(json)) s.add_term(p.first, p.second, c);
  return s;
}

NormalForm normal_order_symbol(const BosonSymbol& sym) {
  NormalForm f;
  for (const auto& [p, c] : sym.terms()) f.add_term(p.first, p.second, c);
  return f;
}

// Words and Wick reordering

OperatorWord OperatorWord::normal(unsigned m, unsigned n) {
  std::vector<BosonLetter> l(m, BosonLetter::Create);
  l.insert(l.end(), n, BosonLetter::Annihilate);
  return OperatorWord(std::move(l));
}

OperatorWord OperatorWord::number_power(unsigned l) {
  std::vector<BosonLetter> letters;
  for (unsigned k = 0; k < l; ++k) {
    letters.push_back(BosonLetter::Create);
    letters.push_back(BosonLetter::Annihilate);
  }
  return OperatorWord(std::move(letters));
}

OperatorWord OperatorWord::adjoint() const {
  std::vector<BosonLetter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = l == BosonLetter::Create ? BosonLetter::Annihilate : BosonLetter::Create;
  return OperatorWord(std::move(out));
}

NormalForm wick_reorder(const OperatorWord& word) {
  using Letters = std::vector<BosonLetter>;
  std::map<Letters, BigInt> pending{{word.letters(), BigInt(1)}};
  NormalForm result;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Letters& w = node.key();
    const BigInt& c = node.mapped();
    std::size_t pos = w.size();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == BosonLetter::Annihilate && w[i + 1] == BosonLetter::Create) {
        pos = i;
        break;
      }
    }
    if (pos == w.size()) {
      const auto m = static_cast<unsigned>(std::count(w.begin(), w.end(), BosonLetter::Create));
      result.add_term(m, static_cast<unsigned>(w.size()) - m, GaussRational(Rational(c)));
      continue;
    }
    Letters swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    Letters contracted = w;
    contracted.erase(contracted.begin() + static_cast<std::ptrdiff_t>(pos),
                     contracted.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
    pending[std::move(swapped)] += c;
    pending[std::move(contracted)] += c;
  }
  return result;
}

// Stirling numbers

BigInt stirling_first_signed(unsigned n, unsigned l) {
  if (l > n) {
    throw DomainError("stirling_first_signed: l=" + std::to_string(l) + " outside [0, " +
                      std::to_string(n) + "]");
  }
  std::vector<BigInt> row{BigInt(1)};  // n = 0
  for (unsigned k = 0; k < n; ++k) {
    std::vector<BigInt> next(row.size() + 1, BigInt(0));
    for (std::size_t i = 0; i < row.size(); ++i) {
      next[i + 1] += row[i];
      next[i] -= row[i] * k;
    }
    row = std::move(next);
  }
  return row[l];
}

RationalPolynomial number_polynomial(unsigned n) {
  std::vector<Rational> coeffs(n + 1, Rational(0));
  const Rational scale = power(Rational(2), static_cast<int>(n));
  for (unsigned l = 0; l <= n; ++l) coeffs[l] = scale * Rational(stirling_first_signed(n, l));
  return RationalPolynomial(std::move(coeffs));
}

NormalForm number_polynomial_normal_form(const RationalPolynomial& p) {
  NormalForm out;
  for (int l = 0; l <= p.degree(); ++l) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(l)];
    if (c == 0) continue;
    out += wick_reorder(OperatorWord::number_power(static_cast<unsigned>(l))) * GaussRational(c);
  }
  return out;
}

Rational normal_ordered_exponential(const Rational& c) {
  Rational base = 1 + 2 * c;
  if (base <= 0) {
    throw ValidityError("normal_ordered_exponential: 1 + 2c = " + to_string(base) +
                        " is not positive; the number-operator power is undefined");
  }
  return base;
}

}  // namespace spinboson
