#include "spinboson_cli/parser.hpp"

#include <cctype>

#include "spinboson/errors.hpp"

namespace spinboson::cli {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SpinPolynomial parse() {
    SpinPolynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SpinPolynomial expr() {
    SpinPolynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  SpinPolynomial term() {
    SpinPolynomial acc = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const SpinPolynomial d = unary();
        if (d.is_zero()) fail_at("division by zero", at);
        if (d.degree() != 0) fail_at("division by a non-constant expression", at);
        acc *= GaussRational(1) / d.coefficient(SpinWord());
      } else {
        return acc;
      }
    }
  }

  SpinPolynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SpinPolynomial power() {
    SpinPolynomial base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    if (pos_ - start > 4) fail_at("exponent too large", start);
    return base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
  }

  SpinPolynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SpinPolynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == 'S') {
      const std::size_t at = pos_++;
      skip_space();
      if (pos_ < text_.size()) {
        switch (text_[pos_]) {
          case '+': ++pos_; return SpinPolynomial::plus();
          case '-': ++pos_; return SpinPolynomial::minus();
          case 'z': ++pos_; return SpinPolynomial::z();
          case 'x': ++pos_; return SpinPolynomial::x();
          case 'y': ++pos_; return SpinPolynomial::y();
          default: break;
        }
      }
      fail_at("unknown identifier, expected S+, S-, Sz, Sx or Sy", at);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(at, pos_ - at);
      if (name == "i") return SpinPolynomial::constant(GaussRational::i());
      fail_at("unknown identifier '" + std::string(name) + "'", at);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  SpinPolynomial number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        pos_ = probe;
        digits();
      }
    }
    try {
      return SpinPolynomial::constant(parse_rational(text_.substr(start, pos_ - start)));
    } catch (const DomainError&) {
      fail_at("malformed number", start);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_coefficient(const GaussRational& c) {
  const std::string re = to_string(c.real());
  if (c.is_real()) return re;
  const std::string im = to_string(c.imag()) + "*i";
  if (c.real() == 0) return im;
  return re + (c.imag() > 0 ? "+" : "") + im;
}

}  // namespace

SpinPolynomial parse_polynomial(std::string_view expr) { return Parser(expr).parse(); }

std::string render_polynomial(const SpinPolynomial& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  for (const auto& [word, c] : poly.terms()) {
    if (!out.empty()) out += " + ";
    if (word.empty()) {
      out += "(" + render_coefficient(c) + ")";
    } else if (c == GaussRational(1)) {
      out += to_string(word);
    } else {
      out += "(" + render_coefficient(c) + ")*" + to_string(word);
    }
  }
  return out;
}

}  // namespace spinboson::cli
