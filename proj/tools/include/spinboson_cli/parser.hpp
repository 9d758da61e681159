#pragma once

#include <string>
#include <string_view>

#include "spinboson/spin_polynomial.hpp"

namespace spinboson::cli {

/// Grammar (whitespace-insensitive):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?
///   primary := number | 'S+' | 'S-' | 'Sz' | 'Sx' | 'Sy' | 'i' | '(' expr ')'
/// Numbers are integers or decimals with an optional exponent; fractions are
/// written as divisions ("1/2"). Division is only by nonzero constants.
/// Sx = (S+ + S-)/2 and Sy = (S+ - S-)/(2i). Every letter carries the implicit
/// 1/sqrt(N) scale applied by the trace routines. Throws ParseError.
SpinPolynomial parse_polynomial(std::string_view expr);

/// Canonical text form, terms in canonical word order; parse_polynomial of the
/// result reproduces the same term map.
std::string render_polynomial(const SpinPolynomial& poly);

}  // namespace spinboson::cli
