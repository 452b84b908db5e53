#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polydil/vonneumann.hpp"

namespace polydil {

/// Parses a polynomial in z1..zn. Terms are products of factors joined by
/// '+' and '-'; a factor is a real or imaginary literal (2, 1.5e-3, 2i, i),
/// a variable with an optional exponent (z2^3), or a parenthesized
/// sub-expression such as (1+2i). Whitespace is ignored. Throws ParseError.
MultiPoly parse_poly(std::string_view text, std::size_t vars);

/// One polynomial per non-empty line; '#' starts a comment.
std::vector<MultiPoly> parse_poly_lines(std::string_view text, std::size_t vars);

/// Canonical text form, parseable by parse_poly.
std::string format_poly(const MultiPoly& p);

MultiPoly poly_product(const MultiPoly& a, const MultiPoly& b);

}  // namespace polydil
