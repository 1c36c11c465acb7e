#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "eqloc/poly.hpp"

namespace eqloc {

/// Canonical text: terms in descending graded lex order, e.g.
/// `3*t1^2*t2 - 1/2*t3`. The zero polynomial prints as `0`.
std::string to_string(const MultiPoly& p, const std::string& prefix = "t");
/// Same layout with explicit variable names, one per variable.
std::string to_string(const MultiPoly& p, std::span<const std::string> names);

/// Parses sums, products, integer powers, parentheses, rational literals and
/// variables `<prefix>1 .. <prefix>N`. Throws InvalidArgument on bad input.
MultiPoly parse_poly(std::string_view text, std::size_t nvars, const std::string& prefix = "t");

}  // namespace eqloc
