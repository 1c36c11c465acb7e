#pragma once

#include <gmpxx.h>

#include <string>

namespace eqloc {

using Integer = mpz_class;
using Rational = mpq_class;

/// `num/den`, or just `num` when the denominator is one.
std::string to_string(const Rational& q);

/// Parses `num` or `num/den`; throws InvalidArgument on malformed text.
Rational parse_rational(const std::string& text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace eqloc
