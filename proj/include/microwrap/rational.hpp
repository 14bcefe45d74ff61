#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace microwrap {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q ≠ 0) into a canonical rational. Throws Error otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text ("p" when q = 1).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Floor of value / modulus for a positive modulus.
Integer floor_div(const Rational& value, const Rational& modulus);

/// Representative of value modulo a positive modulus in [0, modulus).
Rational mod_positive(const Rational& value, const Rational& modulus);

} // namespace microwrap
