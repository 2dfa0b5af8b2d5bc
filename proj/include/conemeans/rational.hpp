#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace conemeans {

/// Exact rational, always in canonical (reduced, positive denominator) form.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p", "-p", "p/q". Throws InputError on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Integer ceil(const Rational& q);
Integer floor(const Rational& q);

Rational pow(const Rational& base, unsigned long exponent);

}  // namespace conemeans
