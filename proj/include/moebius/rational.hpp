#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace moebius {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or an integer literal. No floating point is accepted.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, else "p/q"; always lowest terms.
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

/// a / b in lowest terms.
Rational frac(long a, long b);
Rational pow(const Rational& base, unsigned long e);
BigInt binomial(long n, long k);

} // namespace moebius
