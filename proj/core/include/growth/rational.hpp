#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace growth {

// Exact arithmetic backend. All structure constants and series terms are
// arbitrary-precision rationals; floating point enters only in the spectral
// and asymptotic layers.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p", or "p/q" into a canonical rational.
/// Throws InvalidPresentation on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical string form: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& q);

/// log(q) for q > 0, computed mantissa/exponent-wise so that values far
/// outside double range are handled.
double rational_log(const Rational& q);

inline double rational_to_double(const Rational& q) { return q.get_d(); }

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial_odd_double(unsigned long n);  // (2n-1)!! with value 1 at n=0

}  // namespace growth
