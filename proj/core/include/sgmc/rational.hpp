#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sgmc {

/// Arbitrary-precision exact rational, always kept in canonical (reduced) form.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or a finite decimal such as "0.25". Throws
/// Error(kInvalidArgument) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Canonicalizes after construction from numerator/denominator parts.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace sgmc
