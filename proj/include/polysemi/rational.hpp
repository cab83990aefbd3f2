#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace polysemi {

// Every Rational handed to the library must be canonical (as produced by
// arithmetic or parse_rational); equality tests rely on it.
using Rational = mpq_class;
using BigInt = mpz_class;

// Canonical "p/q" (or "p") text.
std::string to_string(const Rational& q);

// Parses "p", "-p/q", or a decimal literal "1.25e-3" into an exact rational.
// Throws InputError on malformed text.
Rational parse_rational(std::string_view text);

// Exact n-th root of a non-negative rational, if it is a perfect power.
std::optional<Rational> exact_root(const Rational& q, unsigned long n);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline long gcd_l(long a, long b) {
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

inline long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

// Byte encoding used for hashing exact coefficients.
void append_canonical(std::string& out, const Rational& q);

}  // namespace polysemi
