#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace milnorflow {

// mpq_class keeps values canonical (reduced, positive denominator) as long as
// every constructed value goes through make_rational or canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Always "p/q", including integers ("3/1") and zero ("0/1").
std::string to_pq_string(const Rational& r);

// Accepts "p/q" or "p".
Rational parse_rational(const std::string& text);

// Largest integer <= r.
Integer floor(const Rational& r);

// r - floor(r), in [0, 1).
Rational frac(const Rational& r);

bool is_integer(const Rational& r);

std::int64_t to_int64(const Integer& z);

}  // namespace milnorflow
