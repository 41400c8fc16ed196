#include "milnorflow/rational.hpp"

#include <limits>

#include "milnorflow/errors.hpp"

namespace milnorflow {

std::string to_pq_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw InvalidInput("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw InvalidInput("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& r) {
  Rational f = r - Rational(floor(r));
  f.canonicalize();
  return f;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw InvalidInput("integer out of 64-bit range: " + z.get_str());
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return z.get_si();
}

}  // namespace milnorflow
