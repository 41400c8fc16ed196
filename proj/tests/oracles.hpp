#pragma once
// Independent reference computations used by the tests. Nothing here calls
// the Groebner or basis code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "milnorflow/polynomial.hpp"

namespace oracle {

using milnorflow::Integer;
using milnorflow::Rational;

// Dense integer polynomial, ascending coefficients.
using IntPoly = std::vector<Integer>;

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

// Exact division by a monic divisor; throws when it leaves a remainder.
inline IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  trim(num);
  if (num.size() < den.size()) throw std::logic_error("degree too small");
  IntPoly q(num.size() - den.size() + 1, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer c = num[k + den.size() - 1];
    q[k] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw std::logic_error("inexact division");
  return q;
}

// 1 - t^k
inline IntPoly one_minus_power(std::size_t k) {
  IntPoly p(k + 1, Integer(0));
  p[0] = 1;
  p[k] = -1;
  return p;
}

// Weighted Poincare polynomial of the Milnor algebra, prod (1 - t^(beta - beta_i)) / (1 - t^beta_i).
// The coefficient of t^d counts basis monomials of weighted degree d.
inline IntPoly poincare_polynomial(const milnorflow::WeightSystem& ws) {
  IntPoly num{Integer(1)};
  IntPoly den{Integer(1)};
  for (const auto& bi : ws.beta_i()) {
    num = mul(num, one_minus_power(Integer(ws.beta() - bi).get_ui()));
    den = mul(den, one_minus_power(bi.get_ui()));
  }
  // den has constant term 1 but is not monic; divide as power series instead.
  IntPoly q(num.size(), Integer(0));
  IntPoly rem = num;
  for (std::size_t k = 0; k < q.size(); ++k) {
    q[k] = rem[k];
    for (std::size_t j = 0; j < den.size() && k + j < rem.size(); ++j) rem[k + j] -= q[k] * den[j];
  }
  trim(q);
  return q;
}

// Multiset of l-values predicted by the Poincare polynomial:
// l = (d + sum beta_i) / beta for each unit of the t^d coefficient.
inline std::vector<Rational> l_values_from_poincare(const milnorflow::WeightSystem& ws) {
  const IntPoly p = poincare_polynomial(ws);
  Integer shift = 0;
  for (const auto& b : ws.beta_i()) shift += b;
  std::vector<Rational> out;
  for (std::size_t d = 0; d < p.size(); ++d) {
    if (p[d] < 0) throw std::logic_error("negative Poincare coefficient");
    for (Integer c = 0; c < p[d]; ++c) {
      Rational l(Integer(static_cast<unsigned long>(d)) + shift, ws.beta());
      l.canonicalize();
      out.push_back(l);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cyclotomic polynomial Phi_d, by exact division of t^d - 1.
inline IntPoly cyclotomic(std::size_t d) {
  IntPoly p(d + 1, Integer(0));
  p[0] = -1;
  p[d] = 1;
  for (std::size_t e = 1; e < d; ++e)
    if (d % e == 0) p = divide_exact(p, cyclotomic(e));
  return p;
}

// prod (t - exp(2 pi i r)) for a Galois-stable multiset of rationals in [0,1),
// assembled from cyclotomic factors. Throws if the multiset is not Galois stable.
inline IntPoly char_poly_exact(const std::vector<Rational>& rotations) {
  std::map<Rational, long> count;
  for (const auto& r : rotations) ++count[r];
  IntPoly out{Integer(1)};
  while (!count.empty()) {
    const Rational r = count.begin()->first;
    const std::size_t d = r.get_den().get_ui();
    // orbit of primitive d-th roots
    for (std::size_t k = 0; k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      Rational s(static_cast<long>(k), static_cast<long>(d));
      s.canonicalize();
      auto it = count.find(s);
      if (it == count.end()) throw std::logic_error("rotation multiset is not Galois stable");
      if (--it->second == 0) count.erase(it);
    }
    out = mul(out, cyclotomic(d));
  }
  return out;
}

}  // namespace oracle
