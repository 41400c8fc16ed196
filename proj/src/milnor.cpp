#include "milnorflow/milnor.hpp"

#include <algorithm>
#include <numeric>

#include "milnorflow/errors.hpp"
#include "milnorflow/invariants.hpp"
#include "milnorflow/parallel.hpp"

namespace milnorflow {

std::vector<Polynomial> jacobian_ideal(const Polynomial& f) {
  if (f.is_zero()) throw ZeroIdeal("f is zero");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Polynomial d = partial_derivative(f, i);
    if (!d.is_zero()) out.push_back(std::move(d));
  }
  if (out.empty()) throw ZeroIdeal("all partial derivatives vanish (f is constant)");
  return out;
}

std::vector<Exponent> staircase_bounds(const GroebnerBasis& gb) {
  const std::size_t nv = gb.nvars();
  std::vector<Exponent> bound(nv, 0);
  for (const Monomial& lm : gb.leading_monomials()) {
    if (lm.is_one()) return std::vector<Exponent>(nv, 0);
    const int v = lm.pure_power_variable();
    if (v < 0) continue;
    Exponent& b = bound[static_cast<std::size_t>(v)];
    b = b == 0 ? lm[v] : std::min(b, lm[v]);
  }
  for (std::size_t i = 0; i < nv; ++i)
    if (bound[i] == 0)
      throw NonIsolatedSingularity("no pure power of z" + std::to_string(i) +
                                   " among the leading monomials: the Milnor algebra is infinite-dimensional");
  return bound;
}

MilnorBasis monomial_basis(const GroebnerBasis& gb, const WeightSystem& ws) {
  if (gb.nvars() != ws.nvars()) throw InvalidInput("weight system and basis disagree on the variable count");
  MilnorBasis basis;
  basis.weights = ws;
  if (gb.is_unit()) return basis;

  std::vector<Monomial> monomials = par::standard_monomials_omp(gb);
  std::vector<std::pair<Rational, Monomial>> keyed;
  keyed.reserve(monomials.size());
  for (Monomial& m : monomials) {
    Rational l = l_value(m, ws);
    keyed.emplace_back(std::move(l), std::move(m));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  for (auto& [l, m] : keyed) {
    basis.monomials.push_back(std::move(m));
    basis.l_values.push_back(std::move(l));
  }
  return basis;
}

std::size_t milnor_number(const MilnorBasis& basis) { return basis.size(); }

Integer milnor_orlik_mu(const WeightSystem& ws) {
  Rational prod = 1;
  for (const Integer& b : ws.beta_i()) {
    Rational factor = make_rational(ws.beta(), b) - 1;
    if (factor < 0) throw InvalidInput("weight beta_i exceeds beta");
    prod *= factor;
  }
  if (!is_integer(prod))
    throw NonIntegralProduct("prod(beta/beta_i - 1) = " + to_pq_string(prod) + " is not an integer");
  return prod.get_num();
}

MilnorAlgebra compute_milnor_algebra(const Polynomial& f, const WeightSystem& ws, const TermOrder& order) {
  GroebnerBasis gb = buchberger(jacobian_ideal(f), order);
  MilnorBasis basis = monomial_basis(gb, ws);
  return {std::move(gb), std::move(basis)};
}

MilnorAlgebra compute_milnor_algebra(const Polynomial& f, const WeightSystem& ws) {
  return compute_milnor_algebra(f, ws, TermOrder::weighted_degrevlex(ws));
}

}  // namespace milnorflow
