#pragma once

#include <cstddef>
#include <vector>

#include "milnorflow/groebner.hpp"
#include "milnorflow/polynomial.hpp"

namespace milnorflow {

// Standard monomials of the Jacobian ideal with their weights
// l(a) = sum (a_k + 1) w_k, sorted by l then by exponent vector.
struct MilnorBasis {
  std::vector<Monomial> monomials;
  std::vector<Rational> l_values;
  WeightSystem weights;

  std::size_t size() const noexcept { return monomials.size(); }
  bool empty() const noexcept { return monomials.empty(); }
  // n in C^{n+1}
  std::size_t n() const noexcept { return weights.nvars() - 1; }
};

// Nonzero partials of f. Throws ZeroIdeal when all vanish.
std::vector<Polynomial> jacobian_ideal(const Polynomial& f);

// Exponent bound per variable from the pure powers among the leading
// monomials. Throws NonIsolatedSingularity when a variable has none.
std::vector<Exponent> staircase_bounds(const GroebnerBasis& gb);

// Enumerates every monomial inside the staircase box that no leading monomial
// divides. Empty when the basis is the unit ideal (regular point).
MilnorBasis monomial_basis(const GroebnerBasis& gb, const WeightSystem& ws);

std::size_t milnor_number(const MilnorBasis& basis);

// prod_i (beta / beta_i - 1), must be an integer for isolated singularities.
Integer milnor_orlik_mu(const WeightSystem& ws);

// End-to-end convenience: Jacobian ideal, Groebner basis, standard monomials.
struct MilnorAlgebra {
  GroebnerBasis groebner;
  MilnorBasis basis;
};

MilnorAlgebra compute_milnor_algebra(const Polynomial& f, const WeightSystem& ws,
                                     const TermOrder& order);
MilnorAlgebra compute_milnor_algebra(const Polynomial& f, const WeightSystem& ws);

}  // namespace milnorflow
