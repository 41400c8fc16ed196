#include <doctest.h>

#include <algorithm>
#include <random>

#include "milnorflow/errors.hpp"
#include "milnorflow/groebner.hpp"
#include "milnorflow/invariants.hpp"
#include "milnorflow/milnor.hpp"
#include "oracles.hpp"

using namespace milnorflow;

namespace {

WeightSystem ws(std::vector<long> bi, long beta) {
  std::vector<Integer> v(bi.begin(), bi.end());
  return WeightSystem(v, Integer(beta));
}

std::vector<Rational> rationals(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [p, q] : v) out.push_back(make_rational(p, q));
  return out;
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

MilnorBasis basis_of(const std::string& text, const TermOrder* order = nullptr) {
  const Polynomial f = parse_polynomial(text);
  const WeightSystem w = infer_weights(f);
  return order ? compute_milnor_algebra(f, w, *order).basis : compute_milnor_algebra(f, w).basis;
}

// Isolated weighted homogeneous germs: ADE, unimodal and a few mixed ones.
const std::vector<std::string> kGallery = {
    "z0^3+z1^3",       "z0^3+z0*z1^3",          "z0^2+z1^2+z2^2",        "z0^3+z1^4",
    "z0^3+z1^5",       "z0^2*z1+z1^5",          "z0^2*z1+z1^6+z2^2",     "z0^3+z1^3+z2^3+z0*z1*z2",
    "z0^4+z1^4",       "z0^3+z0*z1^4",          "z0^2*z1+z1^3*z2+z2^4",  "z0^3*z1+z1^3*z2+z2^3*z0",
    "z0^5+z1^3+z2^2",  "z0^2+z1^2+z2^2+z3^2",   "z0^4+z0*z1^3+z1^4",      "z0^3+z1^3+z2^4+z3^2"};

}  // namespace

TEST_CASE("monomial_basis examples") {
  const auto gb1 = buchberger({parse_polynomial("z0^2", 2), parse_polynomial("z1^2", 2)}, TermOrder::degrevlex());
  const MilnorBasis b1 = monomial_basis(gb1, ws({1, 1}, 3));
  CHECK(b1.monomials == std::vector<Monomial>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(b1.l_values == rationals({{2, 3}, {1, 1}, {1, 1}, {4, 3}}));

  const auto gb2 = buchberger({parse_polynomial("z0^2+1/3z1^3"), parse_polynomial("z0*z1^2"), parse_polynomial("z1^5")},
                              TermOrder::weighted_degrevlex(ws({3, 2}, 9)));
  const MilnorBasis b2 = monomial_basis(gb2, ws({3, 2}, 9));
  CHECK(b2.monomials == std::vector<Monomial>{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {0, 3}, {0, 4}});
  CHECK(b2.l_values == rationals({{5, 9}, {7, 9}, {8, 9}, {1, 1}, {10, 9}, {11, 9}, {13, 9}}));

  const auto gb3 = buchberger({parse_polynomial("z0", 2)}, TermOrder::degrevlex());
  CHECK_THROWS_AS(monomial_basis(gb3, ws({1, 1}, 1)), NonIsolatedSingularity);
}

TEST_CASE("non-isolated and degenerate inputs") {
  const Polynomial f = parse_polynomial("z0^2*z1^2");
  CHECK_THROWS_AS(compute_milnor_algebra(f, ws({1, 1}, 4)), NonIsolatedSingularity);
  CHECK_THROWS_AS(compute_milnor_algebra(parse_polynomial("z0^2", 2), ws({1, 1}, 2)), NonIsolatedSingularity);
  const auto regular = compute_milnor_algebra(parse_polynomial("z0+z1"), ws({1, 1}, 1));
  CHECK(regular.groebner.is_unit());
  CHECK(regular.basis.empty());
  CHECK(milnor_number(regular.basis) == 0);
}

TEST_CASE("milnor_number and Milnor-Orlik examples") {
  CHECK(milnor_number(basis_of("z0^3+z1^3")) == 4);
  CHECK(milnor_number(basis_of("z0^3+z0*z1^3")) == 7);
  CHECK(milnor_number(basis_of("z0^2+z1^2+z2^2")) == 1);
  CHECK(milnor_orlik_mu(ws({1, 1}, 3)) == 4);
  CHECK(milnor_orlik_mu(ws({3, 2}, 9)) == 7);
  CHECK(milnor_orlik_mu(ws({1, 1, 1}, 2)) == 1);
  CHECK_THROWS_AS(milnor_orlik_mu(ws({2, 2}, 5)), NonIntegralProduct);
  CHECK_THROWS_AS(milnor_orlik_mu(ws({3, 1}, 2)), InvalidInput);
}

TEST_CASE("gallery: basis agrees with the Poincare polynomial under every order") {
  for (const auto& text : kGallery) {
    CAPTURE(text);
    const Polynomial f = parse_polynomial(text);
    const WeightSystem w = infer_weights(f);
    const auto expected = oracle::l_values_from_poincare(w);
    for (const TermOrder& order : {TermOrder::weighted_degrevlex(w), TermOrder::degrevlex(), TermOrder::lex()}) {
      CAPTURE(order.name());
      const auto alg = compute_milnor_algebra(f, w, order);
      CHECK(satisfies_buchberger_criterion(alg.groebner));
      CHECK(sorted(alg.basis.l_values) == expected);
      CHECK(Integer(static_cast<unsigned long>(alg.basis.size())) == milnor_orlik_mu(w));
      // sorted by l, then exponent, and the constant monomial sits at l = sum w_i
      CHECK(std::is_sorted(alg.basis.l_values.begin(), alg.basis.l_values.end()));
      const auto one = std::find(alg.basis.monomials.begin(), alg.basis.monomials.end(), Monomial(f.nvars()));
      REQUIRE(one != alg.basis.monomials.end());
      CHECK(alg.basis.l_values[static_cast<std::size_t>(one - alg.basis.monomials.begin())] == w.weight_sum());
      CHECK(spectrum(alg.basis).is_symmetric(alg.basis.n()));
    }
  }
}

TEST_CASE("Brieskorn family: box basis and product formula") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> exponent(2, 6), extra(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int nv = 1 + extra(rng);
    std::vector<int> a(static_cast<std::size_t>(nv));
    std::string text;
    long product = 1;
    for (int i = 0; i < nv; ++i) {
      a[static_cast<std::size_t>(i)] = exponent(rng);
      product *= a[static_cast<std::size_t>(i)] - 1;
      text += (i ? "+z" : "z") + std::to_string(i) + "^" + std::to_string(a[static_cast<std::size_t>(i)]);
    }
    CAPTURE(text);
    const MilnorBasis b = basis_of(text);
    CHECK(milnor_number(b) == static_cast<std::size_t>(product));
    for (const auto& m : b.monomials)
      for (int i = 0; i < nv; ++i) CHECK(m[static_cast<std::size_t>(i)] <= static_cast<Exponent>(a[static_cast<std::size_t>(i)] - 2));
  }
}

TEST_CASE("staircase bounds") {
  const auto gb = buchberger({parse_polynomial("z0^2+1/3z1^3"), parse_polynomial("z0*z1^2"), parse_polynomial("z1^5")},
                             TermOrder::degrevlex());
  const auto bounds = staircase_bounds(gb);
  REQUIRE(bounds.size() == 2);
  CHECK(bounds[0] >= 2);
  CHECK(bounds[1] >= 3);
}
