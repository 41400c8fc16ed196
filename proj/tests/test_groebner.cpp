#include <doctest.h>

#include <algorithm>
#include <random>

#include "milnorflow/errors.hpp"
#include "milnorflow/groebner.hpp"
#include "milnorflow/milnor.hpp"

using namespace milnorflow;

namespace {

std::vector<Polynomial> polys(std::initializer_list<const char*> texts, std::size_t nvars) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(parse_polynomial(t, nvars));
  return out;
}

}  // namespace

TEST_CASE("term orders") {
  const Monomial a{2, 0}, b{0, 3}, c{1, 1};
  CHECK(TermOrder::lex().greater(a, b));
  CHECK(TermOrder::degrevlex().greater(b, a));
  CHECK(TermOrder::degrevlex().greater(a, c));  // same degree, fewer z1
  const auto w = TermOrder::weighted_degrevlex(std::vector<std::uint64_t>{3, 2});
  CHECK(w.greater(a, b));  // both weight 6; z0^2 has the smaller z1 exponent
  CHECK(w.greater(Monomial{1, 2}, a));
  CHECK(w.name() == "wdegrevlex");
  CHECK(TermOrder::lex().compare(a, a) == std::strong_ordering::equal);
}

TEST_CASE("jacobian_ideal examples") {
  CHECK(jacobian_ideal(parse_polynomial("z0^3+z1^3")) == polys({"3z0^2", "3z1^2"}, 2));
  CHECK(jacobian_ideal(parse_polynomial("z0^3+z0*z1^3")) == polys({"3z0^2+z1^3", "3z0*z1^2"}, 2));
  CHECK(jacobian_ideal(parse_polynomial("z0^2+z1^2+z2^2")) == polys({"2z0", "2z1", "2z2"}, 3));
  CHECK(jacobian_ideal(parse_polynomial("z1^3", 2)) == polys({"3z1^2"}, 2));
  CHECK_THROWS_AS(jacobian_ideal(parse_polynomial("5", 2)), ZeroIdeal);
}

TEST_CASE("buchberger on the E7 Jacobian ideal") {
  const auto gens = polys({"3z0^2+z1^3", "3z0*z1^2"}, 2);
  // z1^2 g1 - z0 g2 reduces to z1^5 / 3 under a weight-compatible order.
  const auto expected = polys({"z0^2+1/3 z1^3", "z0*z1^2", "z1^5"}, 2);

  SUBCASE("weighted degrevlex (3,2)") {
    const auto gb = buchberger(gens, TermOrder::weighted_degrevlex(std::vector<std::uint64_t>{3, 2}));
    CHECK(gb.polynomials() == expected);
    CHECK(satisfies_buchberger_criterion(gb));
  }
  SUBCASE("lex") {
    const auto gb = buchberger(gens, TermOrder::lex());
    auto got = gb.polynomials();
    auto want = expected;
    auto by_text = [](const Polynomial& a, const Polynomial& b) { return to_string(a) < to_string(b); };
    std::sort(got.begin(), got.end(), by_text);
    std::sort(want.begin(), want.end(), by_text);
    CHECK(got == want);
  }
  SUBCASE("plain degrevlex picks z1^3 as leading term") {
    // S(z1^3 + 3z0^2, z0 z1^2) = 3 z0^3, after which every pair reduces.
    const auto gb = buchberger(gens, TermOrder::degrevlex());
    CHECK(gb.polynomials() == polys({"z1^3+3z0^2", "z0*z1^2", "z0^3"}, 2));
    CHECK(satisfies_buchberger_criterion(gb));
  }
}

TEST_CASE("buchberger trivial examples") {
  CHECK(buchberger(polys({"2z0", "2z1", "2z2"}, 3), TermOrder::degrevlex()).polynomials() ==
        polys({"z2", "z1", "z0"}, 3));
  CHECK(buchberger(polys({"3z0^2", "3z1^2"}, 2), TermOrder::degrevlex()).polynomials() ==
        polys({"z1^2", "z0^2"}, 2));
  const auto unit = buchberger(polys({"1", "1"}, 2), TermOrder::degrevlex());
  CHECK(unit.is_unit());
}

TEST_CASE("reduced bases do not depend on generator order or scaling") {
  std::mt19937 rng(3);
  const std::vector<std::string> inputs = {"z0^3+z0*z1^3",         "z0^2*z1+z1^5",        "z0^3+z1^3+z2^3+z0*z1*z2",
                                           "z0^4+z0*z1^3+z1^4",    "z0^2+z1^4+z2^4+z1^2*z2^2", "z0^3*z1+z1^4+z2^2"};
  for (const auto& text : inputs) {
    const Polynomial f = parse_polynomial(text);
    const WeightSystem ws = infer_weights(f);
    for (const TermOrder& order : {TermOrder::degrevlex(), TermOrder::lex(), TermOrder::weighted_degrevlex(ws)}) {
      auto gens = jacobian_ideal(f);
      const auto reference = buchberger(gens, order);
      CAPTURE(text);
      CAPTURE(order.name());
      CHECK(satisfies_buchberger_criterion(reference));
      for (int trial = 0; trial < 3; ++trial) {
        std::shuffle(gens.begin(), gens.end(), rng);
        std::vector<Polynomial> scaled;
        for (const auto& g : gens) scaled.push_back(g.scaled(make_rational(trial + 2, 7)));
        // adding a combination of generators does not change the ideal
        scaled.push_back(gens.front() * parse_polynomial("z0 + 2z1", f.nvars()) + gens.back());
        CHECK(buchberger(scaled, order).polynomials() == reference.polynomials());
      }
    }
  }
}

TEST_CASE("ideal members reduce to zero, non-members do not") {
  const Polynomial f = parse_polynomial("z0^3+z0*z1^3");
  const auto gens = jacobian_ideal(f);
  const TermOrder order = TermOrder::degrevlex();
  const auto gb = buchberger(gens, order);
  const Polynomial member = gens[0] * parse_polynomial("z0*z1 - 4", 2) + gens[1] * parse_polynomial("z1^3 + 1/2", 2);
  CHECK(normal_form(OrderedPolynomial(member, order), gb.generators(), order).is_zero());
  CHECK_FALSE(normal_form(OrderedPolynomial(parse_polynomial("z0^2*z1"), order), gb.generators(), order).is_zero());
}

TEST_CASE("buchberger statistics count criteria") {
  BuchbergerStats stats;
  buchberger(polys({"3z0^2", "3z1^2"}, 2), TermOrder::degrevlex(), &stats);
  CHECK(stats.pairs_considered == 1);
  CHECK(stats.product_criterion == 1);
}
