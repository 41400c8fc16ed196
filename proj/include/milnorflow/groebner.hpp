#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "milnorflow/polynomial.hpp"

namespace milnorflow {

class TermOrder {
 public:
  enum class Kind { degrevlex, lex, weighted_degrevlex };

  static TermOrder degrevlex() { return TermOrder(Kind::degrevlex, {}); }
  static TermOrder lex() { return TermOrder(Kind::lex, {}); }
  // Weighted degree first, ties broken reverse-lexicographically.
  static TermOrder weighted_degrevlex(std::vector<std::uint64_t> weights);
  static TermOrder weighted_degrevlex(const WeightSystem& ws);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }

  // Variables are ordered z0 > z1 > ... > zn.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const;

 private:
  TermOrder(Kind kind, std::vector<std::uint64_t> weights) : kind_(kind), weights_(std::move(weights)) {}

  Kind kind_;
  std::vector<std::uint64_t> weights_;
};

// "wdegrevlex" | "degrevlex" | "lex"; weighted orders take ws for the weights.
TermOrder parse_term_order(const std::string& name, const WeightSystem& ws);

struct Term {
  Monomial monomial;
  Rational coeff;
};

// Polynomial with terms kept in strictly descending order for a fixed
// TermOrder. Internal representation for the Groebner machinery.
class OrderedPolynomial {
 public:
  OrderedPolynomial() = default;
  OrderedPolynomial(const Polynomial& p, const TermOrder& order);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  void make_monic();
  // this - c * m * g
  void subtract_multiple(const Rational& c, const Monomial& m, const OrderedPolynomial& g,
                         const TermOrder& order);

  Polynomial to_polynomial(std::size_t nvars) const;

  friend OrderedPolynomial normal_form(OrderedPolynomial p, const std::vector<OrderedPolynomial>& gens,
                                       const TermOrder& order);

 private:
  std::vector<Term> terms_;
};

class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<OrderedPolynomial> gens, TermOrder order, std::size_t nvars)
      : gens_(std::move(gens)), order_(std::move(order)), nvars_(nvars) {}

  const std::vector<OrderedPolynomial>& generators() const noexcept { return gens_; }
  const TermOrder& order() const noexcept { return order_; }
  std::size_t nvars() const noexcept { return nvars_; }

  std::vector<Monomial> leading_monomials() const;
  std::vector<Polynomial> polynomials() const;
  // True when the basis is {1}.
  bool is_unit() const;

 private:
  std::vector<OrderedPolynomial> gens_;
  TermOrder order_;
  std::size_t nvars_;
};

// Full reduction of p modulo gens (every term, not only the leading one).
OrderedPolynomial normal_form(OrderedPolynomial p, const std::vector<OrderedPolynomial>& gens,
                              const TermOrder& order);

OrderedPolynomial s_polynomial(const OrderedPolynomial& f, const OrderedPolynomial& g,
                               const TermOrder& order);

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t product_criterion = 0;
  std::size_t chain_criterion = 0;
  std::size_t reductions_to_zero = 0;
};

// Reduced Groebner basis, normal selection strategy, Buchberger's product and
// chain criteria. Output generators are monic and sorted by ascending leading
// monomial.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order,
                         BuchbergerStats* stats = nullptr);

// Checks that every S-polynomial reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb);

}  // namespace milnorflow
