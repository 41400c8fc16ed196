#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "milnorflow/rational.hpp"

namespace milnorflow {

using Exponent = std::uint32_t;

// Exponent vector of z0^a0 * ... * zn^an. Comparison is plain
// lexicographic on the exponents; term orders live in groebner.hpp.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}

  std::size_t nvars() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  std::span<const Exponent> exponents() const noexcept { return exps_; }

  std::uint64_t degree() const;
  bool is_one() const;
  // Index of the single variable when this is z_i^k with k >= 1, else -1.
  int pure_power_variable() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divides(*this, other) in the sense other | *this.
  Monomial operator/(const Monomial& other) const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

// "z0^2*z1", "1" for the constant monomial.
std::string to_string(const Monomial& m);

// Sparse polynomial over Q in z0..z{nvars-1}. Zero coefficients are never
// stored. Terms iterate in ascending lexicographic exponent order.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Polynomial(std::size_t nvars = 2) : nvars_(nvars) {}

  static Polynomial monomial(const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Monomial& m) const;

  // Adds c*m, dropping the term when the result cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  TermMap terms_;
};

// Canonical text form accepted back by parse_polynomial: terms in descending
// lexicographic exponent order, coefficients as integers or p/q.
std::string to_string(const Polynomial& p);

// Grammar (whitespace ignored):
//   poly   := term (('+'|'-') term)*     (a leading sign is allowed)
//   term   := coeff? ('*'? factor)*
//   factor := var ('^' uint)?
//   coeff  := int | int '/' uint
//   var    := 'z' uint
// With nvars == 0 the variable count is max index + 1, but at least 2.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars = 0);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);

// Integer weights (beta_0..beta_n; beta) with f(t^beta_i z_i) = t^beta f.
class WeightSystem {
 public:
  WeightSystem() = default;
  // Divides out the common gcd; throws InvalidInput on non-positive entries.
  WeightSystem(std::vector<Integer> beta_i, Integer beta);

  std::size_t nvars() const noexcept { return beta_i_.size(); }
  const std::vector<Integer>& beta_i() const noexcept { return beta_i_; }
  const Integer& beta() const noexcept { return beta_; }

  // w_i = beta_i / beta.
  Rational weight(std::size_t i) const;
  Rational weight_sum() const;
  // sum a_i * beta_i
  Integer weighted_degree(const Monomial& m) const;

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

 private:
  std::vector<Integer> beta_i_;
  Integer beta_;
};

// "b0,b1,...,beta"
WeightSystem parse_weights(std::string_view text);
std::string to_string(const WeightSystem& ws);

// Solves sum a_i beta_i - beta = 0 over every exponent vector by rational
// elimination. Throws NotQuasihomogeneous when no strictly positive ray
// exists and AmbiguousWeights when the solution space has dimension > 1.
WeightSystem infer_weights(const Polynomial& p);

// True iff every term has weighted degree beta.
bool check_weights(const Polynomial& p, const WeightSystem& ws);
// Same check against an arbitrary target degree.
bool is_weighted_homogeneous(const Polynomial& p, const WeightSystem& ws, const Integer& degree);

}  // namespace milnorflow
