#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "milnorflow/milnor.hpp"
#include "milnorflow/polynomial.hpp"

namespace milnorflow {

Rational l_value(const Monomial& alpha, const WeightSystem& ws);

// Sorted multiset of spectral numbers gamma = l - 1.
struct SpectrumDivisor {
  std::vector<Rational> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::size_t multiplicity(const Rational& gamma) const;
  // gamma and (n - 1) - gamma occur equally often.
  bool is_symmetric(std::size_t n) const;

  friend bool operator==(const SpectrumDivisor&, const SpectrumDivisor&) = default;
};

SpectrumDivisor spectrum(const MilnorBasis& basis);

struct SpectralFlowEntry {
  Monomial monomial;
  std::int64_t SF;  // -2 beta (l - 1)
  std::int64_t sf;  // -SF / 2 = beta (l - 1)
};

struct SpectralFlowFamily {
  std::vector<SpectralFlowEntry> entries;
  Integer beta;
};

SpectralFlowFamily spectral_flows(const MilnorBasis& basis);
SpectrumDivisor spectrum_from_flows(const SpectralFlowFamily& family);

struct VariationSummand {
  Rational rotation;  // eigenvalue exp(2 pi i rotation), rotation in [0, 1)
  int sign;           // (-1)^(floor(l) + n)

  friend bool operator==(const VariationSummand&, const VariationSummand&) = default;
};

std::vector<VariationSummand> variation_structure(const MilnorBasis& basis, std::size_t n);

// sum beta_i - beta
Integer seidel_number(const WeightSystem& ws);
bool sf_zero_equals_seidel(const MilnorBasis& basis, const WeightSystem& ws);

// The link is a rational homology sphere iff no l-value is an integer.
bool qhs_link(const MilnorBasis& basis);

// Representative of x mod 1 in (-1/2, 1/2]; 1/2 stays 1/2.
Rational modified_frac(const Rational& x);

// sum over the subset of {2 l(a)}'. Throws InvalidInput for monomials outside
// the basis.
Rational eta_fractional_sum(const MilnorBasis& basis, std::span<const Monomial> subset);
Rational eta_fractional_sum(const MilnorBasis& basis);

// max |SF| / beta < 1/2
bool folg1_condition(const SpectralFlowFamily& family);

// {l mod 1}, in basis order. Throws OrderViolation if some beta * l is not
// an integer.
std::vector<Rational> monodromy_rotations(const MilnorBasis& basis);

struct CharacteristicPolynomial {
  // Ascending: coefficients[k] multiplies t^k. Rounded from the floating
  // evaluation after the integrality check passed.
  std::vector<Integer> coefficients;
  double max_integrality_deviation = 0.0;
  double max_imaginary_part = 0.0;
  unsigned precision_bits = 0;
};

// prod (t - exp(2 pi i r)) evaluated in binary floating point with enough
// precision bits for the worst-case coefficient size. Throws
// IntegralityViolation when a coefficient is more than tol from an integer.
CharacteristicPolynomial characteristic_polynomial(std::span<const Rational> rotations,
                                                   double tol = 1e-6);

struct SingularityReport {
  WeightSystem weights;
  std::size_t mu = 0;
  bool regular_point = false;
  MilnorBasis basis;
  SpectrumDivisor spectrum;
  SpectralFlowFamily flows;
  std::vector<VariationSummand> variation;
  Integer seidel_number;
  bool sf_zero_matches_seidel = true;
  bool qhs_link = false;
  bool folg1_condition = false;
  Rational eta_fractional_sum_full;
  std::vector<Rational> monodromy_rotations;
  CharacteristicPolynomial characteristic_polynomial;
};

SingularityReport build_report(const MilnorBasis& basis);

}  // namespace milnorflow
