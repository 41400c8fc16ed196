#include "milnorflow/invariants.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "milnorflow/errors.hpp"

namespace milnorflow {

Rational l_value(const Monomial& alpha, const WeightSystem& ws) {
  if (alpha.nvars() != ws.nvars()) throw InvalidInput("monomial and weight system disagree on the variable count");
  Integer num = 0;
  for (std::size_t k = 0; k < alpha.nvars(); ++k) num += (alpha[k] + 1) * ws.beta_i()[k];
  return make_rational(num, ws.beta());
}

std::size_t SpectrumDivisor::multiplicity(const Rational& gamma) const {
  auto [lo, hi] = std::equal_range(entries.begin(), entries.end(), gamma);
  return static_cast<std::size_t>(hi - lo);
}

bool SpectrumDivisor::is_symmetric(std::size_t n) const {
  const Rational centre = Rational(static_cast<long>(n)) - 1;
  for (const Rational& g : entries)
    if (multiplicity(g) != multiplicity(centre - g)) return false;
  return true;
}

SpectrumDivisor spectrum(const MilnorBasis& basis) {
  SpectrumDivisor sp;
  for (const Rational& l : basis.l_values) sp.entries.push_back(l - 1);
  std::sort(sp.entries.begin(), sp.entries.end());
  return sp;
}

namespace {

// beta (l - 1) as an exact integer.
std::int64_t scaled_exponent(const Rational& l, const Integer& beta) {
  Rational v = Rational(beta) * (l - 1);
  v.canonicalize();
  if (!is_integer(v))
    throw OrderViolation("beta * l = " + to_pq_string(Rational(beta) * l) + " is not an integer (h^beta != id)");
  return to_int64(v.get_num());
}

}  // namespace

SpectralFlowFamily spectral_flows(const MilnorBasis& basis) {
  SpectralFlowFamily fam;
  fam.beta = basis.weights.beta();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::int64_t sf = scaled_exponent(basis.l_values[i], fam.beta);
    fam.entries.push_back({basis.monomials[i], -2 * sf, sf});
  }
  return fam;
}

SpectrumDivisor spectrum_from_flows(const SpectralFlowFamily& family) {
  SpectrumDivisor sp;
  for (const auto& e : family.entries)
    sp.entries.push_back(make_rational(Integer(static_cast<long>(-e.SF)), Integer(2 * family.beta)));
  std::sort(sp.entries.begin(), sp.entries.end());
  return sp;
}

std::vector<VariationSummand> variation_structure(const MilnorBasis& basis, std::size_t n) {
  std::vector<VariationSummand> out;
  for (const Rational& l : basis.l_values) {
    const Integer parity = floor(l) + static_cast<unsigned long>(n);
    const int sign = mpz_even_p(parity.get_mpz_t()) ? 1 : -1;
    out.push_back({frac(l), sign});
  }
  return out;
}

Integer seidel_number(const WeightSystem& ws) {
  Integer s = 0;
  for (const Integer& b : ws.beta_i()) s += b;
  return s - ws.beta();
}

bool sf_zero_equals_seidel(const MilnorBasis& basis, const WeightSystem& ws) {
  const Monomial one(ws.nvars());
  auto it = std::find(basis.monomials.begin(), basis.monomials.end(), one);
  if (it == basis.monomials.end()) throw InvalidInput("constant monomial missing from the basis");
  const Rational& l0 = basis.l_values[static_cast<std::size_t>(it - basis.monomials.begin())];
  return Rational(ws.beta()) * (l0 - 1) == Rational(seidel_number(ws));
}

bool qhs_link(const MilnorBasis& basis) {
  return std::none_of(basis.l_values.begin(), basis.l_values.end(), [](const Rational& l) { return is_integer(l); });
}

Rational modified_frac(const Rational& x) {
  Rational f = frac(x);
  if (f > Rational(1, 2)) f -= 1;
  return f;
}

Rational eta_fractional_sum(const MilnorBasis& basis, std::span<const Monomial> subset) {
  Rational sum = 0;
  for (const Monomial& m : subset) {
    auto it = std::find(basis.monomials.begin(), basis.monomials.end(), m);
    if (it == basis.monomials.end()) throw InvalidInput("monomial " + to_string(m) + " is not in the basis");
    sum += modified_frac(2 * basis.l_values[static_cast<std::size_t>(it - basis.monomials.begin())]);
  }
  return sum;
}

Rational eta_fractional_sum(const MilnorBasis& basis) {
  return eta_fractional_sum(basis, basis.monomials);
}

bool folg1_condition(const SpectralFlowFamily& family) {
  for (const auto& e : family.entries) {
    const Integer twice_abs = 2 * Integer(static_cast<long>(e.SF < 0 ? -e.SF : e.SF));
    if (twice_abs >= family.beta) return false;
  }
  return true;
}

std::vector<Rational> monodromy_rotations(const MilnorBasis& basis) {
  std::vector<Rational> out;
  for (const Rational& l : basis.l_values) {
    scaled_exponent(l, basis.weights.beta());
    out.push_back(frac(l));
  }
  return out;
}

namespace {

// Minimal RAII over mpfr_t with a fixed working precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

CharacteristicPolynomial characteristic_polynomial(std::span<const Rational> rotations, double tol) {
  const std::size_t mu = rotations.size();
  // |coefficient| <= binomial(mu, k) <= 2^mu, so mu + 96 bits keeps the
  // absolute rounding error far below any integrality tolerance.
  const auto prec = static_cast<mpfr_prec_t>(mu + 96);

  Real two_pi(prec);
  mpfr_const_pi(two_pi.get(), MPFR_RNDN);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  std::map<Rational, std::pair<Real, Real>> roots;

  std::vector<Real> re(mu + 1, Real(prec)), im(mu + 1, Real(prec));
  mpfr_set_ui(re[0].get(), 1, MPFR_RNDN);
  Real nr(prec), ni(prec), tmp(prec);
  std::size_t deg = 0;
  for (const Rational& r : rotations) {
    auto it = roots.find(r);
    if (it == roots.end()) {
      Real angle(prec);
      mpfr_mul_q(angle.get(), two_pi.get(), r.get_mpq_t(), MPFR_RNDN);
      std::pair<Real, Real> z{Real(prec), Real(prec)};
      mpfr_sin_cos(z.second.get(), z.first.get(), angle.get(), MPFR_RNDN);
      it = roots.emplace(r, z).first;
    }
    mpfr_srcptr zr = it->second.first.get();
    mpfr_srcptr zi = it->second.second.get();
    // multiply by (t - z)
    ++deg;
    for (std::size_t k = deg + 1; k-- > 0;) {
      // new[k] = old[k-1] - z * old[k]
      mpfr_mul(nr.get(), zr, re[k].get(), MPFR_RNDN);
      mpfr_mul(tmp.get(), zi, im[k].get(), MPFR_RNDN);
      mpfr_sub(nr.get(), tmp.get(), nr.get(), MPFR_RNDN);
      mpfr_mul(ni.get(), zr, im[k].get(), MPFR_RNDN);
      mpfr_mul(tmp.get(), zi, re[k].get(), MPFR_RNDN);
      mpfr_add(ni.get(), ni.get(), tmp.get(), MPFR_RNDN);
      mpfr_neg(ni.get(), ni.get(), MPFR_RNDN);
      if (k > 0) {
        mpfr_add(nr.get(), nr.get(), re[k - 1].get(), MPFR_RNDN);
        mpfr_add(ni.get(), ni.get(), im[k - 1].get(), MPFR_RNDN);
      }
      mpfr_set(re[k].get(), nr.get(), MPFR_RNDN);
      mpfr_set(im[k].get(), ni.get(), MPFR_RNDN);
    }
  }

  CharacteristicPolynomial cp;
  cp.precision_bits = static_cast<unsigned>(prec);
  Real rounded(prec), dev(prec);
  for (std::size_t k = 0; k <= mu; ++k) {
    mpfr_round(rounded.get(), re[k].get());
    mpfr_sub(dev.get(), re[k].get(), rounded.get(), MPFR_RNDN);
    mpfr_hypot(dev.get(), dev.get(), im[k].get(), MPFR_RNDN);
    cp.max_integrality_deviation = std::max(cp.max_integrality_deviation, mpfr_get_d(dev.get(), MPFR_RNDN));
    cp.max_imaginary_part = std::max(cp.max_imaginary_part, std::abs(mpfr_get_d(im[k].get(), MPFR_RNDN)));
    Integer z;
    mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
    cp.coefficients.push_back(z);
  }
  if (cp.max_integrality_deviation > tol)
    throw IntegralityViolation("characteristic polynomial coefficient off an integer by " +
                               std::to_string(cp.max_integrality_deviation));
  return cp;
}

SingularityReport build_report(const MilnorBasis& basis) {
  SingularityReport r;
  r.weights = basis.weights;
  r.basis = basis;
  r.mu = milnor_number(basis);
  r.regular_point = basis.empty();
  r.seidel_number = seidel_number(basis.weights);
  r.spectrum = spectrum(basis);
  r.flows = spectral_flows(basis);
  r.variation = variation_structure(basis, basis.n());
  r.qhs_link = qhs_link(basis);
  r.folg1_condition = folg1_condition(r.flows);
  r.eta_fractional_sum_full = eta_fractional_sum(basis);
  r.monodromy_rotations = monodromy_rotations(basis);
  r.characteristic_polynomial = characteristic_polynomial(r.monodromy_rotations);
  r.sf_zero_matches_seidel = r.regular_point ? true : sf_zero_equals_seidel(basis, basis.weights);
  return r;
}

}  // namespace milnorflow
