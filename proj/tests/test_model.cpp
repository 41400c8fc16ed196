#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "milnorflow/errors.hpp"
#include "milnorflow/invariants.hpp"
#include "milnorflow/milnor.hpp"
#include "milnorflow/model.hpp"

using namespace milnorflow;
using namespace milnorflow::verify;
namespace sp = milnorflow::symplectic;

namespace {

MilnorBasis basis_of(const std::string& text) {
  const Polynomial f = parse_polynomial(text);
  return compute_milnor_algebra(f, infer_weights(f)).basis;
}

std::size_t index_of(const MilnorBasis& b, const Monomial& m) {
  return static_cast<std::size_t>(std::find(b.monomials.begin(), b.monomials.end(), m) - b.monomials.begin());
}

// Phi(first) Phi(second)^* at every sample.
std::vector<sp::Matrix> relative_unitaries(const sp::LagrangianPairPath& path, const sp::HermitianSymplecticSpace& s) {
  std::vector<sp::Matrix> out;
  for (const auto& pair : path.samples)
    out.push_back(sp::lagrangian_to_unitary(pair.first, s) * sp::lagrangian_to_unitary(pair.second, s).adjoint());
  return out;
}

}  // namespace

TEST_CASE("d_values examples") {
  CHECK(d_values(basis_of("z0^3+z1^3")) == std::vector<std::int64_t>{-1, 0, 0, 1});
  CHECK(d_values(basis_of("z0^2+z1^2+z2^2")) == std::vector<std::int64_t>{1});
  CHECK(d_values(basis_of("z0^3+z0*z1^3")) == std::vector<std::int64_t>{-4, -2, -1, 0, 1, 2, 4});
}

TEST_CASE("build_model") {
  const std::int64_t d[] = {-1, 0, 0, 1};
  const auto model = build_model(d, 2);
  CHECK(model.space.dim() == 8);
  CHECK(model.split_k == 2);
  CHECK((sp::lagrangian_to_unitary(model.reference, model.space) - sp::Matrix::Identity(4, 4)).norm() < 1e-12);
  CHECK_THROWS_AS(build_model(d, 5), InvalidInput);
  CHECK(min_grid(d) == 12);
}

TEST_CASE("action_loop examples") {
  SUBCASE("zero d gives a constant path") {
    const std::int64_t d[] = {0, 0, 0};
    const auto model = build_model(d, 1);
    const auto path = action_loop(model, 8);
    for (const auto& u : relative_unitaries(path, model.space))
      CHECK((u - sp::Matrix::Identity(3, 3)).norm() < 1e-12);
  }
  SUBCASE("d = (1)") {
    const std::int64_t d[] = {1};
    for (std::size_t k : {0u, 1u}) {
      const auto model = build_model(d, k);
      const auto path = action_loop(model, 16);
      REQUIRE(path.samples.size() == 17);
      const auto us = relative_unitaries(path, model.space);
      for (std::size_t i = 0; i < us.size(); ++i)
        CHECK(std::abs(us[i](0, 0) - std::polar(1.0, 4 * std::numbers::pi * path.grid[i])) < 1e-12);
    }
  }
  SUBCASE("d = (-1, 0, 0, 1)") {
    const std::int64_t d[] = {-1, 0, 0, 1};
    const auto model = build_model(d, 2);
    const auto path = action_loop(model, 12);
    const auto us = relative_unitaries(path, model.space);
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double t = path.grid[i];
      Eigen::Vector4cd expected(std::polar(1.0, -4 * std::numbers::pi * t), 1.0, 1.0,
                                std::polar(1.0, 4 * std::numbers::pi * t));
      CHECK((us[i] - sp::Matrix(expected.asDiagonal())).norm() < 1e-12);
    }
  }
  SUBCASE("grid below the bound") {
    const std::int64_t d[] = {3};
    CHECK_THROWS_AS(action_loop(build_model(d, 0), 19), StepTooCoarse);
    CHECK_NOTHROW(action_loop(build_model(d, 0), 20));
  }
}

TEST_CASE("verify_sf_theorem examples") {
  const auto e6 = verify_sf_theorem(basis_of("z0^3+z1^3"));
  CHECK(e6.formula_value == 0);
  CHECK(e6.numeric_value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(e6.pass);
  const auto a1 = verify_sf_theorem(basis_of("z0^2+z1^2+z2^2"));
  CHECK(a1.formula_value == -2);
  CHECK(a1.numeric_value == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(a1.pass);
  const auto e7 = verify_sf_theorem(basis_of("z0^3+z0*z1^3"));
  CHECK(e7.formula_value == 0);
  CHECK(e7.pass);
}

TEST_CASE("verify_sf_per_monomial examples") {
  const MilnorBasis b = basis_of("z0^3+z1^3");
  const auto one = verify_sf_per_monomial(b, index_of(b, {0, 0}));
  CHECK(one.formula_value == 2);
  CHECK(one.numeric_value == doctest::Approx(2.0).epsilon(1e-9));
  const auto xy = verify_sf_per_monomial(b, index_of(b, {1, 1}));
  CHECK(xy.formula_value == -2);
  CHECK(xy.pass);
  const auto x = verify_sf_per_monomial(b, index_of(b, {1, 0}));
  CHECK(x.formula_value == 0);
  CHECK(x.pass);
  CHECK_THROWS_AS(verify_sf_per_monomial(b, 4), InvalidInput);
}

TEST_CASE("verify_eta_fractional examples") {
  const MilnorBasis e6 = basis_of("z0^3+z1^3");
  std::vector<std::size_t> all(e6.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto full = verify_eta_fractional(e6, all);
  CHECK(full.formula_value == 0);
  CHECK(full.pass);

  const MilnorBasis e7 = basis_of("z0^3+z0*z1^3");
  const std::size_t zero[] = {index_of(e7, {0, 0})};
  const auto single = verify_eta_fractional(e7, zero);
  CHECK(single.formula_value == doctest::Approx(1.0 / 9).epsilon(1e-15));
  CHECK(std::abs(single.numeric_value - 1.0 / 9) < 1e-9);
  CHECK(single.pass);

  const auto none = verify_eta_fractional(e7, std::span<const std::size_t>());
  CHECK(none.formula_value == 0);
  CHECK(none.numeric_value == 0);
  CHECK(none.pass);

  SUBCASE("phases landing on -1 are handled exactly") {
    // z0^4 + z1^4: l(z0) = 3/4, so exp(2 pi i 2l) = -1
    const MilnorBasis b = basis_of("z0^4+z1^4");
    const std::size_t pick[] = {index_of(b, {1, 0}), index_of(b, {0, 1})};
    const auto rec = verify_eta_fractional(b, pick);
    CHECK(rec.formula_value == 1.0);
    CHECK(rec.numeric_value == 1.0);
    CHECK(rec.pass);
  }
}

TEST_CASE("verification properties") {
  const std::vector<std::string> inputs = {"z0^3+z1^3", "z0^3+z0*z1^3", "z0^2+z1^2+z2^2", "z0^4+z1^5",
                                           "z0^2*z1+z1^3*z2+z2^4"};
  for (const auto& text : inputs) {
    CAPTURE(text);
    const MilnorBasis b = basis_of(text);
    const auto d = d_values(b);
    const std::size_t mu = d.size();

    SUBCASE("grid robustness") {
      VerifyOptions o1, o2;
      o1.grid = min_grid(d);
      o2.grid = 2 * min_grid(d);
      CHECK(std::round(verify_sf_theorem(b, o1).numeric_value) == std::round(verify_sf_theorem(b, o2).numeric_value));
      CHECK(verify_sf_theorem(b, o2).pass);
    }
    SUBCASE("split independence") {
      double first = 0;
      for (std::size_t k : {std::size_t{0}, (mu + 1) / 2, mu}) {
        VerifyOptions o;
        o.split_k = k;
        const auto rec = verify_sf_theorem(b, o);
        CHECK(rec.pass);
        if (k == 0) first = rec.numeric_value;
        CHECK(std::abs(rec.numeric_value - first) < 1e-9);
      }
    }
    SUBCASE("full loop equals the sum of single-monomial loops") {
      double sum = 0;
      for (std::size_t i = 0; i < mu; ++i) {
        const auto rec = verify_sf_per_monomial(b, i);
        CHECK(rec.pass);
        sum += rec.numeric_value;
      }
      CHECK(std::abs(sum - verify_sf_theorem(b).numeric_value) < 1e-8);
    }
    SUBCASE("dense and direct-sum routes agree") {
      VerifyOptions dense, split;
      dense.dense_limit = 1000;
      split.dense_limit = 0;
      split.chunk = 3;
      const auto a = verify_sf_theorem(b, dense);
      const auto c = verify_sf_theorem(b, split);
      CHECK(a.method == "dense");
      CHECK(c.method == "direct-sum");
      CHECK(std::abs(a.numeric_value - c.numeric_value) < 1e-9);
      std::vector<std::size_t> all(mu);
      std::iota(all.begin(), all.end(), std::size_t{0});
      CHECK(std::abs(verify_eta_fractional(b, all, dense).numeric_value -
                     verify_eta_fractional(b, all, split).numeric_value) < 1e-9);
    }
  }
}

TEST_CASE("coarse grids: refined or refused") {
  const MilnorBasis b = basis_of("z0^3+z1^3");
  VerifyOptions o;
  o.grid = 3;
  const auto rec = verify_sf_theorem(b, o);
  CHECK(rec.grid_refined);
  CHECK(rec.requested_grid == 3);
  CHECK(rec.grid == 12);
  CHECK(rec.pass);
  o.auto_refine = false;
  CHECK_THROWS_AS(verify_sf_theorem(b, o), StepTooCoarse);
}

TEST_CASE("random Brieskorn-type weight systems verify") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> exponent(2, 10), nv(2, 4);
  int done = 0;
  while (done < 100) {
    const int n = nv(rng);
    std::vector<int> a(static_cast<std::size_t>(n));
    long beta = 1;
    for (auto& x : a) {
      x = exponent(rng);
      beta = std::lcm(beta, static_cast<long>(x));
    }
    if (beta > 30) continue;
    std::string text;
    for (int i = 0; i < n; ++i) text += (i ? "+z" : "z") + std::to_string(i) + "^" + std::to_string(a[static_cast<std::size_t>(i)]);
    CAPTURE(text);
    for (const auto& rec : verify_all(basis_of(text))) CHECK(rec.pass);
    ++done;
  }
}
