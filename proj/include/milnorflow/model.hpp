#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "milnorflow/milnor.hpp"
#include "milnorflow/symplectic.hpp"

namespace milnorflow::verify {

// Finite symplectic block carrying the quasihomogeneous circle action:
// coordinate j rotates by exp(4 pi i d_j t), d_j = beta (l(a_j) - 1).
// The first split_k coordinates ("V" directions) move on the boundary
// condition leg, the rest ("W" directions) move, inversely, on the
// Cauchy-data leg, so Phi(f) Phi(g)^* = diag(exp(4 pi i d_j t)) for every k.
struct CircleActionModel {
  std::vector<std::int64_t> d_values;
  std::size_t split_k = 0;
  symplectic::HermitianSymplecticSpace space;
  symplectic::Lagrangian reference;
};

// d_j from the exact l-values (basis order). Throws OrderViolation if some
// beta (l - 1) is not an integer.
std::vector<std::int64_t> d_values(const MilnorBasis& basis);

CircleActionModel build_model(std::span<const std::int64_t> d_values, std::size_t split_k);
CircleActionModel build_model(const MilnorBasis& basis, std::size_t split_k);

// 4 max|d| + 8
std::size_t min_grid(std::span<const std::int64_t> d_values);

// Closed loop on t_i = i/N. Throws StepTooCoarse when N is below min_grid.
symplectic::LagrangianPairPath action_loop(const CircleActionModel& model, std::size_t samples);

struct VerifyOptions {
  std::size_t grid = 0;         // requested samples; 0 picks min_grid
  double tol = 1e-6;
  std::size_t dense_limit = 16; // larger models are evaluated as a direct sum of chunks
  std::size_t chunk = 8;
  std::optional<std::size_t> split_k;  // default 0
  // When false a requested grid below min_grid fails with StepTooCoarse
  // instead of being doubled up to the bound.
  bool auto_refine = true;
  symplectic::WindOptions wind;
};

struct VerificationRecord {
  std::string kind;   // "sf_theorem" | "sf_monomial" | "eta_fractional"
  std::string label;  // monomial or subset description
  double formula_value = 0.0;
  double numeric_value = 0.0;
  double abs_error = 0.0;
  std::size_t requested_grid = 0;
  std::size_t grid = 0;
  bool grid_refined = false;
  std::size_t split_k = 0;
  std::string method;  // "dense" | "direct-sum" | "exact+numeric"
  bool pass = false;
};

// Maslov index of the full action loop against -2 beta sum (l - 1).
VerificationRecord verify_sf_theorem(const MilnorBasis& basis, const VerifyOptions& opts = {});

// Loop rotating only coordinate j; must equal SF(a_j) = -2 d_j.
VerificationRecord verify_sf_per_monomial(const MilnorBasis& basis, std::size_t index,
                                          const VerifyOptions& opts = {});

// (1/2 pi i) tr Log(Phi(rho L) Phi(L)^*) over the subset against
// sum {2 l(a)}'. Entries landing exactly on -1 are evaluated exactly.
VerificationRecord verify_eta_fractional(const MilnorBasis& basis,
                                         std::span<const std::size_t> subset,
                                         const VerifyOptions& opts = {});

// verify_sf_theorem, every verify_sf_per_monomial, verify_eta_fractional on
// the full basis, in that order.
std::vector<VerificationRecord> verify_all(const MilnorBasis& basis, const VerifyOptions& opts = {});

// Maslov index of the loop restricted to a set of coordinates, evaluated on
// one dense block. Exposed for tests comparing dense and direct-sum routes.
double loop_maslov_dense(std::span<const std::int64_t> d_values, std::size_t split_k,
                         std::size_t samples, const symplectic::WindOptions& wind = {});

}  // namespace milnorflow::verify
