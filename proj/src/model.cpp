#include "milnorflow/model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include "milnorflow/errors.hpp"
#include "milnorflow/invariants.hpp"
#include "milnorflow/parallel.hpp"

namespace milnorflow::verify {

using symplectic::Complex;
using symplectic::HermitianSymplecticSpace;
using symplectic::Lagrangian;
using symplectic::LagrangianPair;
using symplectic::LagrangianPairPath;
using symplectic::Matrix;

namespace {

// Fixed unitary change of frame (normalized DFT). Frames handed to the
// engine are multiplied by it so Phi has to be recovered by an actual solve.
Matrix frame_scramble(Eigen::Index m) {
  Matrix q(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      q(r, c) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(r * c) / static_cast<double>(m));
  return q;
}

Lagrangian graph_lagrangian(const Matrix& phi, const HermitianSymplecticSpace& space, const Matrix& scramble) {
  Lagrangian plain = symplectic::unitary_to_lagrangian(phi, space);
  return Lagrangian(plain.frame() * scramble, space);
}

struct LoopData {
  std::vector<std::int64_t> d;
  std::size_t split_k;
  HermitianSymplecticSpace space;
  Matrix phi_reference;
  Matrix scramble;
};

std::size_t effective_grid(std::size_t requested, std::size_t bound, const VerifyOptions& opts, bool& refined) {
  refined = false;
  if (requested == 0) return bound;
  if (requested >= bound) return requested;
  if (!opts.auto_refine)
    throw StepTooCoarse("grid " + std::to_string(requested) + " is below the bound " + std::to_string(bound) +
                            " (4 max|d| + 8); raise --grid",
                        0.0, 1.0);
  refined = true;
  std::size_t n = requested;
  while (n < bound) n *= 2;
  return n;
}

double finish(VerificationRecord& rec, double tol) {
  rec.abs_error = std::abs(rec.numeric_value - rec.formula_value);
  rec.pass = rec.abs_error < tol && std::round(rec.numeric_value) == rec.formula_value;
  return rec.abs_error;
}

std::size_t resolve_split(const VerifyOptions& opts, std::size_t mu) {
  const std::size_t k = opts.split_k.value_or(0);
  if (k > mu) throw InvalidInput("split k = " + std::to_string(k) + " exceeds mu = " + std::to_string(mu));
  return k;
}

// (1/2 pi i) tr Log(Phi(rho L) Phi(L)^*) for rho = diag(exp(4 pi i d_j / beta)).
double eta_block(std::span<const std::int64_t> d, double beta) {
  const auto m = static_cast<Eigen::Index>(d.size());
  const HermitianSymplecticSpace space = HermitianSymplecticSpace::standard(d.size());
  const Matrix scramble = frame_scramble(m);
  const Lagrangian limit = graph_lagrangian(Matrix::Identity(m, m), space, scramble);
  Matrix rotation = Matrix::Identity(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    rotation(j, j) =
        std::polar(1.0, 4.0 * std::numbers::pi * static_cast<double>(d[static_cast<std::size_t>(j)]) / beta);
  const Lagrangian rotated = graph_lagrangian(rotation, space, scramble);
  const Matrix product = symplectic::lagrangian_to_unitary(rotated, space) *
                         symplectic::lagrangian_to_unitary(limit, space).adjoint();
  return (symplectic::trace_log(product) / Complex{0.0, 2.0 * std::numbers::pi}).real();
}

}  // namespace

std::vector<std::int64_t> d_values(const MilnorBasis& basis) {
  std::vector<std::int64_t> d;
  d.reserve(basis.size());
  for (const auto& e : spectral_flows(basis).entries) d.push_back(e.sf);
  return d;
}

CircleActionModel build_model(std::span<const std::int64_t> d, std::size_t split_k) {
  if (d.empty()) throw InvalidInput("the circle-action model needs mu >= 1");
  if (split_k > d.size()) throw InvalidInput("split k exceeds mu");
  HermitianSymplecticSpace space = HermitianSymplecticSpace::standard(d.size());
  const auto mu = static_cast<Eigen::Index>(d.size());
  Matrix span = Matrix::Zero(2 * mu, mu);
  span.topRows(mu) = Matrix::Identity(mu, mu);
  Lagrangian reference(span, space);
  return CircleActionModel{std::vector<std::int64_t>(d.begin(), d.end()), split_k, std::move(space),
                           std::move(reference)};
}

CircleActionModel build_model(const MilnorBasis& basis, std::size_t split_k) {
  const auto d = d_values(basis);
  return build_model(d, split_k);
}

std::size_t min_grid(std::span<const std::int64_t> d) {
  std::int64_t m = 0;
  for (auto v : d) m = std::max(m, v < 0 ? -v : v);
  return static_cast<std::size_t>(4 * m + 8);
}

LagrangianPairPath action_loop(const CircleActionModel& model, std::size_t samples) {
  const std::size_t bound = min_grid(model.d_values);
  if (samples < bound)
    throw StepTooCoarse("action loop needs at least " + std::to_string(bound) + " samples, got " +
                            std::to_string(samples),
                        0.0, 1.0);
  const auto mu = static_cast<Eigen::Index>(model.d_values.size());
  auto data = std::make_shared<const LoopData>(LoopData{model.d_values, model.split_k, model.space,
                                                        symplectic::lagrangian_to_unitary(model.reference, model.space),
                                                        frame_scramble(mu)});
  auto generator = [data, mu](double t) -> LagrangianPair {
    Matrix moving = Matrix::Identity(mu, mu);
    Matrix cauchy = Matrix::Identity(mu, mu);
    for (Eigen::Index j = 0; j < mu; ++j) {
      const double angle = 4.0 * std::numbers::pi * static_cast<double>(data->d[static_cast<std::size_t>(j)]) * t;
      if (static_cast<std::size_t>(j) < data->split_k) moving(j, j) = std::polar(1.0, angle);
      else cauchy(j, j) = std::polar(1.0, -angle);
    }
    return LagrangianPair{graph_lagrangian(moving * data->phi_reference, data->space, data->scramble),
                          graph_lagrangian(cauchy * data->phi_reference, data->space, data->scramble)};
  };
  return LagrangianPairPath::sample(std::move(generator), symplectic::uniform_grid(0.0, 1.0, samples));
}

double loop_maslov_dense(std::span<const std::int64_t> d, std::size_t split_k, std::size_t samples,
                         const symplectic::WindOptions& wind) {
  const CircleActionModel model = build_model(d, split_k);
  return symplectic::maslov(action_loop(model, samples), model.space, /*closed=*/true, wind);
}

VerificationRecord verify_sf_theorem(const MilnorBasis& basis, const VerifyOptions& opts) {
  const auto d = d_values(basis);
  if (d.empty()) throw InvalidInput("nothing to verify at a regular point (mu = 0)");
  VerificationRecord rec;
  rec.kind = "sf_theorem";
  rec.label = "all";
  rec.split_k = resolve_split(opts, d.size());
  rec.requested_grid = opts.grid;
  rec.grid = effective_grid(opts.grid, min_grid(d), opts, rec.grid_refined);
  rec.formula_value = static_cast<double>(-2 * std::accumulate(d.begin(), d.end(), std::int64_t{0}));

  if (d.size() <= opts.dense_limit) {
    rec.method = "dense";
    rec.numeric_value = loop_maslov_dense(d, rec.split_k, rec.grid, opts.wind);
  } else {
    // Direct sum of symplectic blocks; Maslov indices add.
    rec.method = "direct-sum";
    const std::size_t chunk = std::max<std::size_t>(1, opts.chunk);
    double total = 0.0;
    for (std::size_t start = 0; start < d.size(); start += chunk) {
      const std::size_t len = std::min(chunk, d.size() - start);
      std::span<const std::int64_t> block(d.data() + start, len);
      const std::size_t k_local = rec.split_k > start ? std::min(len, rec.split_k - start) : 0;
      total += loop_maslov_dense(block, k_local, rec.grid, opts.wind);
    }
    rec.numeric_value = total;
  }
  finish(rec, opts.tol);
  return rec;
}

VerificationRecord verify_sf_per_monomial(const MilnorBasis& basis, std::size_t index, const VerifyOptions& opts) {
  const auto d = d_values(basis);
  if (index >= d.size()) throw InvalidInput("monomial index out of range");
  VerificationRecord rec;
  rec.kind = "sf_monomial";
  rec.label = to_string(basis.monomials[index]);
  rec.split_k = resolve_split(opts, d.size());
  const std::int64_t dj = d[index];
  rec.formula_value = static_cast<double>(-2 * dj);
  const std::int64_t single[] = {dj};
  rec.requested_grid = opts.grid;
  rec.grid = effective_grid(opts.grid, min_grid(single), opts, rec.grid_refined);

  if (d.size() <= opts.dense_limit) {
    rec.method = "dense";
    std::vector<std::int64_t> only(d.size(), 0);
    only[index] = dj;
    rec.numeric_value = loop_maslov_dense(only, rec.split_k, rec.grid, opts.wind);
  } else {
    // The other coordinates stay fixed and contribute nothing.
    rec.method = "direct-sum";
    rec.numeric_value = loop_maslov_dense(single, index < rec.split_k ? 1 : 0, rec.grid, opts.wind);
  }
  finish(rec, opts.tol);
  return rec;
}

VerificationRecord verify_eta_fractional(const MilnorBasis& basis, std::span<const std::size_t> subset,
                                         const VerifyOptions& opts) {
  const auto d = d_values(basis);
  const Integer& beta = basis.weights.beta();
  VerificationRecord rec;
  rec.kind = "eta_fractional";
  rec.method = "exact+numeric";
  rec.label = subset.size() == basis.size() ? "all" : std::to_string(subset.size()) + " monomials";
  rec.split_k = opts.split_k.value_or(0);

  Rational formula = 0;
  double exact_part = 0.0;
  std::vector<std::int64_t> numeric_d;
  for (std::size_t idx : subset) {
    if (idx >= basis.size()) throw InvalidInput("subset index out of range");
    const Rational twice_l = 2 * basis.l_values[idx];
    formula += modified_frac(twice_l);
    // exp(2 pi i * 2l) = -1 exactly: the branch value is +1/2 by convention.
    if (frac(twice_l) == Rational(1, 2)) exact_part += 0.5;
    else numeric_d.push_back(d[idx]);
  }
  rec.formula_value = formula.get_d();

  double numeric_part = 0.0;
  if (numeric_d.size() > opts.dense_limit) rec.method = "exact+direct-sum";
  // tr Log is additive over a direct sum, so large subsets are split.
  const std::size_t chunk =
      numeric_d.size() <= opts.dense_limit ? numeric_d.size() : std::max<std::size_t>(1, opts.chunk);
  for (std::size_t start = 0; start < numeric_d.size(); start += chunk) {
    const std::size_t len = std::min(chunk, numeric_d.size() - start);
    numeric_part += eta_block(std::span<const std::int64_t>(numeric_d.data() + start, len), beta.get_d());
  }
  rec.numeric_value = exact_part + numeric_part;
  rec.abs_error = std::abs(rec.numeric_value - rec.formula_value);
  rec.pass = rec.abs_error < 1e-9;
  return rec;
}

std::vector<VerificationRecord> verify_all(const MilnorBasis& basis, const VerifyOptions& opts) {
  std::vector<VerificationRecord> out;
  out.push_back(verify_sf_theorem(basis, opts));
  auto per = par::verify_monomials_omp(basis, opts);
  out.insert(out.end(), per.begin(), per.end());
  std::vector<std::size_t> all(basis.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  out.push_back(verify_eta_fractional(basis, all, opts));
  return out;
}

}  // namespace milnorflow::verify
