#include "milnorflow/selftest.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>

#include "milnorflow/errors.hpp"
#include "milnorflow/random.hpp"
#include "milnorflow/symplectic.hpp"

namespace milnorflow::selftest {

namespace sp = milnorflow::symplectic;
using nlohmann::json;
using sp::Complex;
using sp::Matrix;

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Trial {
  bool pass = false;
  double error = 0.0;
  json detail;
};

using TrialFn = std::function<Trial(sp::Rng&, int)>;

CheckResult run_check(const std::string& name, std::uint64_t stream, int trials, const Options& opts,
                      const TrialFn& fn) {
  std::vector<Trial> out(static_cast<std::size_t>(std::max(trials, 0)));
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (int i = 0; i < trials; ++i) {
    auto rng = sp::make_rng(opts.seed, stream, static_cast<std::uint64_t>(i));
    Trial t;
    try {
      t = fn(rng, i);
    } catch (const std::exception& e) {
      t.pass = false;
      t.error = std::numeric_limits<double>::infinity();
      t.detail = {{"exception", e.what()}};
    }
    out[static_cast<std::size_t>(i)] = std::move(t);
  }

  CheckResult res;
  res.name = name;
  res.trials = trials;
  for (int i = 0; i < trials; ++i) {
    const Trial& t = out[static_cast<std::size_t>(i)];
    if (t.pass) ++res.passed;
    if (t.error > res.worst_error || std::isnan(t.error)) res.worst_error = t.error;
    if (!t.pass && res.counterexample.empty()) {
      json ce = t.detail;
      ce["trial"] = i;
      ce["seed"] = opts.seed;
      res.counterexample = ce.dump();
    }
  }
  return res;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

int uniform_int(sp::Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(sp::Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// U0 exp(i t H) with H scaled so that a unit interval typically winds once or twice.
struct RandomUnitaryPath {
  Matrix start;
  sp::HermitianExponential flow;

  RandomUnitaryPath(sp::Rng& rng, Eigen::Index m)
      : start(sp::random_unitary(rng, m)), flow(sp::random_hermitian(rng, m, 4.0)) {}
  RandomUnitaryPath(Matrix u0, const Matrix& h) : start(std::move(u0)), flow(h) {}

  Matrix operator()(double t) const { return start * flow(t); }
};

Trial wind_additivity(sp::Rng& rng) {
  const auto m = static_cast<Eigen::Index>(uniform_int(rng, 1, 6));
  const RandomUnitaryPath f(rng, m);
  const RandomUnitaryPath g(f(1.0), sp::random_hermitian(rng, m, 4.0));

  auto fg = [&](double t) { return t <= 0.5 ? f(2.0 * t) : g(2.0 * t - 1.0); };
  const double wf = sp::wind(sp::UnitaryPath::sample(f, 0.0, 1.0, 64), false);
  const double wg = sp::wind(sp::UnitaryPath::sample(g, 0.0, 1.0, 64), false);
  const double wfg = sp::wind(sp::UnitaryPath::sample(fg, 0.0, 1.0, 128), false);

  Trial t;
  t.error = std::abs(wfg - wf - wg);
  t.pass = t.error < 1e-9;
  t.detail = {{"m", m}, {"wind_f", wf}, {"wind_g", wg}, {"wind_fg", wfg}};
  return t;
}

Trial wind_scalar_loop(int m) {
  const auto dim = static_cast<Eigen::Index>(m);
  auto loop = [dim](double t) {
    return Matrix(std::polar(1.0, 2.0 * kPi * t) * Matrix::Identity(dim, dim));
  };
  const double w = sp::wind(sp::UnitaryPath::sample(loop, 0.0, 1.0, 32), true);
  Trial t;
  t.error = std::abs(w - m);
  t.pass = t.error == 0.0;
  t.detail = {{"m", m}, {"wind", w}};
  return t;
}

double min_abs_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().minCoeff();
}

Trial cayley_vs_crossings(sp::Rng& rng, int max_k) {
  const auto k = static_cast<Eigen::Index>(uniform_int(rng, 1, max_k));
  Matrix a0, a1;
  do a0 = sp::random_hermitian(rng, k, 2.0); while (min_abs_eigenvalue(a0) < 1e-2);
  do a1 = sp::random_hermitian(rng, k, 2.0); while (min_abs_eigenvalue(a1) < 1e-2);
  const Matrix c = sp::random_hermitian(rng, k, 2.0);

  auto gen = [a0, a1, c](double t) -> Matrix {
    return (1.0 - t) * a0 + t * a1 + std::sin(kPi * t) * c;
  };
  const auto path = sp::HermitianPath::sample(gen, 0.0, 1.0, 64);
  const double sf_cayley = sp::spectral_flow_cayley(path, false);
  // Fine grid for the crossing count: it has no way to refine by itself.
  const auto fine = sp::HermitianPath::sample(gen, 0.0, 1.0, 4096);
  const long sf_count = sp::spectral_flow_crossings(fine, false);

  Trial t;
  t.error = std::abs(sf_cayley - static_cast<double>(sf_count));
  t.pass = t.error < 1e-6;
  t.detail = {{"k", k}, {"sf_cayley", sf_cayley}, {"sf_crossings", sf_count},
              {"A0", matrix_json(a0)}, {"A1", matrix_json(a1)}, {"C", matrix_json(c)}};
  return t;
}

// Phi_P = V diag(-1 x d, e^{i theta}) V^* Phi_Q, then Mas(e^{t gamma} L_P, L_Q)
// over [-eps, eps] must equal d = dim(gamma L_P cap L_Q).
Trial maslov_normalization(sp::Rng& rng) {
  const auto m = static_cast<Eigen::Index>(uniform_int(rng, 1, 5));
  const auto d = static_cast<Eigen::Index>(uniform_int(rng, 0, static_cast<int>(m)));
  const auto space = sp::HermitianSymplecticSpace::standard(static_cast<std::size_t>(m));

  const Matrix v = sp::random_unitary(rng, m);
  Eigen::VectorXcd diag(m);
  for (Eigen::Index j = 0; j < m; ++j)
    diag(j) = j < d ? Complex(-1.0, 0.0) : std::polar(1.0, uniform_real(rng, -kPi + 0.5, kPi - 0.5));
  const Matrix phi_q = sp::random_unitary(rng, m);
  const Matrix phi_p = v * diag.asDiagonal() * v.adjoint() * phi_q;

  const sp::Lagrangian lp = sp::unitary_to_lagrangian(phi_p, space);
  const sp::Lagrangian lq = sp::unitary_to_lagrangian(phi_q, space);

  const double eps = 0.05;
  auto gen = [&](double t) {
    const Matrix rot = sp::gamma_rotation(space, t);
    return sp::LagrangianPair{sp::Lagrangian::from_span(rot * lp.frame(), space), lq};
  };
  const auto path = sp::LagrangianPairPath::sample(gen, sp::uniform_grid(-eps, eps, 16));
  const double mas = sp::maslov(path, space, false);
  const std::size_t dim = sp::intersection_dimension(lp, lq, space);

  Trial t;
  t.error = std::abs(mas - static_cast<double>(d));
  t.pass = t.error < 1e-9 && dim == static_cast<std::size_t>(d);
  t.detail = {{"m", m}, {"d", d}, {"maslov", mas}, {"intersection_dimension", dim}};
  return t;
}

struct LagrangianFlow {
  const sp::HermitianSymplecticSpace* space;
  RandomUnitaryPath phi;

  sp::Lagrangian operator()(double t) const { return sp::unitary_to_lagrangian(phi(t), *space); }
};

Trial cocycle(sp::Rng& rng, sp::BranchCut cut) {
  const auto m = static_cast<Eigen::Index>(uniform_int(rng, 1, 4));
  const auto space = sp::HermitianSymplecticSpace::standard(static_cast<std::size_t>(m));
  const LagrangianFlow p{&space, RandomUnitaryPath(rng, m)};
  const LagrangianFlow q{&space, RandomUnitaryPath(rng, m)};
  const LagrangianFlow r{&space, RandomUnitaryPath(rng, m)};

  const auto grid = sp::uniform_grid(0.0, 1.0, 64);
  auto mas = [&](const LagrangianFlow& a, const LagrangianFlow& b) {
    auto gen = [&](double t) { return sp::LagrangianPair{a(t), b(t)}; };
    return sp::maslov(sp::LagrangianPairPath::sample(gen, grid), space, false);
  };
  const double pq = mas(p, q);
  const double qr = mas(q, r);
  const double pr = mas(p, r);
  const double tau0 = sp::triple_index(p(0.0), q(0.0), r(0.0), space, cut);
  const double tau1 = sp::triple_index(p(1.0), q(1.0), r(1.0), space, cut);

  Trial t;
  t.error = std::abs(pq + qr - pr - (tau1 - tau0));
  t.pass = t.error < 1e-6;
  t.detail = {{"m", m},       {"mas_pq", pq},  {"mas_qr", qr}, {"mas_pr", pr},
              {"tau_0", tau0}, {"tau_1", tau1}, {"branch", cut == sp::BranchCut::principal ? "principal" : "shifted"}};
  return t;
}

Trial triple_vanishing(sp::Rng& rng) {
  const auto m = static_cast<Eigen::Index>(uniform_int(rng, 1, 6));
  const auto space = sp::HermitianSymplecticSpace::standard(static_cast<std::size_t>(m));
  const auto p = sp::unitary_to_lagrangian(sp::random_unitary(rng, m), space);
  const auto q = sp::unitary_to_lagrangian(sp::random_unitary(rng, m), space);
  const auto r = sp::unitary_to_lagrangian(sp::random_unitary(rng, m), space);
  const double ppr = sp::triple_index(p, p, r, space);
  const double pqq = sp::triple_index(p, q, q, space);

  Trial t;
  t.error = std::max(std::abs(ppr), std::abs(pqq));
  t.pass = t.error < 1e-9;
  t.detail = {{"m", m}, {"tau_PPR", ppr}, {"tau_PQQ", pqq}};
  return t;
}

Trial cayley_unitarity(sp::Rng& rng, int max_k) {
  const auto k = static_cast<Eigen::Index>(uniform_int(rng, 1, max_k));
  const Matrix a = sp::random_hermitian(rng, k, 3.0);
  const Matrix u = sp::cayley(a);
  const Matrix id = Matrix::Identity(k, k);
  const double unitarity = (u.adjoint() * u - id).norm();
  const double gap = Eigen::JacobiSVD<Matrix>(u - id).singularValues().minCoeff();
  const double roundtrip = (sp::inverse_cayley(u) - a).norm() / std::max(1.0, a.norm());

  Trial t;
  t.error = std::max(unitarity, roundtrip);
  t.pass = unitarity < 1e-9 && roundtrip < 1e-8 && gap > 1e-12;
  t.detail = {{"k", k}, {"unitarity_defect", unitarity}, {"roundtrip_error", roundtrip}, {"min_sv_U_minus_I", gap}};
  return t;
}

// V diag(e^{2 pi i n_j t}) V^*, perturbed by exp(i eps sin(pi t) H) which fixes the endpoints.
Trial homotopy(sp::Rng& rng) {
  const auto m = static_cast<Eigen::Index>(uniform_int(rng, 1, 4));
  std::vector<int> n(static_cast<std::size_t>(m));
  int expected = 0;
  for (auto& nj : n) expected += (nj = uniform_int(rng, -3, 3));
  const Matrix v = sp::random_unitary(rng, m);
  const sp::HermitianExponential bump(sp::random_hermitian(rng, m, 0.6));

  auto base = [=](double t) {
    Eigen::VectorXcd diag(m);
    for (Eigen::Index j = 0; j < m; ++j) diag(j) = std::polar(1.0, 2.0 * kPi * n[static_cast<std::size_t>(j)] * t);
    return Matrix(v * diag.asDiagonal() * v.adjoint());
  };
  auto perturbed = [=](double t) { return Matrix(base(t) * bump(std::sin(kPi * t))); };

  json winds = json::array();
  double worst = 0.0;
  for (std::size_t steps : {24u, 48u, 96u, 192u}) {
    const double wb = sp::wind(sp::UnitaryPath::sample(base, 0.0, 1.0, steps), true);
    const double wp = sp::wind(sp::UnitaryPath::sample(perturbed, 0.0, 1.0, steps), true);
    worst = std::max({worst, std::abs(wb - expected), std::abs(wp - expected)});
    winds.push_back({steps, wb, wp});
  }
  Trial t;
  t.error = worst;
  t.pass = worst == 0.0;
  t.detail = {{"m", m}, {"n", n}, {"expected", expected}, {"winds", winds}};
  return t;
}

}  // namespace

Report run(const Options& opts) {
  Report rep;
  rep.checks.push_back(run_check("wind_additivity", 1, opts.additivity_trials, opts,
                                 [](sp::Rng& rng, int) { return wind_additivity(rng); }));
  rep.checks.push_back(run_check("wind_scalar_loop", 2, opts.wind_max_m, opts,
                                 [](sp::Rng&, int i) { return wind_scalar_loop(i + 1); }));
  rep.checks.push_back(run_check("cayley_vs_crossings", 3, opts.oracle_trials, opts,
                                 [&](sp::Rng& rng, int) { return cayley_vs_crossings(rng, opts.oracle_max_k); }));
  rep.checks.push_back(run_check("maslov_normalization", 4, opts.additivity_trials, opts,
                                 [](sp::Rng& rng, int) { return maslov_normalization(rng); }));
  const auto cut = opts.break_branch ? sp::BranchCut::shifted : sp::BranchCut::principal;
  rep.checks.push_back(run_check("triple_index_cocycle", 5, opts.cocycle_trials, opts,
                                 [cut](sp::Rng& rng, int) { return cocycle(rng, cut); }));
  rep.checks.push_back(run_check("triple_index_vanishing", 6, opts.cocycle_trials, opts,
                                 [](sp::Rng& rng, int) { return triple_vanishing(rng); }));
  rep.checks.push_back(run_check("cayley_unitarity", 7, opts.oracle_trials, opts,
                                 [&](sp::Rng& rng, int) { return cayley_unitarity(rng, opts.oracle_max_k); }));
  rep.checks.push_back(run_check("homotopy_invariance", 8, opts.homotopy_perturbations, opts,
                                 [](sp::Rng& rng, int) { return homotopy(rng); }));
  return rep;
}

}  // namespace milnorflow::selftest
