#include "milnorflow/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "milnorflow/errors.hpp"

namespace milnorflow::symplectic {
namespace {

constexpr Complex kI{0.0, 1.0};

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Column-pivoted Gram-Schmidt: repeatedly take the column with the largest
// residual (lowest index on ties) until `count` columns are accepted.
Matrix pinned_basis(const Matrix& projection, std::size_t count) {
  const Eigen::Index n = projection.rows();
  Matrix residual = projection;
  Matrix basis(n, static_cast<Eigen::Index>(count));
  for (std::size_t c = 0; c < count; ++c) {
    Eigen::Index best = -1;
    double best_norm = 0.0;
    for (Eigen::Index j = 0; j < residual.cols(); ++j) {
      const double nrm = residual.col(j).norm();
      if (nrm > best_norm * (1.0 + 1e-12)) {
        best_norm = nrm;
        best = j;
      }
    }
    if (best < 0 || best_norm < 1e-8)
      throw InvalidInput("gamma eigenspaces do not have equal dimension");
    Vector v = residual.col(best) / best_norm;
    // Second pass keeps the basis orthonormal to working precision.
    for (std::size_t p = 0; p < c; ++p) v -= basis.col(static_cast<Eigen::Index>(p)).dot(v) * basis.col(static_cast<Eigen::Index>(p));
    v.normalize();
    basis.col(static_cast<Eigen::Index>(c)) = v;
    for (Eigen::Index j = 0; j < residual.cols(); ++j) residual.col(j) -= v.dot(residual.col(j)) * v;
  }
  return basis;
}

double min_singular_value(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().minCoeff();
}

}  // namespace

HermitianSymplecticSpace::HermitianSymplecticSpace(Matrix gamma) : gamma_(std::move(gamma)) {
  const Eigen::Index n = gamma_.rows();
  if (n == 0 || n != gamma_.cols() || n % 2 != 0) throw InvalidInput("gamma must be a non-empty even square matrix");
  const Matrix id = Matrix::Identity(n, n);
  if (max_abs(gamma_ * gamma_ + id) > 1e-12) throw InvalidInput("gamma^2 != -I");
  if (max_abs(gamma_.adjoint() + gamma_) > 1e-12) throw InvalidInput("gamma^* != -gamma");
  const auto [plus, minus] = projections_pm(*this);
  const double rank_plus = plus.trace().real();
  if (std::abs(rank_plus - static_cast<double>(n / 2)) > 1e-9)
    throw InvalidInput("the +i and -i eigenspaces of gamma differ in dimension");
  plus_basis_ = pinned_basis(plus, static_cast<std::size_t>(n / 2));
  minus_basis_ = pinned_basis(minus, static_cast<std::size_t>(n / 2));
}

HermitianSymplecticSpace HermitianSymplecticSpace::standard(std::size_t m) {
  const auto k = static_cast<Eigen::Index>(m);
  Matrix g = Matrix::Zero(2 * k, 2 * k);
  g.block(0, k, k, k) = -Matrix::Identity(k, k);
  g.block(k, 0, k, k) = Matrix::Identity(k, k);
  return HermitianSymplecticSpace(std::move(g));
}

std::pair<Matrix, Matrix> projections_pm(const HermitianSymplecticSpace& space) {
  const Eigen::Index n = space.gamma().rows();
  const Matrix id = Matrix::Identity(n, n);
  return {(id - kI * space.gamma()) / 2.0, (id + kI * space.gamma()) / 2.0};
}

Lagrangian::Lagrangian(Matrix frame, const HermitianSymplecticSpace& space) : frame_(std::move(frame)) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  if (frame_.rows() != n || frame_.cols() != n / 2) throw InvalidInput("Lagrangian frame must be 2m x m");
  const Eigen::Index m = n / 2;
  if (max_abs(frame_.adjoint() * frame_ - Matrix::Identity(m, m)) > 1e-10)
    throw InvalidInput("Lagrangian frame is not orthonormal");
  if (max_abs(frame_.adjoint() * space.gamma() * frame_) > 1e-10)
    throw InvalidInput("subspace is not isotropic (frame^* gamma frame != 0)");
}

Lagrangian Lagrangian::from_span(const Matrix& columns, const HermitianSymplecticSpace& space) {
  const auto m = static_cast<Eigen::Index>(space.half_dim());
  if (columns.rows() != static_cast<Eigen::Index>(space.dim()) || columns.cols() != m)
    throw InvalidInput("spanning set must be 2m x m");
  Eigen::HouseholderQR<Matrix> qr(columns);
  const Matrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i)
    if (std::abs(r(i, i)) < 1e-10) throw InvalidInput("spanning columns are linearly dependent");
  Matrix q = qr.householderQ() * Matrix::Identity(columns.rows(), m);
  return Lagrangian(std::move(q), space);
}

Matrix lagrangian_to_unitary(const Lagrangian& L, const HermitianSymplecticSpace& space) {
  const Matrix a = space.plus_basis().adjoint() * L.frame();
  const Matrix b = space.minus_basis().adjoint() * L.frame();
  // For a Lagrangian frame a^* a = b^* b = I/2. When the Gram matrix is that
  // close, sigma_min >= 1/2 already and the SVD can be skipped.
  auto rank_ok = [](const Matrix& x) {
    const Matrix g = x.adjoint() * x - 0.5 * Matrix::Identity(x.cols(), x.cols());
    return g.norm() < 0.25 || min_singular_value(x) >= 1e-8;
  };
  if (!rank_ok(a) || !rank_ok(b))
    throw DegenerateFrame("projection of the Lagrangian frame onto an eigenspace is rank deficient");
  // phi * a = b
  return a.transpose().partialPivLu().solve(b.transpose()).transpose();
}

Lagrangian unitary_to_lagrangian(const Matrix& phi, const HermitianSymplecticSpace& space) {
  const auto m = static_cast<Eigen::Index>(space.half_dim());
  if (phi.rows() != m || phi.cols() != m) throw InvalidInput("Phi must be m x m");
  if (max_abs(phi.adjoint() * phi - Matrix::Identity(m, m)) > 1e-9) throw InvalidInput("Phi is not unitary");
  Matrix frame = (space.plus_basis() + space.minus_basis() * phi) / std::numbers::sqrt2;
  return Lagrangian(std::move(frame), space);
}

Matrix cayley(const Matrix& A) {
  if (A.rows() != A.cols()) throw InvalidInput("cayley needs a square matrix");
  if (max_abs(A - A.adjoint()) > 1e-10) throw InvalidInput("cayley needs a Hermitian matrix");
  const Matrix id = Matrix::Identity(A.rows(), A.cols());
  // (A - i) and (A + i) commute, so the order of the inverse is irrelevant.
  return (A + kI * id).partialPivLu().solve(A - kI * id);
}

Matrix inverse_cayley(const Matrix& U) {
  const Matrix id = Matrix::Identity(U.rows(), U.cols());
  const Matrix denom = id - U;
  if (min_singular_value(denom) < 1e-12) throw InvalidInput("U - I is not invertible");
  return kI * denom.transpose().partialPivLu().solve((id + U).transpose()).transpose();
}

Complex principal_log(Complex z) {
  double arg = std::arg(z);
  if (arg <= -std::numbers::pi) arg = std::numbers::pi;
  return {std::log(std::abs(z)), arg};
}

namespace {

Complex branch_log(Complex z, BranchCut cut) {
  if (cut == BranchCut::principal) return principal_log(z);
  double arg = std::arg(z);
  if (arg <= -std::numbers::pi / 2) arg += 2 * std::numbers::pi;
  return {std::log(std::abs(z)), arg};
}

// Point on the unit circle where the branch cut sits.
Complex cut_point(BranchCut cut) { return cut == BranchCut::principal ? Complex{-1.0, 0.0} : Complex{0.0, -1.0}; }

}  // namespace

Vector unitary_eigenvalues(const Matrix& U) {
  if (U.rows() == 1) return U.col(0);
  bool diagonal = true;
  for (Eigen::Index j = 0; j < U.cols() && diagonal; ++j)
    for (Eigen::Index i = 0; i < U.rows(); ++i)
      if (i != j && U(i, j) != Complex{0.0, 0.0}) {
        diagonal = false;
        break;
      }
  if (diagonal) return U.diagonal();
  Eigen::ComplexEigenSolver<Matrix> es(U, false);
  if (es.info() != Eigen::Success) throw InvalidInput("eigenvalue iteration did not converge");
  return es.eigenvalues();
}

Complex trace_log(const Matrix& U, BranchCut cut) {
  const Vector ev = unitary_eigenvalues(U);
  Complex sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < ev.size(); ++i) sum += branch_log(ev(i), cut);
  return sum;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
  if (steps == 0) throw InvalidInput("a grid needs at least one step");
  std::vector<double> g(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps);
  g.back() = t1;
  return g;
}

UnitaryPath UnitaryPath::sample(UnitaryGenerator gen, std::vector<double> grid) {
  UnitaryPath p;
  p.samples.reserve(grid.size());
  for (double t : grid) p.samples.push_back(gen(t));
  p.grid = std::move(grid);
  p.generator = std::move(gen);
  return p;
}

UnitaryPath UnitaryPath::sample(UnitaryGenerator gen, double t0, double t1, std::size_t steps) {
  return sample(std::move(gen), uniform_grid(t0, t1, steps));
}

HermitianPath HermitianPath::sample(HermitianGenerator gen, std::vector<double> grid) {
  HermitianPath p;
  p.samples.reserve(grid.size());
  for (double t : grid) p.samples.push_back(gen(t));
  p.grid = std::move(grid);
  p.generator = std::move(gen);
  return p;
}

HermitianPath HermitianPath::sample(HermitianGenerator gen, double t0, double t1, std::size_t steps) {
  return sample(std::move(gen), uniform_grid(t0, t1, steps));
}

LagrangianPairPath LagrangianPairPath::sample(LagrangianPairGenerator gen, std::vector<double> grid) {
  LagrangianPairPath p;
  p.samples.reserve(grid.size());
  for (double t : grid) p.samples.push_back(gen(t));
  p.grid = std::move(grid);
  p.generator = std::move(gen);
  return p;
}

namespace {

template <typename Path>
void check_path_shape(const Path& path) {
  if (path.grid.size() < 2 || path.grid.size() != path.samples.size())
    throw InvalidInput("a path needs at least two samples, one per grid point");
  for (std::size_t i = 1; i < path.grid.size(); ++i)
    if (!(path.grid[i] > path.grid[i - 1])) throw InvalidInput("path grid must be strictly increasing");
}

struct StepWalker {
  const UnitaryGenerator& generator;
  const WindOptions& opts;
  WindResult& result;

  Complex step(double ta, double tb, const Matrix& ua, const Matrix& ub, int depth) {
    const Matrix w = ua.adjoint() * ub;
    const Vector ev = unitary_eigenvalues(w);
    double gap = 2.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) gap = std::min(gap, std::abs(ev(i) + 1.0));
    if (gap > opts.min_gap_to_minus_one) {
      ++result.steps;
      Complex s{0.0, 0.0};
      for (Eigen::Index i = 0; i < ev.size(); ++i) s += principal_log(ev(i));
      return s;
    }
    if (!generator || depth >= opts.max_depth)
      throw StepTooCoarse("step [" + std::to_string(ta) + ", " + std::to_string(tb) +
                              "] moves an eigenvalue too close to -1; refine the grid",
                          ta, tb);
    const double tm = 0.5 * (ta + tb);
    const Matrix um = generator(tm);
    ++result.refinements;
    return step(ta, tm, ua, um, depth + 1) + step(tm, tb, um, ub, depth + 1);
  }
};

}  // namespace

WindResult wind_detailed(const UnitaryPath& path, bool closed, const WindOptions& opts) {
  check_path_shape(path);
  WindResult result;
  StepWalker walker{path.generator, opts, result};
  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < path.samples.size(); ++k)
    total += walker.step(path.grid[k], path.grid[k + 1], path.samples[k], path.samples[k + 1], 0);

  const Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
  if (closed) {
    const double raw = (total / two_pi_i).real();
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > opts.integrality_tol)
      throw InvalidInput("closed path winding " + std::to_string(raw) + " is not an integer; is the path closed?");
    result.value = rounded;
    return result;
  }
  total += -trace_log(path.samples.back()) + trace_log(path.samples.front());
  result.value = (total / two_pi_i).real();
  return result;
}

double wind(const UnitaryPath& path, bool closed, const WindOptions& opts) {
  return wind_detailed(path, closed, opts).value;
}

double spectral_flow_cayley(const HermitianPath& path, bool closed, const WindOptions& opts) {
  check_path_shape(path);
  UnitaryPath u;
  u.grid = path.grid;
  u.samples.reserve(path.samples.size());
  for (const Matrix& a : path.samples) u.samples.push_back(cayley(a));
  if (path.generator) u.generator = [gen = path.generator](double t) { return cayley(gen(t)); };
  return wind(u, closed, opts);
}

long spectral_flow_crossings(const HermitianPath& path, bool closed, double zero_tol) {
  check_path_shape(path);
  // Twice the weighted count of non-positive eigenvalues: 2 per negative
  // eigenvalue, 1 per eigenvalue within zero_tol of 0.
  auto twice_negative = [&](const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    long count = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double ev = es.eigenvalues()(i);
      if (std::abs(ev) <= zero_tol) count += 1;
      else if (ev < 0) count += 2;
    }
    return count;
  };
  auto singular = [&](const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().minCoeff() <= zero_tol;
  };
  if (!closed && (singular(path.samples.front()) || singular(path.samples.back())))
    throw SingularEndpoint("open path endpoints must be invertible for the crossing count");

  long twice_flow = 0;
  long prev = twice_negative(path.samples.front());
  for (std::size_t k = 1; k < path.samples.size(); ++k) {
    const long cur = twice_negative(path.samples[k]);
    // An eigenvalue moving up through 0 lowers the negative count.
    twice_flow += prev - cur;
    prev = cur;
  }
  if (twice_flow % 2 != 0) throw SingularEndpoint("half-integral crossing count; endpoints are not invertible");
  return twice_flow / 2;
}

namespace {

UnitaryPath relative_unitary_path(const LagrangianPairPath& path, const HermitianSymplecticSpace& space) {
  check_path_shape(path);
  auto relative = [&space](const LagrangianPair& p) -> Matrix {
    return lagrangian_to_unitary(p.first, space) * lagrangian_to_unitary(p.second, space).adjoint();
  };
  UnitaryPath u;
  u.grid = path.grid;
  u.samples.reserve(path.samples.size());
  for (const LagrangianPair& p : path.samples) u.samples.push_back(relative(p));
  if (path.generator) u.generator = [gen = path.generator, relative](double t) { return relative(gen(t)); };
  return u;
}

}  // namespace

WindResult maslov_detailed(const LagrangianPairPath& path, const HermitianSymplecticSpace& space, bool closed,
                           const WindOptions& opts) {
  WindResult r = wind_detailed(relative_unitary_path(path, space), closed, opts);
  r.value = -r.value;
  return r;
}

double maslov(const LagrangianPairPath& path, const HermitianSymplecticSpace& space, bool closed,
              const WindOptions& opts) {
  return maslov_detailed(path, space, closed, opts).value;
}

double triple_index(const Lagrangian& P, const Lagrangian& Q, const Lagrangian& R,
                    const HermitianSymplecticSpace& space, BranchCut cut, double branch_tol) {
  const Matrix p = lagrangian_to_unitary(P, space);
  const Matrix q = lagrangian_to_unitary(Q, space);
  const Matrix r = lagrangian_to_unitary(R, space);
  const Complex cp = cut_point(cut);
  auto checked_log = [&](const Matrix& u) {
    const Vector ev = unitary_eigenvalues(u);
    Complex s{0.0, 0.0};
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i) - cp) < branch_tol)
        throw BranchHit("triple index: an eigenvalue sits on the logarithm's branch cut");
      s += branch_log(ev(i), cut);
    }
    return s;
  };
  const Complex sum = checked_log(p * q.adjoint()) + checked_log(q * r.adjoint()) - checked_log(p * r.adjoint());
  return (sum / Complex{0.0, 2.0 * std::numbers::pi}).real();
}

std::size_t intersection_dimension(const Lagrangian& L1, const Lagrangian& L2, const HermitianSymplecticSpace& space,
                                   double tol) {
  // gamma L1 = L1^perp; principal angles between it and L2.
  const Matrix c = (space.gamma() * L1.frame()).adjoint() * L2.frame();
  Eigen::JacobiSVD<Matrix> svd(c);
  std::size_t d = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1.0 - tol) ++d;
  return d;
}

}  // namespace milnorflow::symplectic
