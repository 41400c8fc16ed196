#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace milnorflow::symplectic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Finite-dimensional Hermitian symplectic space (C^{2m}, gamma) with
// gamma^2 = -I and gamma^* = -gamma. The orthonormal bases of the +i and -i
// eigenspaces are pinned at construction (Gram-Schmidt on the columns of the
// projections, in column order) and every Phi below is taken relative to them.
class HermitianSymplecticSpace {
 public:
  explicit HermitianSymplecticSpace(Matrix gamma);

  // gamma = [[0, -I], [I, 0]]
  static HermitianSymplecticSpace standard(std::size_t m);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(gamma_.rows()); }
  std::size_t half_dim() const noexcept { return dim() / 2; }
  const Matrix& gamma() const noexcept { return gamma_; }
  // Columns span ker(gamma - i) resp. ker(gamma + i).
  const Matrix& plus_basis() const noexcept { return plus_basis_; }
  const Matrix& minus_basis() const noexcept { return minus_basis_; }

 private:
  Matrix gamma_;
  Matrix plus_basis_;
  Matrix minus_basis_;
};

// Orthogonal projections (I -+ i gamma) / 2 onto the +-i eigenspaces.
std::pair<Matrix, Matrix> projections_pm(const HermitianSymplecticSpace& space);

// Lagrangian subspace given by an orthonormal frame (2m x m).
class Lagrangian {
 public:
  // Validates orthonormality and isotropy (frame^* gamma frame = 0) to 1e-10.
  Lagrangian(Matrix frame, const HermitianSymplecticSpace& space);

  // Orthonormalizes the columns first; still rejects non-isotropic spans.
  static Lagrangian from_span(const Matrix& columns, const HermitianSymplecticSpace& space);

  const Matrix& frame() const noexcept { return frame_; }
  // Orthogonal projection onto the subspace.
  Matrix projection() const { return frame_ * frame_.adjoint(); }

 private:
  Matrix frame_;
};

// Phi(L): ker(gamma - i) -> ker(gamma + i) with L = { x + Phi x }.
Matrix lagrangian_to_unitary(const Lagrangian& L, const HermitianSymplecticSpace& space);
Lagrangian unitary_to_lagrangian(const Matrix& phi, const HermitianSymplecticSpace& space);

// (A - i)(A + i)^{-1}; A must be Hermitian to 1e-10.
Matrix cayley(const Matrix& A);
// i (I + U)(I - U)^{-1}; requires U - I invertible.
Matrix inverse_cayley(const Matrix& U);

// Principal logarithm, imaginary part in (-pi, pi].
Complex principal_log(Complex z);

// Where the logarithm is cut. `principal` is the only branch the library uses
// for results; `shifted` exists so the self-test has a negative control.
enum class BranchCut { principal, shifted };

// sum of log(lambda) over the eigenvalues of a normal matrix.
Complex trace_log(const Matrix& U, BranchCut cut = BranchCut::principal);

// Eigenvalues of a normal matrix (unitaries in practice).
Vector unitary_eigenvalues(const Matrix& U);

struct WindOptions {
  // A step U_k -> U_{k+1} is accepted when every eigenvalue of U_k^* U_{k+1}
  // stays farther than this from -1.
  double min_gap_to_minus_one = 1e-3;
  // Bisection depth when a generator is available.
  int max_depth = 20;
  // Closed paths must round to an integer within this.
  double integrality_tol = 1e-6;
};

struct WindResult {
  double value = 0.0;
  std::size_t steps = 0;       // accepted steps after refinement
  std::size_t refinements = 0; // bisections performed
};

using UnitaryGenerator = std::function<Matrix(double)>;
using HermitianGenerator = std::function<Matrix(double)>;

// Sampled path on an increasing grid. The generator, when present, lets wind
// re-sample inside a step that is too coarse.
struct UnitaryPath {
  std::vector<double> grid;
  std::vector<Matrix> samples;
  UnitaryGenerator generator;

  static UnitaryPath sample(UnitaryGenerator gen, std::vector<double> grid);
  static UnitaryPath sample(UnitaryGenerator gen, double t0, double t1, std::size_t steps);
};

struct HermitianPath {
  std::vector<double> grid;
  std::vector<Matrix> samples;
  HermitianGenerator generator;

  static HermitianPath sample(HermitianGenerator gen, std::vector<double> grid);
  static HermitianPath sample(HermitianGenerator gen, double t0, double t1, std::size_t steps);
};

// Uniform grid t0 .. t1 with `steps` intervals.
std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

// Discrete winding number:
//   (1/2 pi i) [ sum_k tr Log(U_k^* U_{k+1}) - tr Log U_N + tr Log U_0 ]
// For closed paths the endpoint terms cancel and the result is rounded to the
// nearest integer (InvalidInput if it is not within integrality_tol).
WindResult wind_detailed(const UnitaryPath& path, bool closed, const WindOptions& opts = {});
double wind(const UnitaryPath& path, bool closed, const WindOptions& opts = {});

// wind of the Cayley image.
double spectral_flow_cayley(const HermitianPath& path, bool closed, const WindOptions& opts = {});

// Independent oracle: net count of eigenvalues passing through 0 upward,
// from dense eigendecompositions of consecutive samples (eigenvalues within
// zero_tol count as half crossed). Open paths need invertible endpoints.
long spectral_flow_crossings(const HermitianPath& path, bool closed, double zero_tol = 1e-8);

struct LagrangianPair {
  Lagrangian first;
  Lagrangian second;
};

using LagrangianPairGenerator = std::function<LagrangianPair(double)>;

struct LagrangianPairPath {
  std::vector<double> grid;
  std::vector<LagrangianPair> samples;
  LagrangianPairGenerator generator;

  static LagrangianPairPath sample(LagrangianPairGenerator gen, std::vector<double> grid);
};

// Mas(f, g) = -wind(Phi(f) Phi(g)^*)
double maslov(const LagrangianPairPath& path, const HermitianSymplecticSpace& space, bool closed,
              const WindOptions& opts = {});
WindResult maslov_detailed(const LagrangianPairPath& path, const HermitianSymplecticSpace& space,
                           bool closed, const WindOptions& opts = {});

// (1/2 pi i)[tr Log(Phi_P Phi_Q^*) + tr Log(Phi_Q Phi_R^*) - tr Log(Phi_P Phi_R^*)]
// Throws BranchHit if any of the three products has an eigenvalue within
// branch_tol of -1.
double triple_index(const Lagrangian& P, const Lagrangian& Q, const Lagrangian& R,
                    const HermitianSymplecticSpace& space, BranchCut cut = BranchCut::principal,
                    double branch_tol = 1e-10);

// dim(gamma L1 cap L2), i.e. dim(ker P_1 cap im P_2), from principal angles.
std::size_t intersection_dimension(const Lagrangian& L1, const Lagrangian& L2,
                                   const HermitianSymplecticSpace& space, double tol = 1e-8);

}  // namespace milnorflow::symplectic
