#include "milnorflow/random.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace milnorflow::symplectic {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) g(r, c) = Complex(n(rng), n(rng));
  return g;
}

Matrix random_hermitian(Rng& rng, Eigen::Index k, double scale) {
  const Matrix g = random_gaussian(rng, k, k);
  return scale * (g + g.adjoint()) / 2.0;
}

Matrix random_unitary(Rng& rng, Eigen::Index k) {
  const Matrix g = random_gaussian(rng, k, k);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(k, k);
  const Matrix r = qr.matrixQR();
  for (Eigen::Index i = 0; i < k; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

HermitianExponential::HermitianExponential(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  vectors_ = es.eigenvectors();
  values_ = es.eigenvalues();
}

Matrix HermitianExponential::operator()(double t) const {
  Matrix scaled = vectors_;
  for (Eigen::Index j = 0; j < values_.size(); ++j) scaled.col(j) *= std::polar(1.0, t * values_(j));
  return scaled * vectors_.adjoint();
}

Matrix gamma_rotation(const HermitianSymplecticSpace& space, double t) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return std::cos(t) * Matrix::Identity(n, n) + std::sin(t) * space.gamma();
}

}  // namespace milnorflow::symplectic
