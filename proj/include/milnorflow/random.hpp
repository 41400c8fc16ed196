#pragma once

#include <cstdint>
#include <random>

#include "milnorflow/symplectic.hpp"

namespace milnorflow::symplectic {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream, index); identical on every platform
// run with the same standard library.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
// (G + G^*) / 2 with standard complex Gaussian G, scaled.
Matrix random_hermitian(Rng& rng, Eigen::Index k, double scale = 1.0);
// Haar-distributed unitary (QR with phase correction).
Matrix random_unitary(Rng& rng, Eigen::Index k);

// exp(i t H) for Hermitian H.
class HermitianExponential {
 public:
  explicit HermitianExponential(const Matrix& h);
  Matrix operator()(double t) const;

 private:
  Matrix vectors_;
  Eigen::VectorXd values_;
};

// exp(t gamma) = cos(t) I + sin(t) gamma, valid because gamma^2 = -I.
Matrix gamma_rotation(const HermitianSymplecticSpace& space, double t);

}  // namespace milnorflow::symplectic
