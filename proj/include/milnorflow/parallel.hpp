#pragma once

// Data-parallel kernels. Every OpenMP kernel has a serial twin with the same
// signature; the serial one is the reference the tests compare against and
// the benchmark measures against. Results never depend on the thread count.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "milnorflow/groebner.hpp"
#include "milnorflow/invariants.hpp"
#include "milnorflow/model.hpp"

namespace milnorflow::par {

// Standard monomials inside the staircase box, unsorted but in box order.
std::vector<Monomial> standard_monomials_serial(const GroebnerBasis& gb);
std::vector<Monomial> standard_monomials_omp(const GroebnerBasis& gb);

struct BatchItem {
  Polynomial poly;
  std::optional<WeightSystem> weights;
};

struct BatchResult {
  std::optional<SingularityReport> report;
  std::string error;  // empty on success
};

std::vector<BatchResult> analyze_batch_serial(const std::vector<BatchItem>& items);
std::vector<BatchResult> analyze_batch_omp(const std::vector<BatchItem>& items);

// verify_sf_per_monomial for every basis element.
std::vector<verify::VerificationRecord> verify_monomials_serial(const MilnorBasis& basis,
                                                                const verify::VerifyOptions& opts);
std::vector<verify::VerificationRecord> verify_monomials_omp(const MilnorBasis& basis,
                                                             const verify::VerifyOptions& opts);

int max_threads();

}  // namespace milnorflow::par
