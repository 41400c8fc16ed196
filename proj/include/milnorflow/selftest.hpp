#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace milnorflow::selftest {

struct Options {
  std::uint64_t seed = 20240611;
  // Negative control: evaluate the triple index with a shifted branch cut.
  bool break_branch = false;
  bool parallel = true;

  int additivity_trials = 100;
  int wind_max_m = 6;
  int oracle_trials = 200;
  int oracle_max_k = 8;
  int cocycle_trials = 100;
  int homotopy_perturbations = 50;
};

struct CheckResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  double worst_error = 0.0;
  // JSON text of the first failing trial, empty when all passed.
  std::string counterexample;

  bool ok() const { return trials == passed; }
};

struct Report {
  std::vector<CheckResult> checks;
  bool ok() const;
};

// Property suite over the symplectic engine: wind additivity, wind of
// e^{2 pi i t} I_m, Cayley vs crossing-count oracle, Maslov normalization,
// triple-index cocycle and vanishing, Cayley unitarity and homotopy
// invariance. Each trial draws from its own generator seeded by (seed, trial)
// so results are identical with and without OpenMP.
Report run(const Options& opts);

}  // namespace milnorflow::selftest
