#include "milnorflow/parallel.hpp"

#include <omp.h>

#include <exception>

#include "milnorflow/errors.hpp"
#include "milnorflow/milnor.hpp"

namespace milnorflow::par {
namespace {

constexpr std::uint64_t kMaxBox = 50'000'000;

struct Box {
  std::vector<Exponent> bounds;
  std::vector<Monomial> leading;
  std::uint64_t size = 1;
};

Box make_box(const GroebnerBasis& gb) {
  Box box;
  if (gb.is_unit()) {
    box.size = 0;
    return box;
  }
  box.bounds = staircase_bounds(gb);
  box.leading = gb.leading_monomials();
  for (Exponent b : box.bounds) {
    box.size *= b;
    if (box.size > kMaxBox) throw InvalidInput("staircase box too large to enumerate");
  }
  return box;
}

// Mixed-radix decode, last variable fastest.
Monomial decode(std::uint64_t index, const std::vector<Exponent>& bounds) {
  Monomial m(bounds.size());
  for (std::size_t i = bounds.size(); i-- > 0;) {
    m[i] = static_cast<Exponent>(index % bounds[i]);
    index /= bounds[i];
  }
  return m;
}

bool is_standard(const Monomial& m, const std::vector<Monomial>& leading) {
  for (const Monomial& lm : leading)
    if (lm.divides(m)) return false;
  return true;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

BatchResult analyze_one(const BatchItem& item) {
  BatchResult r;
  try {
    const WeightSystem ws = item.weights ? *item.weights : infer_weights(item.poly);
    if (!check_weights(item.poly, ws)) throw NotQuasihomogeneous("f is not quasihomogeneous for " + to_string(ws));
    const MilnorAlgebra alg = compute_milnor_algebra(item.poly, ws);
    r.report = build_report(alg.basis);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

std::vector<Monomial> standard_monomials_serial(const GroebnerBasis& gb) {
  const Box box = make_box(gb);
  std::vector<Monomial> out;
  for (std::uint64_t idx = 0; idx < box.size; ++idx) {
    Monomial m = decode(idx, box.bounds);
    if (is_standard(m, box.leading)) out.push_back(std::move(m));
  }
  return out;
}

std::vector<Monomial> standard_monomials_omp(const GroebnerBasis& gb) {
  const Box box = make_box(gb);
  const auto n = static_cast<std::int64_t>(box.size);
  std::vector<char> keep(box.size, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < n; ++idx)
    keep[static_cast<std::size_t>(idx)] = is_standard(decode(static_cast<std::uint64_t>(idx), box.bounds), box.leading);
  std::vector<Monomial> out;
  for (std::uint64_t idx = 0; idx < box.size; ++idx)
    if (keep[idx]) out.push_back(decode(idx, box.bounds));
  return out;
}

std::vector<BatchResult> analyze_batch_serial(const std::vector<BatchItem>& items) {
  std::vector<BatchResult> out;
  out.reserve(items.size());
  for (const BatchItem& item : items) out.push_back(analyze_one(item));
  return out;
}

std::vector<BatchResult> analyze_batch_omp(const std::vector<BatchItem>& items) {
  std::vector<BatchResult> out(items.size());
  const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = analyze_one(items[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<verify::VerificationRecord> verify_monomials_serial(const MilnorBasis& basis,
                                                                const verify::VerifyOptions& opts) {
  std::vector<verify::VerificationRecord> out;
  out.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(verify::verify_sf_per_monomial(basis, i, opts));
  return out;
}

std::vector<verify::VerificationRecord> verify_monomials_omp(const MilnorBasis& basis,
                                                             const verify::VerifyOptions& opts) {
  std::vector<verify::VerificationRecord> out(basis.size());
  std::vector<std::exception_ptr> errors(basis.size());
  const auto n = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = verify::verify_sf_per_monomial(basis, idx, opts);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

}  // namespace milnorflow::par
