// Serial vs OpenMP twins of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "milnorflow/milnor.hpp"
#include "milnorflow/parallel.hpp"

using namespace milnorflow;

namespace {

std::string brieskorn(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "+z" : "z") + std::to_string(i) + "^" + std::to_string(a[i]);
  return s;
}

MilnorAlgebra algebra(const std::string& text) {
  const Polynomial f = parse_polynomial(text);
  return compute_milnor_algebra(f, infer_weights(f));
}

// staircase box of size prod(a_i - 1)
const std::vector<std::vector<int>> kBoxes = {{6, 6}, {8, 8, 8}, {6, 6, 6, 6}, {10, 10, 10}};

template <auto Kernel>
void BM_standard_monomials(benchmark::State& state) {
  const auto alg = algebra(brieskorn(kBoxes[static_cast<std::size_t>(state.range(0))]));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(alg.groebner));
  state.counters["mu"] = static_cast<double>(alg.basis.size());
}

std::vector<par::BatchItem> batch(std::size_t count) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> exponent(2, 7), nv(2, 4);
  std::vector<par::BatchItem> items;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<int> a(static_cast<std::size_t>(nv(rng)));
    for (auto& x : a) x = exponent(rng);
    items.push_back({parse_polynomial(brieskorn(a)), std::nullopt});
  }
  return items;
}

template <auto Kernel>
void BM_analyze_batch(benchmark::State& state) {
  const auto items = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(items));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_verify_monomials(benchmark::State& state) {
  const auto alg = algebra(brieskorn(kBoxes[static_cast<std::size_t>(state.range(0))]));
  const verify::VerifyOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(alg.basis, opts));
  state.counters["mu"] = static_cast<double>(alg.basis.size());
}

}  // namespace

BENCHMARK(BM_standard_monomials<par::standard_monomials_serial>)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_standard_monomials<par::standard_monomials_omp>)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_analyze_batch<par::analyze_batch_serial>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_analyze_batch<par::analyze_batch_omp>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_monomials<par::verify_monomials_serial>)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_monomials<par::verify_monomials_omp>)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
