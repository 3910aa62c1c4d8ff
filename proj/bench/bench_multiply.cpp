#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "apnls/core/convolution.hpp"

namespace {

using namespace apnls;

APSeries random_series(const BasisPtr& basis, std::size_t terms, int radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> key(-radius, radius);
  std::normal_distribution<double> coeff;
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms; ++i) {
    FreqVector n = basis->zero();
    for (std::size_t j = 0; j < basis->dim(); ++j) n[j] = key(rng);
    out.push_back({n, Complex(coeff(rng), coeff(rng))});
  }
  return APSeries(basis, std::move(out));
}

struct Operands {
  APSeries f, g;
};

Operands operands(std::int64_t terms) {
  BasisPtr basis = make_basis({1.0, named_generator("sqrt2"), named_generator("sqrt3")});
  return {random_series(basis, terms, 12, 1), random_series(basis, terms, 12, 2)};
}

void BM_MultiplySerial(benchmark::State& state) {
  Operands op = operands(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::multiply_serial(op.f, op.g, TruncationPolicy::none()));
  }
  state.SetItemsProcessed(state.iterations() * op.f.size() * op.g.size());
}

void BM_MultiplyParallel(benchmark::State& state) {
  Operands op = operands(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::multiply_parallel(op.f, op.g, TruncationPolicy::none()));
  }
  state.SetItemsProcessed(state.iterations() * op.f.size() * op.g.size());
}

BENCHMARK(BM_MultiplySerial)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MultiplyParallel)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
