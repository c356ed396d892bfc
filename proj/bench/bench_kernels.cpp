#include <benchmark/benchmark.h>

#include <random>

#include "starspin/algebra.hpp"
#include "starspin/kernels.hpp"

using namespace starspin;

namespace {

TermList<Complex> random_terms(int gens, size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const uint32_t top = (uint32_t{1} << gens) - 1;
  TermList<Complex> out;
  out.reserve(count);
  for (size_t k = 0; k < count; ++k)
    out.emplace_back(uint32_t(rng()) & top, Complex(unit(rng), unit(rng)));
  return out;
}

void run_wedge(benchmark::State& state, Exec exec) {
  const size_t n = size_t(state.range(0));
  auto a = random_terms(21, n, 101);
  auto b = random_terms(21, n, 202);
  auto mul = [](const Complex& x, const Complex& y) { return x * y; };
  for (auto _ : state) {
    std::map<uint32_t, Complex> acc;
    wedge_accumulate(a, b, mul, acc, exec);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n) * int64_t(n));
}

void BM_wedge_serial(benchmark::State& state) { run_wedge(state, Exec::Serial); }
void BM_wedge_parallel(benchmark::State& state) { run_wedge(state, Exec::Parallel); }

}  // namespace

BENCHMARK(BM_wedge_serial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_wedge_parallel)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
