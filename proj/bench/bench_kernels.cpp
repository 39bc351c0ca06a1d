// Serial reference against OpenMP kernels on the sizes the performance
// gate uses: the full convolution table at r = 20 and a 1000-element
// sparse operand at r = 20.

#include <benchmark/benchmark.h>

#include "sumsat/kernels.hpp"
#include "sumsat/rng.hpp"

namespace {

using namespace sumsat;

ElementSet sample(int r, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  ElementSet s{GroupRank(r)};
  while (s.size() < size) s.insert(static_cast<Element>(rng.below(std::size_t{1} << r)));
  return s;
}

template <class F>
void run(benchmark::State& state, F&& kernel) {
  const int r = static_cast<int>(state.range(0));
  const auto b = sample(r, static_cast<std::size_t>(state.range(1)), 1);
  const auto c = sample(r, static_cast<std::size_t>(state.range(2)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(b, c));
}

void BM_ConvolveSerial(benchmark::State& s) { run(s, kernels::serial::xor_convolve); }
void BM_ConvolveParallel(benchmark::State& s) { run(s, kernels::parallel::xor_convolve); }
void BM_TranslateSerial(benchmark::State& s) { run(s, kernels::serial::sumset_translate); }
void BM_TranslateParallel(benchmark::State& s) { run(s, kernels::parallel::sumset_translate); }
void BM_PairsSerial(benchmark::State& s) { run(s, kernels::serial::sumset_pairs); }
void BM_PairsParallel(benchmark::State& s) { run(s, kernels::parallel::sumset_pairs); }

BENCHMARK(BM_ConvolveSerial)->Args({16, 20000, 20000})->Args({20, 300000, 300000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveParallel)->Args({16, 20000, 20000})->Args({20, 300000, 300000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranslateSerial)->Args({20, 1000, 300000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranslateParallel)->Args({20, 1000, 300000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairsSerial)->Args({20, 1000, 1000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairsParallel)->Args({20, 1000, 1000})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
