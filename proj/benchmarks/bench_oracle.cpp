// Full bipartite-code oracle versus the reduced program it certifies.
#include "qcap/bounds.hpp"
#include "qcap/oracles.hpp"
#include "qcap/random_channels.hpp"

#include <benchmark/benchmark.h>

using namespace qcap;

static void BM_full_code_oracle(benchmark::State& state) {
  auto suite = seeded_qubit_suite();
  for (auto _ : state) {
    double v = full_code_success_prob(suite[0], 2, true);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_full_code_oracle);

static void BM_reduced_program(benchmark::State& state) {
  auto suite = seeded_qubit_suite();
  for (auto _ : state) {
    auto r = success_prob(suite[0], 2, CodeClass::NS_PPT);
    benchmark::DoNotOptimize(r.value_linear);
  }
}
BENCHMARK(BM_reduced_program);
