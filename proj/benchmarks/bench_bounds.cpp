// End-to-end SDP bound evaluations on the channels the test suites lean on.
#include "qcap/bounds.hpp"
#include "qcap/random_channels.hpp"

#include <benchmark/benchmark.h>

using namespace qcap;

static void BM_beta_damping(benchmark::State& state) {
  auto ch = amplitude_damping(0.3);
  for (auto _ : state) {
    auto r = beta(ch);
    benchmark::DoNotOptimize(r.value_linear);
  }
}
BENCHMARK(BM_beta_damping);

static void BM_beta_qubit_pair(benchmark::State& state) {
  auto suite = seeded_qubit_suite();
  auto ch = tensor_channels(suite[0], suite[1]);
  for (auto _ : state) {
    auto r = beta(ch);
    benchmark::DoNotOptimize(r.value_linear);
  }
}
BENCHMARK(BM_beta_qubit_pair);

static void BM_success_prob_qubit(benchmark::State& state) {
  auto suite = seeded_qubit_suite();
  for (auto _ : state) {
    auto r = success_prob(suite[0], 2, CodeClass::NS_PPT);
    benchmark::DoNotOptimize(r.value_linear);
  }
}
BENCHMARK(BM_success_prob_qubit);

static void BM_one_shot_damping(benchmark::State& state) {
  auto ch = amplitude_damping(0.3);
  for (auto _ : state) {
    auto r = one_shot_capacity(ch, 0.01, CodeClass::NS_PPT);
    benchmark::DoNotOptimize(r.value_linear);
  }
}
BENCHMARK(BM_one_shot_damping);
