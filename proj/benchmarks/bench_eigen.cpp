// Dense symmetric eigensolver cost across the matrix sizes the SDP layer
// actually produces (realified PSD blocks up to side ~32).
#include "qcap/detail/decomp.hpp"
#include "qcap/random_channels.hpp"

#include <benchmark/benchmark.h>

using namespace qcap;

static void BM_sym_eig(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  auto h = random_hermitian(side, 12345);
  // Realify: [[Re, -Im], [Im, Re]] is symmetric with doubled spectrum.
  detail::RMatrix m(2 * side, 2 * side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const auto v = h(i, j);
      m(i, j) = v.real();
      m(i + side, j + side) = v.real();
      m(i, j + side) = -v.imag();
      m(i + side, j) = v.imag();
    }
  std::vector<double> values;
  detail::RMatrix vectors(0, 0);
  for (auto _ : state) {
    detail::sym_eig(m, values, vectors);
    benchmark::DoNotOptimize(values.data());
  }
}
BENCHMARK(BM_sym_eig)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
