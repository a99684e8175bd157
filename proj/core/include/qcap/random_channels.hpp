// Seeded random test inputs: Haar-random channels, Hermitian matrices, and
// stochastic matrices.  Everything here is deterministic in the seed — the
// generator and the Gaussian sampler are pinned (mt19937_64 + Box-Muller)
// rather than left to the standard library's unspecified distributions, so
// property suites reproduce bit-identically across platforms.
#pragma once

#include "qcap/channels.hpp"

#include <cstdint>
#include <vector>

namespace qcap {

// Channel from a Haar-random isometry V : in -> env (x) out with
// env dimension `kraus_count`; Kraus operators E_k = (<k|_env (x) 1_out) V.
QuantumChannel random_channel(int d_in, int d_out, int kraus_count, std::uint64_t seed);

ComplexMatrix random_hermitian(int side, std::uint64_t seed);

// Row-stochastic matrix with strictly positive entries, rows normalized.
std::vector<std::vector<double>> random_stochastic(int inputs, int outputs, std::uint64_t seed);

// The fixed five-channel qubit suite (seeds 101..105) used by the
// reproducible property runs and the acceptance checks.
std::vector<QuantumChannel> seeded_qubit_suite();

} // namespace qcap
