#pragma once
// Independent reference computations that validate the reduced
// success-probability programs on tiny instances: a direct optimization over
// the full bipartite code body (no symmetry reduction), exhaustive classical
// encoder/decoder search, and an exact independent-set packing bound.

#include "qcap/channels.hpp"
#include "qcap/operators.hpp"
#include "qcap/sdp.hpp"

#include <vector>

namespace qcap {

// Choi matrix of a bipartite code: subsystem order [A_i, A_o, B_i, B_o],
// where A_i carries the message register (dim m), A_o feeds the channel
// input, B_i receives the channel output, and B_o holds the decoded message
// (dim m). The code is a two-party operation wrapped around one channel use.
struct CodeChoi {
    HermitianOperator op{{1, 1, 1, 1}, ComplexMatrix::identity(1)};
};

// Largest violation across the code's defining constraint families:
// positivity, trace preservation, the two no-signalling marginal conditions,
// and (when ppt) positivity of the partial transpose across the A/B cut.
// Values near zero certify a valid code of the corresponding class.
double code_residual(const CodeChoi& z, bool ppt = true);

// Direct optimization of the average success probability over the full code
// body. No reduction to the channel-sized program is performed -- this is the
// independent check that the reduced two-system program computes the same
// value. ppt=false drops the partial-transpose rows (plain non-signalling
// class). When `optimizer` is non-null the optimal code Choi is stored there.
// Guard: the embedded matrix side 2*m^2*d_in*d_out must stay <= 128
// (practically m <= 3 for qubit channels).
double full_code_success_prob(const QuantumChannel& ch, int m, bool ppt = true,
                              CodeChoi* optimizer = nullptr,
                              const SolverOptions& opts = {});

// Choi matrix (dims {m, m}) of the effective message-to-message channel
// obtained by wiring ch through the code z: the channel's transposed Choi is
// contracted against the code body over the A_o and B_i legs. For a code
// satisfying the positivity and trace conditions the result is again a
// channel Choi: PSD with output marginal tr_out = identity.
HermitianOperator compose_choi(const QuantumChannel& ch, const CodeChoi& z);

// Exhaustive search over deterministic unassisted encoders {0..m-1} -> X and
// decoders Y -> {0..m-1} for the classical channel p (row-stochastic,
// p[x][y] = N(y|x)); returns the best average success probability. Lower
// bounds every assisted value. Guard: |X| <= 4, |Y| <= 4, m <= 3.
double brute_force_classical_success(const std::vector<std::vector<double>>& p,
                                     int m);

// Exact maximum independent set of the confusability graph of p (two inputs
// are adjacent when some output has positive probability under both), by
// branch-and-bound. This is the one-shot zero-error message count attainable
// without assistance; the no-signalling relaxation can strictly exceed it.
// Guard: |X| <= 12.
int zero_error_independent_set(const std::vector<std::vector<double>>& p);

} // namespace qcap
