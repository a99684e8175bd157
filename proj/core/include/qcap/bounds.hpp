// Converse bounds on classical communication over quantum channels, each
// expressed as a small semidefinite (or linear) program over the channel's
// Choi matrix, plus a few closed-form scalar optimizations.  Every solver-
// backed quantity returns a BoundResult carrying the value on both linear
// and log2 scales together with the optimizer's witness operators.
#pragma once

#include "qcap/channels.hpp"
#include "qcap/sdp.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcap {

// Code class the assistance is drawn from: no-signalling bipartite
// operations, optionally intersected with the positive-partial-transpose-
// preserving ones.
enum class CodeClass { NS, NS_PPT };
const char* to_string(CodeClass cls);

struct BoundResult {
    std::string name;           // bound identifier, e.g. "beta"
    std::string channel_label;
    std::map<std::string, double> params;  // m, eps, ... as applicable
    double value_linear = 0.0;
    std::optional<double> value_log;       // bits; log2(value_linear) when set
    std::map<std::string, ComplexMatrix> witness;
    SolverSolution diagnostics;
};

// Optimal success probability for transmitting m equiprobable messages in a
// single channel use with code-class assistance.  Maximizes tr(J F) over
// 0 <= F <= rho (x) 1, tr rho = 1, tr_in F = 1/m on the output side; the
// NS_PPT class additionally bounds the output-side partial transpose of F
// by the same pair.  Value lies in [1/m, 1].
BoundResult success_prob(const QuantumChannel& ch, int m, CodeClass cls,
                         const SolverOptions& opts = {});

// The same value through the dual program min t + tr(S)/m; used to validate
// strong duality against success_prob.
BoundResult success_prob_dual(const QuantumChannel& ch, int m, CodeClass cls,
                              const SolverOptions& opts = {});

// One-shot eps-error capacity with code-class assistance: value_log =
// -log2 of the least eta admitting 0 <= F <= rho (x) 1, tr rho = 1,
// tr_in F = eta 1, tr(J F) >= 1 - eps (PPT rows per class).  Solved as a
// single SDP; all constraints are jointly affine in (F, rho, eta).
BoundResult one_shot_capacity(const QuantumChannel& ch, double eps, CodeClass cls,
                              const SolverOptions& opts = {});

// Hypothesis-testing relaxation of one_shot_capacity: the output marginal
// pin tr_in F = eta 1 relaxes to tr_in F <= eta 1, which can only enlarge
// the value.  `ppt` adds the partial-transpose rows.
BoundResult ht_bound(const QuantumChannel& ch, double eps, bool ppt,
                     const SolverOptions& opts = {});

// One-shot eps-error capacity of the channel x -> outputs[x] that prepares
// a quantum state from a classical input, in its reduced block form:
// value_log = log2 max sum_x s_x over 0 <= Q_x <= s_x 1, sum Q_x = 1,
// sum tr(Q_x rho_x) >= (1-eps) sum s_x.
BoundResult cq_one_shot(const std::vector<HermitianOperator>& outputs, double eps,
                        const SolverOptions& opts = {});

// Finite-blocklength converse for a row-stochastic classical channel as a
// pure linear program (the fully classical reduction of cq_one_shot).
BoundResult ppv_lp(const std::vector<std::vector<double>>& p, double eps,
                   const SolverOptions& opts = {});

// Multiplicative relaxation of success_prob(NS_PPT): min tr Z over
// -R <= J^{T_out} <= R, -m 1 (x) Z <= R^{T_out} <= m 1 (x) Z.  Upper-bounds
// the NS_PPT success probability, tensorizes across channel uses, and
// admits real-valued m.  Both the primal and its dual max tr J (V-X)^{T_out}
// are solved; the primal value is returned with the dual recorded in
// params["dual_value"] for agreement checks.
BoundResult f_plus(const QuantumChannel& ch, double m, const SolverOptions& opts = {});

// Companion relaxation with the one-sided constraint V >= J in place of the
// absolute-value pair; same tensorization properties.
BoundResult f_tilde_plus(const QuantumChannel& ch, double m, const SolverOptions& opts = {});

// Strong-converse bound on the assisted classical capacity: value_linear =
// beta(N) = f_plus program at m = 1, value_log = log2 beta(N) bits.  The
// data cap beta <= d_out * ||J^{T_out}||_inf is recorded in
// params["ptranspose_cap"].
BoundResult beta(const QuantumChannel& ch, const SolverOptions& opts = {});

// Second strong-converse bound: value_linear = zeta(N) = f_tilde_plus
// program at m = 1, value_log = log2 zeta(N) bits.
BoundResult zeta(const QuantumChannel& ch, const SolverOptions& opts = {});

// One-shot zero-error transmissible messages (possibly fractional) with
// code-class assistance: max tr S over 0 <= U <= S (x) 1, tr_in U = 1,
// tr J (S (x) 1 - U) = 0, PPT rows per class.
BoundResult zero_error_m0(const QuantumChannel& ch, CodeClass cls,
                          const SolverOptions& opts = {});

// Certified lower bound on the operator-norm packing number of the
// channel's confusability span: accepts t orthogonal to span{E_j^dag E_k}
// (residual <= 1e-8) with 1 + t >= -1e-8, and returns ||1 + t||_inf.
double lovasz_witness_value(const QuantumChannel& ch, const HermitianOperator& t);

// Input-output mutual information (bits) of the channel on state rho:
// H(rho) + H(N(rho)) - H((id (x) N) phi_rho) with phi_rho the canonical
// purification of rho.
double ea_mutual_info(const QuantumChannel& ch, const HermitianOperator& rho);

// Numeric maximization of ea_mutual_info over input states (d_in <= 3):
// coarse grid over the state space followed by seeded local refinement.
// A plotting-grade lower estimate of the maximum, not a certified value.
BoundResult ea_capacity_search(const QuantumChannel& ch);

// Closed-form lower bound (bits) on the classical capacity of the qubit
// amplitude damping channel with decay gamma, maximized over the input
// occupation p by golden-section search.
double ad_holevo_lower(double gamma);

// Lower bound on the n-use error probability at rate r bits per use:
// 1 - min(1, f_plus(ch, 2^r))^n.  Positive once 2^r exceeds beta(ch).
double strong_converse_decay(const QuantumChannel& ch, double r, int n,
                             const SolverOptions& opts = {});

} // namespace qcap
