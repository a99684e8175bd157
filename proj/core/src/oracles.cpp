#include "qcap/oracles.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcap {
namespace {

// Feasible programs over a valid channel should never certify infeasibility
// or unboundedness; reaching either means the model (not the data) is wrong.
SolverSolution run_solver(const SdpProblem& prob, const SolverOptions& opts,
                          const std::string& what) {
    SolverSolution s = prob.solve(opts);
    if (s.status == SolveStatus::infeasible || s.status == SolveStatus::unbounded)
        throw std::runtime_error(what + ": solver certified " +
                                 std::string(to_string(s.status)));
    return s;
}

// Message-match projector on the (A_i, B_o) pair: sum_k |kk><kk|.
ComplexMatrix match_projector(int m) {
    ComplexMatrix d = ComplexMatrix::zeros(m * m, m * m);
    for (int k = 0; k < m; ++k) d(k * m + k, k * m + k) = 1.0;
    return d;
}

void check_code_dims(const CodeChoi& z) {
    const auto& dims = z.op.dims();
    if (dims.size() != 4 || dims[0] != dims[3] || dims[0] < 1)
        throw std::invalid_argument(
            "code Choi must carry four subsystems [msg, in, out, msg]");
}

double lambda_min(const HermitianOperator& h) {
    return spectral_decompose(h).values.back();
}

// max |A - B| entrywise for the marginal conditions.
double max_abs_diff(const HermitianOperator& a, const HermitianOperator& b) {
    return (a.matrix() - b.matrix()).max_abs();
}

} // namespace

double code_residual(const CodeChoi& z, bool ppt) {
    check_code_dims(z);
    const auto& dims = z.op.dims();
    const int m = dims[0], dout = dims[2];

    double worst = std::max(0.0, -lambda_min(z.op));

    // Trace preservation: reducing over both output legs leaves the identity.
    HermitianOperator tp = partial_trace(z.op, {0, 2});
    worst = std::max(worst, (tp.matrix() - ComplexMatrix::identity(m * dout)).max_abs());

    // Sender cannot signal to the decoder without the channel: the marginal
    // over A_o factorizes with a maximally mixed message register.
    HermitianOperator lhs_a = partial_trace(z.op, {0, 2, 3});
    HermitianOperator rhs_a = tensor(HermitianOperator({m}, cxd(1.0 / m) * ComplexMatrix::identity(m)),
                                     partial_trace(z.op, {2, 3}));
    worst = std::max(worst, max_abs_diff(lhs_a, rhs_a));

    // Receiver cannot signal back: the marginal over B_o factorizes with a
    // maximally mixed channel-output register.
    HermitianOperator lhs_b = partial_trace(z.op, {0, 1, 2});
    HermitianOperator rhs_b = tensor(partial_trace(z.op, {0, 1}),
                                     HermitianOperator({dout}, cxd(1.0 / dout) * ComplexMatrix::identity(dout)));
    worst = std::max(worst, max_abs_diff(lhs_b, rhs_b));

    if (ppt)
        worst = std::max(worst, -std::min(0.0, lambda_min(partial_transpose(z.op, {2, 3}))));
    return worst;
}

double full_code_success_prob(const QuantumChannel& ch, int m, bool ppt,
                              CodeChoi* optimizer, const SolverOptions& opts) {
    if (m < 1) throw std::invalid_argument("full_code_success_prob: m >= 1 required");
    const int din = ch.d_in(), dout = ch.d_out();
    const long side = static_cast<long>(m) * din * dout * m;
    if (2 * side > 128)
        throw std::invalid_argument(
            "full_code_success_prob: embedded side " + std::to_string(2 * side) +
            " exceeds 128; use the reduced program for larger instances");
    const std::vector<int> dims{m, din, dout, m};

    SdpProblem p;
    auto zv = p.hermitian("Z", static_cast<int>(side));
    MatrixExpr z = p.var(zv);

    p.psd(z);
    p.equal(partial_trace_expr(z, dims, {0, 2}),
            ComplexMatrix::identity(m * dout));
    // No signalling from the message register to the decoder...
    p.equal(partial_trace_expr(z, dims, {0, 2, 3}) -
                (1.0 / m) * kron_left_expr(ComplexMatrix::identity(m),
                                           partial_trace_expr(z, dims, {2, 3})),
            ComplexMatrix::zeros(m * dout * m, m * dout * m));
    // ...and none from the channel output back to the sender.
    p.equal(partial_trace_expr(z, dims, {0, 1, 2}) -
                (1.0 / dout) * kron_right_expr(partial_trace_expr(z, dims, {0, 1}),
                                               ComplexMatrix::identity(dout)),
            ComplexMatrix::zeros(m * din * dout, m * din * dout));
    if (ppt) p.psd(partial_transpose_expr(z, dims, {2, 3}));

    // Average success probability: contract the transposed channel Choi on
    // the wire legs and the message-match projector on the outer legs.
    const ComplexMatrix jt = ChoiMatrix(ch).op().matrix().transpose();
    const ComplexMatrix objective =
        embed_on_subsystems(jt, {1, 2}, dims) *
        embed_on_subsystems(match_projector(m), {0, 3}, dims);
    p.maximize(inner_expr(cxd(1.0 / m) * objective, z));

    SolverSolution s = run_solver(p, opts, "full_code_success_prob");
    if (optimizer)
        *optimizer = CodeChoi{HermitianOperator(dims, extract_operator(s, "Z"))};
    return s.primal_objective;
}

HermitianOperator compose_choi(const QuantumChannel& ch, const CodeChoi& z) {
    check_code_dims(z);
    const auto& dims = z.op.dims();
    const int m = dims[0], din = dims[1], dout = dims[2];
    if (din != ch.d_in() || dout != ch.d_out())
        throw std::invalid_argument("compose_choi: code wire dims do not match channel");

    const ComplexMatrix jt = ChoiMatrix(ch).op().matrix().transpose();
    const ComplexMatrix big = embed_on_subsystems(jt, {1, 2}, dims) * z.op.matrix();

    // Partial trace over the two contracted wire legs, leaving (A_i, B_o).
    ComplexMatrix jm = ComplexMatrix::zeros(m * m, m * m);
    auto idx = [&](int ai, int ao, int bi, int bo) {
        return ((ai * din + ao) * dout + bi) * m + bo;
    };
    for (int ai = 0; ai < m; ++ai)
        for (int bo = 0; bo < m; ++bo)
            for (int aj = 0; aj < m; ++aj)
                for (int bp = 0; bp < m; ++bp) {
                    cxd acc = 0.0;
                    for (int ao = 0; ao < din; ++ao)
                        for (int bi = 0; bi < dout; ++bi)
                            acc += big(idx(ai, ao, bi, bo), idx(aj, ao, bi, bp));
                    jm(ai * m + bo, aj * m + bp) = acc;
                }
    return HermitianOperator({m, m}, jm);
}

double brute_force_classical_success(const std::vector<std::vector<double>>& p,
                                     int m) {
    const int nx = static_cast<int>(p.size());
    if (nx < 1 || nx > 4)
        throw std::invalid_argument("brute_force_classical_success: need 1 <= |X| <= 4");
    const int ny = static_cast<int>(p[0].size());
    if (ny < 1 || ny > 4)
        throw std::invalid_argument("brute_force_classical_success: need 1 <= |Y| <= 4");
    for (const auto& row : p)
        if (static_cast<int>(row.size()) != ny)
            throw std::invalid_argument("brute_force_classical_success: ragged matrix");
    if (m < 1 || m > 3)
        throw std::invalid_argument("brute_force_classical_success: need 1 <= m <= 3");

    long n_enc = 1;
    for (int k = 0; k < m; ++k) n_enc *= nx;
    long n_dec = 1;
    for (int y = 0; y < ny; ++y) n_dec *= m;

    double best = 0.0;
    std::vector<int> enc(m), dec(ny);
    for (long e = 0; e < n_enc; ++e) {
        long t = e;
        for (int k = 0; k < m; ++k) { enc[k] = t % nx; t /= nx; }
        for (long d = 0; d < n_dec; ++d) {
            t = d;
            for (int y = 0; y < ny; ++y) { dec[y] = t % m; t /= m; }
            double s = 0.0;
            for (int k = 0; k < m; ++k)
                for (int y = 0; y < ny; ++y)
                    if (dec[y] == k) s += p[enc[k]][y];
            best = std::max(best, s / m);
        }
    }
    return best;
}

namespace {

// Branch and bound on the complement: grow an independent set, prune when
// even taking every remaining candidate cannot beat the incumbent.
void bnb_independent(const std::vector<uint32_t>& adj, uint32_t candidates,
                     int size, int& best) {
    int remaining = __builtin_popcount(candidates);
    if (size + remaining <= best) return;
    if (candidates == 0) {
        best = std::max(best, size);
        return;
    }
    int v = __builtin_ctz(candidates);
    // Include v: drop it and its neighbours from the candidate pool.
    bnb_independent(adj, candidates & ~(adj[v] | (1u << v)), size + 1, best);
    // Exclude v.
    bnb_independent(adj, candidates & ~(1u << v), size, best);
}

} // namespace

int zero_error_independent_set(const std::vector<std::vector<double>>& p) {
    const int nx = static_cast<int>(p.size());
    if (nx < 1 || nx > 12)
        throw std::invalid_argument("zero_error_independent_set: need 1 <= |X| <= 12");
    const size_t ny = p.empty() ? 0 : p[0].size();
    for (const auto& row : p)
        if (row.size() != ny)
            throw std::invalid_argument("zero_error_independent_set: ragged matrix");

    std::vector<uint32_t> adj(nx, 0);
    for (int a = 0; a < nx; ++a)
        for (int b = a + 1; b < nx; ++b) {
            bool confusable = false;
            for (size_t y = 0; y < ny && !confusable; ++y)
                confusable = p[a][y] > 1e-12 && p[b][y] > 1e-12;
            if (confusable) {
                adj[a] |= 1u << b;
                adj[b] |= 1u << a;
            }
        }

    int best = 0;
    bnb_independent(adj, (nx == 32 ? ~0u : (1u << nx) - 1u), 0, best);
    return best;
}

} // namespace qcap
