#include "qcap/bounds.hpp"

#include "qcap/operators.hpp"
#include "qcap/random_channels.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qcap {
namespace {

ComplexMatrix choi_of(const QuantumChannel& ch) {
    return ChoiMatrix(ch).op().matrix();
}

ComplexMatrix choi_pt_out(const QuantumChannel& ch) {
    HermitianOperator j = ChoiMatrix(ch).op();
    return partial_transpose(j, 1).matrix();
}

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

void take_witness(BoundResult& r, const SolverSolution& s,
                  std::initializer_list<const char*> names) {
    for (const char* n : names) {
        auto it = s.assignments.find(n);
        if (it != s.assignments.end()) r.witness.emplace(n, it->second);
    }
}

// Shared constraint block: 0 <= F <= rho (x) 1_out, tr rho = 1, and the
// partial-transpose copy of the sandwich when requested.
void add_code_body(SdpProblem& p, const MatrixExpr& f, const MatrixExpr& rho,
                   int d_in, int d_out, bool ppt) {
    const ComplexMatrix i_out = ComplexMatrix::identity(d_out);
    const MatrixExpr cap = kron_right_expr(rho, i_out);
    p.psd(f);
    p.psd(cap - f);
    p.equal_scalar(trace_expr(rho), 1.0);
    if (ppt) {
        const MatrixExpr ft = partial_transpose_expr(f, {d_in, d_out}, {1});
        p.psd(ft);
        p.psd(cap - ft);
    }
}

double golden_max(const std::function<double(double)>& g, double lo, double hi,
                  double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    while (b - a > tol) {
        if (g1 < g2) {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + phi * (b - a);
            g2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - phi * (b - a);
            g1 = g(x1);
        }
    }
    const double m = (a + b) / 2;
    return std::max(g(m), std::max(g1, g2));
}

HermitianOperator clamp_to_state(const std::vector<int>& dims, const ComplexMatrix& m) {
    HermitianOperator h(dims, cxd(0.5) * (m + m.dagger()));
    EigenSystem es = spectral_decompose(h);
    const int n = h.side();
    ComplexMatrix out = ComplexMatrix::zeros(n, n);
    double tr = 0.0;
    for (int k = 0; k < n; ++k) tr += std::max(es.values[k], 0.0);
    if (tr <= 0.0) return HermitianOperator(dims, cxd(1.0 / n) * ComplexMatrix::identity(n));
    for (int k = 0; k < n; ++k) {
        const double v = std::max(es.values[k], 0.0) / tr;
        if (v == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += cxd(v) * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return HermitianOperator(dims, std::move(out));
}

} // namespace

const char* to_string(CodeClass cls) {
    return cls == CodeClass::NS ? "NS" : "NS_PPT";
}

BoundResult success_prob(const QuantumChannel& ch, int m, CodeClass cls,
                         const SolverOptions& opts) {
    if (m < 1) throw std::invalid_argument("success_prob: m must be >= 1");
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix j = choi_of(ch);

    SdpProblem p;
    const MatrixExpr f = p.var(p.hermitian("F", da * db));
    const MatrixExpr rho = p.var(p.hermitian("rho", da));
    p.maximize(inner_expr(j, f));
    add_code_body(p, f, rho, da, db, cls == CodeClass::NS_PPT);
    p.equal(partial_trace_expr(f, {da, db}, {1}),
            cxd(1.0 / m) * ComplexMatrix::identity(db));

    SolverSolution s = run_solver(p, opts, "success_prob");
    BoundResult r;
    r.name = "success_prob";
    r.channel_label = ch.label();
    r.params = {{"m", double(m)}};
    r.value_linear = s.primal_objective;
    take_witness(r, s, {"F", "rho"});
    r.diagnostics = std::move(s);
    return r;
}

BoundResult success_prob_dual(const QuantumChannel& ch, int m, CodeClass cls,
                              const SolverOptions& opts) {
    if (m < 1) throw std::invalid_argument("success_prob_dual: m must be >= 1");
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix j = choi_of(ch);
    const ComplexMatrix i_a = ComplexMatrix::identity(da);
    const std::vector<int> dims = {da, db};

    SdpProblem p;
    const MatrixExpr x = p.var(p.hermitian("X", da * db));
    const MatrixExpr sb = p.var(p.hermitian("S", db));
    const ScalarExpr t = p.scalar_var(p.scalar("t"));
    p.minimize(t + (1.0 / m) * trace_expr(sb));
    p.psd(x);

    // Operator bounded above by X + 1 (x) S (+ transpose-side slack).
    MatrixExpr majorant = x + kron_left_expr(i_a, sb);
    MatrixExpr row_load = x;    // tr_out of this must stay below t 1.
    if (cls == CodeClass::NS_PPT) {
        const MatrixExpr w = p.var(p.hermitian("W", da * db));
        const MatrixExpr y = p.var(p.hermitian("Y", da * db));
        p.psd(w);
        p.psd(y);
        majorant = majorant + partial_transpose_expr(w - y, dims, {1});
        row_load = row_load + w;
    }
    p.psd(majorant - constant_expr(j));
    p.psd(times_matrix(t, i_a) - partial_trace_expr(row_load, dims, {0}));

    SolverSolution s = run_solver(p, opts, "success_prob_dual");
    BoundResult r;
    r.name = "success_prob_dual";
    r.channel_label = ch.label();
    r.params = {{"m", double(m)}};
    r.value_linear = s.primal_objective;
    take_witness(r, s, {"X", "S", "W", "Y", "t"});
    r.diagnostics = std::move(s);
    return r;
}

namespace {

// Shared core of one_shot_capacity / ht_bound: minimize eta subject to the
// code body, tr(J F) >= 1 - eps, and the output marginal pinned to eta 1
// (equality) or capped by it (inequality).
BoundResult one_shot_core(const QuantumChannel& ch, double eps, bool ppt,
                          bool marginal_equality, const char* name,
                          const SolverOptions& opts) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument(std::string(name) + ": eps must lie in [0, 1)");
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix j = choi_of(ch);
    const ComplexMatrix i_b = ComplexMatrix::identity(db);

    SdpProblem p;
    const MatrixExpr f = p.var(p.hermitian("F", da * db));
    const MatrixExpr rho = p.var(p.hermitian("rho", da));
    const ScalarExpr eta = p.scalar_var(p.scalar("eta", /*nonneg=*/true));
    p.minimize(eta);
    add_code_body(p, f, rho, da, db, ppt);
    const MatrixExpr marginal_slack =
        times_matrix(eta, i_b) - partial_trace_expr(f, {da, db}, {1});
    if (marginal_equality)
        p.equal(marginal_slack, ComplexMatrix::zeros(db, db));
    else
        p.psd(marginal_slack);
    p.nonneg(inner_expr(j, f) - ScalarExpr(1.0 - eps));

    SolverSolution s = run_solver(p, opts, name);
    const double eta_opt = s.primal_objective;
    BoundResult r;
    r.name = name;
    r.channel_label = ch.label();
    r.params = {{"eps", eps}, {"eta", eta_opt}};
    r.value_linear = 1.0 / eta_opt;
    r.value_log = -std::log2(eta_opt);
    take_witness(r, s, {"F", "rho"});
    r.diagnostics = std::move(s);
    return r;
}

} // namespace

BoundResult one_shot_capacity(const QuantumChannel& ch, double eps, CodeClass cls,
                              const SolverOptions& opts) {
    return one_shot_core(ch, eps, cls == CodeClass::NS_PPT, /*marginal_equality=*/true,
                         "one_shot_capacity", opts);
}

BoundResult ht_bound(const QuantumChannel& ch, double eps, bool ppt,
                     const SolverOptions& opts) {
    return one_shot_core(ch, eps, ppt, /*marginal_equality=*/false, "ht_bound", opts);
}

BoundResult cq_one_shot(const std::vector<HermitianOperator>& outputs, double eps,
                        const SolverOptions& opts) {
    if (outputs.empty()) throw std::invalid_argument("cq_one_shot: no output states");
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("cq_one_shot: eps must lie in [0, 1)");
    const int db = outputs.front().side();
    for (const auto& rho : outputs) {
        if (rho.side() != db)
            throw std::invalid_argument("cq_one_shot: output sides differ");
        if (!is_psd(rho, 1e-8))
            throw std::invalid_argument("cq_one_shot: output state not PSD");
        if (std::abs(rho.matrix().trace().real() - 1.0) > 1e-8)
            throw std::invalid_argument("cq_one_shot: output state trace differs from 1");
    }
    const int nx = static_cast<int>(outputs.size());
    const ComplexMatrix i_b = ComplexMatrix::identity(db);

    SdpProblem p;
    std::vector<MatrixExpr> q;
    std::vector<ScalarExpr> sx;
    for (int x = 0; x < nx; ++x) {
        q.push_back(p.var(p.hermitian("Q" + std::to_string(x), db)));
        sx.push_back(p.scalar_var(p.scalar("s" + std::to_string(x), /*nonneg=*/true)));
    }
    ScalarExpr total = sx[0];
    for (int x = 1; x < nx; ++x) total = total + sx[x];
    p.maximize(total);

    MatrixExpr resolution = q[0];
    ScalarExpr hit = inner_expr(outputs[0].matrix(), q[0]);
    for (int x = 0; x < nx; ++x) {
        p.psd(q[x]);
        p.psd(times_matrix(sx[x], i_b) - q[x]);
        if (x > 0) {
            resolution = resolution + q[x];
            hit = hit + inner_expr(outputs[x].matrix(), q[x]);
        }
    }
    p.equal(resolution, i_b);
    p.nonneg(hit - (1.0 - eps) * total);

    SolverSolution s = run_solver(p, opts, "cq_one_shot");
    BoundResult r;
    r.name = "cq_one_shot";
    r.channel_label = "cq:" + std::to_string(nx) + "-state";
    r.params = {{"eps", eps}};
    r.value_linear = s.primal_objective;
    r.value_log = std::log2(s.primal_objective);
    for (int x = 0; x < nx; ++x) {
        const std::string n = "Q" + std::to_string(x);
        auto it = s.assignments.find(n);
        if (it != s.assignments.end()) r.witness.emplace(n, it->second);
    }
    r.diagnostics = std::move(s);
    return r;
}

BoundResult ppv_lp(const std::vector<std::vector<double>>& p_mat, double eps,
                   const SolverOptions& opts) {
    if (p_mat.empty() || p_mat.front().empty())
        throw std::invalid_argument("ppv_lp: empty channel matrix");
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("ppv_lp: eps must lie in [0, 1)");
    const int nx = static_cast<int>(p_mat.size());
    const int ny = static_cast<int>(p_mat.front().size());
    for (const auto& row : p_mat) {
        if (static_cast<int>(row.size()) != ny)
            throw std::invalid_argument("ppv_lp: ragged channel matrix");
        double sum = 0.0;
        for (double v : row) {
            if (v < -1e-12) throw std::invalid_argument("ppv_lp: negative transition probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("ppv_lp: rows must sum to 1");
    }

    SdpProblem p;
    std::vector<ScalarExpr> s(nx);
    std::vector<std::vector<ScalarExpr>> q(nx, std::vector<ScalarExpr>(ny));
    for (int x = 0; x < nx; ++x) {
        s[x] = p.scalar_var(p.scalar("s" + std::to_string(x), /*nonneg=*/true));
        for (int y = 0; y < ny; ++y)
            q[x][y] = p.scalar_var(
                p.scalar("q" + std::to_string(x) + "_" + std::to_string(y), /*nonneg=*/true));
    }
    ScalarExpr total = s[0];
    for (int x = 1; x < nx; ++x) total = total + s[x];
    p.maximize(total);
    ScalarExpr hit(0.0);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
            p.nonneg(s[x] - q[x][y]);
            if (p_mat[x][y] != 0.0) hit = hit + p_mat[x][y] * q[x][y];
        }
    for (int y = 0; y < ny; ++y) {
        ScalarExpr col = q[0][y];
        for (int x = 1; x < nx; ++x) col = col + q[x][y];
        p.nonneg(ScalarExpr(1.0) - col);
    }
    p.nonneg(hit - (1.0 - eps) * total);

    SolverSolution sol = run_solver(p, opts, "ppv_lp");
    BoundResult r;
    r.name = "ppv_lp";
    r.channel_label = "classical:" + std::to_string(nx) + "x" + std::to_string(ny);
    r.params = {{"eps", eps}};
    r.value_linear = sol.primal_objective;
    r.value_log = std::log2(sol.primal_objective);
    r.diagnostics = std::move(sol);
    return r;
}

namespace {

// min tr Z s.t. -R <= J^{T_out} <= R, -m 1 (x) Z <= R^{T_out} <= m 1 (x) Z.
SolverSolution solve_abs_relaxation(const QuantumChannel& ch, double m,
                                    const SolverOptions& opts, const char* what) {
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix jt = choi_pt_out(ch);
    const ComplexMatrix i_a = ComplexMatrix::identity(da);
    const std::vector<int> dims = {da, db};

    SdpProblem p;
    const MatrixExpr z = p.var(p.hermitian("Z", db));
    const MatrixExpr rr = p.var(p.hermitian("R", da * db));
    p.minimize(trace_expr(z));
    p.psd(rr - constant_expr(jt));
    p.psd(rr + constant_expr(jt));
    const MatrixExpr rt = partial_transpose_expr(rr, dims, {1});
    const MatrixExpr cap = m * kron_left_expr(i_a, z);
    p.psd(cap - rt);
    p.psd(cap + rt);
    return run_solver(p, opts, what);
}

// min tr S s.t. V >= J, -m 1 (x) S <= V^{T_out} <= m 1 (x) S.
SolverSolution solve_one_sided_relaxation(const QuantumChannel& ch, double m,
                                          const SolverOptions& opts, const char* what) {
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix j = choi_of(ch);
    const ComplexMatrix i_a = ComplexMatrix::identity(da);
    const std::vector<int> dims = {da, db};

    SdpProblem p;
    const MatrixExpr sb = p.var(p.hermitian("S", db));
    const MatrixExpr v = p.var(p.hermitian("V", da * db));
    p.minimize(trace_expr(sb));
    p.psd(v - constant_expr(j));
    const MatrixExpr vt = partial_transpose_expr(v, dims, {1});
    const MatrixExpr cap = m * kron_left_expr(i_a, sb);
    p.psd(cap - vt);
    p.psd(cap + vt);
    return run_solver(p, opts, what);
}

} // namespace

BoundResult f_plus(const QuantumChannel& ch, double m, const SolverOptions& opts) {
    if (!(m >= 1.0)) throw std::invalid_argument("f_plus: m must be >= 1");
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix j = choi_of(ch);
    const std::vector<int> dims = {da, db};

    SolverSolution primal = solve_abs_relaxation(ch, m, opts, "f_plus");

    // Independent dual formulation: max tr J (V - X)^{T_out} over
    // V + X <= (W - Y)^{T_out}, tr_in(W + Y) <= 1/m, all four PSD.
    SdpProblem d;
    const MatrixExpr v = d.var(d.hermitian("V", da * db));
    const MatrixExpr x = d.var(d.hermitian("X", da * db));
    const MatrixExpr w = d.var(d.hermitian("W", da * db));
    const MatrixExpr y = d.var(d.hermitian("Y", da * db));
    d.maximize(inner_expr(j, partial_transpose_expr(v - x, dims, {1})));
    d.psd(v);
    d.psd(x);
    d.psd(w);
    d.psd(y);
    d.psd(partial_transpose_expr(w - y, dims, {1}) - v - x);
    d.psd(constant_expr(cxd(1.0 / m) * ComplexMatrix::identity(db)) -
          partial_trace_expr(w + y, dims, {1}));
    SolverSolution dual = d.solve(opts);

    BoundResult r;
    r.name = "f_plus";
    r.channel_label = ch.label();
    r.params = {{"m", m}, {"dual_value", dual.primal_objective}};
    r.value_linear = primal.primal_objective;
    take_witness(r, primal, {"Z", "R"});
    for (const char* n : {"V", "X", "W", "Y"}) {
        auto it = dual.assignments.find(n);
        if (it != dual.assignments.end()) r.witness.emplace(std::string("dual_") + n, it->second);
    }
    r.diagnostics = std::move(primal);
    return r;
}

BoundResult f_tilde_plus(const QuantumChannel& ch, double m, const SolverOptions& opts) {
    if (!(m >= 1.0)) throw std::invalid_argument("f_tilde_plus: m must be >= 1");
    SolverSolution s = solve_one_sided_relaxation(ch, m, opts, "f_tilde_plus");
    BoundResult r;
    r.name = "f_tilde_plus";
    r.channel_label = ch.label();
    r.params = {{"m", m}};
    r.value_linear = s.primal_objective;
    take_witness(r, s, {"S", "V"});
    r.diagnostics = std::move(s);
    return r;
}

BoundResult beta(const QuantumChannel& ch, const SolverOptions& opts) {
    SolverSolution s = solve_abs_relaxation(ch, 1.0, opts, "beta");
    BoundResult r;
    r.name = "beta";
    r.channel_label = ch.label();
    const HermitianOperator jt({ch.d_in(), ch.d_out()}, choi_pt_out(ch));
    r.params = {{"ptranspose_cap", ch.d_out() * operator_norm(jt)}};
    r.value_linear = s.primal_objective;
    r.value_log = std::log2(s.primal_objective);
    take_witness(r, s, {"Z", "R"});
    // Witness names follow the generic relaxation; expose the output-side
    // certificate under its capacity-facing name as well.
    if (r.witness.count("Z")) r.witness.emplace("S", r.witness.at("Z"));
    r.diagnostics = std::move(s);
    return r;
}

BoundResult zeta(const QuantumChannel& ch, const SolverOptions& opts) {
    SolverSolution s = solve_one_sided_relaxation(ch, 1.0, opts, "zeta");
    BoundResult r;
    r.name = "zeta";
    r.channel_label = ch.label();
    r.value_linear = s.primal_objective;
    r.value_log = std::log2(s.primal_objective);
    take_witness(r, s, {"S", "V"});
    r.diagnostics = std::move(s);
    return r;
}

BoundResult zero_error_m0(const QuantumChannel& ch, CodeClass cls,
                          const SolverOptions& opts) {
    const int da = ch.d_in(), db = ch.d_out();
    const ComplexMatrix j = choi_of(ch);
    const ComplexMatrix i_b = ComplexMatrix::identity(db);
    const std::vector<int> dims = {da, db};

    SdpProblem p;
    const MatrixExpr sa = p.var(p.hermitian("S", da));
    const MatrixExpr u = p.var(p.hermitian("U", da * db));
    p.maximize(trace_expr(sa));
    const MatrixExpr cap = kron_right_expr(sa, i_b);
    p.psd(u);
    p.psd(cap - u);
    p.equal(partial_trace_expr(u, dims, {1}), i_b);
    p.equal_scalar(inner_expr(j, cap - u), 0.0);
    if (cls == CodeClass::NS_PPT) {
        const MatrixExpr ut = partial_transpose_expr(u, dims, {1});
        p.psd(ut);
        p.psd(cap - ut);
    }

    SolverSolution s = run_solver(p, opts, "zero_error_m0");
    BoundResult r;
    r.name = "zero_error_m0";
    r.channel_label = ch.label();
    r.value_linear = s.primal_objective;
    r.value_log = std::log2(s.primal_objective);
    take_witness(r, s, {"S", "U"});
    r.diagnostics = std::move(s);
    return r;
}

double lovasz_witness_value(const QuantumChannel& ch, const HermitianOperator& t) {
    if (t.side() != ch.d_in())
        throw std::invalid_argument("lovasz_witness_value: witness side differs from d_in");
    NoncommutativeGraph graph(ch);
    const double resid = sperp_residual(graph, t.matrix());
    if (resid > 1e-8) {
        std::ostringstream msg;
        msg << "lovasz_witness_value: witness not orthogonal to the confusability span"
               " (residual "
            << resid << ")";
        throw std::invalid_argument(msg.str());
    }
    HermitianOperator one_plus(t.dims(),
                               ComplexMatrix::identity(t.side()) + t.matrix());
    EigenSystem es = spectral_decompose(one_plus);
    const double min_eig = es.values.back();
    if (min_eig < -1e-8) {
        std::ostringstream msg;
        msg << "lovasz_witness_value: 1 + t has negative eigenvalue " << min_eig;
        throw std::invalid_argument(msg.str());
    }
    return es.values.front();
}

double ea_mutual_info(const QuantumChannel& ch, const HermitianOperator& rho) {
    if (rho.side() != ch.d_in())
        throw std::invalid_argument("ea_mutual_info: state side differs from d_in");
    if (!is_psd(rho, 1e-9))
        throw std::invalid_argument("ea_mutual_info: state not PSD");
    if (std::abs(rho.matrix().trace().real() - 1.0) > 1e-9)
        throw std::invalid_argument("ea_mutual_info: state trace differs from 1");
    const int d = ch.d_in();

    // Canonical purification (1 (x) sqrt(rho)) Phi (1 (x) sqrt(rho)) with
    // Phi the unnormalized maximally entangled matrix; its trace is tr rho.
    EigenSystem es = spectral_decompose(rho);
    ComplexMatrix sqrt_rho = ComplexMatrix::zeros(d, d);
    for (int k = 0; k < d; ++k) {
        const double v = std::sqrt(std::max(es.values[k], 0.0));
        if (v == 0.0) continue;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                sqrt_rho(i, j) += cxd(v) * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    // phi[(i,a),(j,b)] = <a| sqrt(rho)^T ... written directly from
    // |phi> = (1 (x) sqrt(rho)) sum_i |ii>, i.e. amplitudes sqrt(rho)(a, i).
    const int dd = d * d;
    ComplexMatrix phi = ComplexMatrix::zeros(dd, dd);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
            for (int j = 0; j < d; ++j)
                for (int b = 0; b < d; ++b)
                    phi(i * d + a, j * d + b) = sqrt_rho(a, i) * std::conj(sqrt_rho(b, j));
    // Normalize defensively; the construction already has unit trace.
    const double tr = phi.trace().real();
    phi = cxd(1.0 / tr) * phi;

    // Push the purification's second leg through the channel.
    const int db = ch.d_out();
    ComplexMatrix out = ComplexMatrix::zeros(d * db, d * db);
    for (const auto& e : ch.kraus()) {
        ComplexMatrix lift = kron(ComplexMatrix::identity(d), e);
        out += lift * phi * lift.dagger();
    }
    HermitianOperator joint({d, db}, std::move(out));

    const double h_in = von_neumann_entropy(rho);
    const double h_out = von_neumann_entropy(ch.apply(rho));
    const double h_joint = von_neumann_entropy(joint);
    return h_in + h_out - h_joint;
}

BoundResult ea_capacity_search(const QuantumChannel& ch) {
    if (ch.d_in() > 3)
        throw std::invalid_argument("ea_capacity_search: supported up to d_in = 3");
    const int d = ch.d_in();

    HermitianOperator best(
        {d}, cxd(1.0 / d) * ComplexMatrix::identity(d));
    double best_val = ea_mutual_info(ch, best);
    auto consider = [&](const HermitianOperator& rho) {
        const double v = ea_mutual_info(ch, rho);
        if (v > best_val) {
            best_val = v;
            best = rho;
        }
    };

    if (d == 2) {
        // Coarse pass over the Bloch ball.
        const int n = 20;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz) {
                    const double rx = -1.0 + 2.0 * (ix + 0.5) / n;
                    const double ry = -1.0 + 2.0 * (iy + 0.5) / n;
                    const double rz = -1.0 + 2.0 * (iz + 0.5) / n;
                    if (rx * rx + ry * ry + rz * rz > 1.0) continue;
                    ComplexMatrix m(2, 2);
                    m(0, 0) = 0.5 * (1 + rz);
                    m(1, 1) = 0.5 * (1 - rz);
                    m(0, 1) = 0.5 * cxd(rx, -ry);
                    m(1, 0) = 0.5 * cxd(rx, ry);
                    consider(HermitianOperator({2}, std::move(m)));
                }
    } else if (d == 3) {
        // Coarse pass over the eigenvalue simplex in the computational
        // basis; the refinement stage explores off-diagonal directions.
        const int n = 20;
        for (int i = 0; i <= n; ++i)
            for (int jj = 0; i + jj <= n; ++jj) {
                ComplexMatrix m = ComplexMatrix::zeros(3, 3);
                m(0, 0) = double(i) / n;
                m(1, 1) = double(jj) / n;
                m(2, 2) = double(n - i - jj) / n;
                consider(HermitianOperator({3}, std::move(m)));
            }
    }

    // Seeded local refinement around the incumbent.
    double step = 0.15;
    for (int it = 0; it < 50; ++it) {
        const ComplexMatrix dir = random_hermitian(d, 9000 + it);
        double norm = 0.0;
        for (int i = 0; i < d; ++i)
            for (int jj = 0; jj < d; ++jj) norm = std::max(norm, std::abs(dir(i, jj)));
        const ComplexMatrix cand =
            best.matrix() + cxd(step / std::max(norm, 1e-12)) * dir;
        const double before = best_val;
        consider(clamp_to_state({d}, cand));
        if (best_val <= before) step *= 0.8;
    }

    BoundResult r;
    r.name = "ea_capacity_search";
    r.channel_label = ch.label();
    r.value_log = best_val;
    r.value_linear = std::exp2(best_val);
    r.witness.emplace("rho", best.matrix());
    return r;
}

double ad_holevo_lower(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("ad_holevo_lower: gamma must lie in [0, 1]");
    auto g = [gamma](double p) {
        const double disc = std::max(0.0, 1.0 - 4.0 * (1.0 - gamma) * gamma * p * p);
        return binary_entropy((1.0 - gamma) * p) -
               binary_entropy((1.0 + std::sqrt(disc)) / 2.0);
    };
    // Coarse scan, then golden-section polish around the best cell.
    const int n = 1000;
    double best_p = 0.0, best = g(0.0);
    for (int i = 1; i <= n; ++i) {
        const double p = double(i) / n;
        const double v = g(p);
        if (v > best) {
            best = v;
            best_p = p;
        }
    }
    const double lo = std::max(0.0, best_p - 1.0 / n);
    const double hi = std::min(1.0, best_p + 1.0 / n);
    return golden_max(g, lo, hi, 1e-10);
}

double strong_converse_decay(const QuantumChannel& ch, double r, int n,
                             const SolverOptions& opts) {
    if (!(r > 0.0)) throw std::invalid_argument("strong_converse_decay: rate must be positive");
    if (n < 1) throw std::invalid_argument("strong_converse_decay: n must be >= 1");
    const double fp = std::min(1.0, f_plus(ch, std::exp2(r), opts).value_linear);
    return 1.0 - std::pow(fp, n);
}

} // namespace qcap
