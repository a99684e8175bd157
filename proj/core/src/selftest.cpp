#include "qcap/selftest.hpp"

#include "qcap/bounds.hpp"
#include "qcap/channels.hpp"
#include "qcap/oracles.hpp"
#include "qcap/random_channels.hpp"
#include "qcap/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>

namespace qcap {
namespace {

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.9g", v);
    return b;
}

using Outcome = std::pair<bool, std::string>;

// ---- 1. damping family strong-converse formula --------------------------

Outcome check_damping_formula(const SolverOptions& o) {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double g = 0.1 * i;
        const double target = std::log2(1.0 + std::sqrt(1.0 - g));
        auto ch = amplitude_damping(g);
        worst = std::max(worst, std::abs(beta(ch, o).value_log.value() - target));
        worst = std::max(worst, std::abs(zeta(ch, o).value_log.value() - target));
    }
    return {worst <= 1e-6, "worst |dev| " + fmt(worst) + " over 11 gammas, both programs"};
}

// ---- 2. identity channels -----------------------------------------------

Outcome check_identity_values(const SolverOptions& o) {
    double worst = 0.0;
    for (int d : {2, 3, 4}) {
        auto ch = identity_channel(d);
        worst = std::max(worst, std::abs(beta(ch, o).value_linear - d));
        worst = std::max(worst, std::abs(zeta(ch, o).value_linear - d));
    }
    return {worst <= 1e-7, "worst |dev| " + fmt(worst) + " for d in {2,3,4}"};
}

// ---- 3. three-level family: one bit, strictness, packing witness --------

Outcome check_three_level_family(const SolverOptions& o) {
    const double pi = 3.14159265358979323846;
    bool ok = true;
    std::string note;
    for (double a : {pi / 16, pi / 8, pi / 4}) {
        auto ch = n_alpha(a);
        const double cb = beta(ch, o).value_log.value();
        const double cz = zeta(ch, o).value_log.value();
        const double m0 = zero_error_m0(ch, CodeClass::NS_PPT, o).value_linear;

        // Explicit packing witness: diagonal, orthogonal to the channel's
        // operator span, with top eigenvalue 1 + sec^2(alpha).
        const double sec2 = 1.0 / (std::cos(a) * std::cos(a));
        ComplexMatrix t0 = ComplexMatrix::zeros(3, 3);
        t0(0, 0) = -1.0;
        t0(1, 1) = sec2;
        t0(2, 2) = 1.0 - sec2;
        const double theta = lovasz_witness_value(ch, HermitianOperator({3}, t0));

        ok = ok && std::abs(cb - 1.0) <= 1e-6 && cz >= 1.0 + 1e-4 &&
             std::abs(m0 - 2.0) <= 1e-5 && theta > 2.0 &&
             std::abs(theta - (1.0 + sec2)) <= 1e-8;
        if (std::abs(a - pi / 4) < 1e-12) {
            ok = ok && std::abs(theta - 3.0) <= 1e-8;
            note = "at pi/4: Cbeta " + fmt(cb) + ", Czeta " + fmt(cz) +
                   ", M0 " + fmt(m0) + ", witness " + fmt(theta);
        }
    }
    return {ok, note};
}

// ---- 4. additivity of the output-certificate bound ----------------------

Outcome check_beta_additivity(const SolverOptions& o) {
    auto suite = seeded_qubit_suite();
    double worst = 0.0;
    auto dev = [&](const QuantumChannel& a, const QuantumChannel& b) {
        const double lhs = beta(tensor_channels(a, b), o).value_log.value();
        const double rhs = beta(a, o).value_log.value() + beta(b, o).value_log.value();
        return std::abs(lhs - rhs);
    };
    for (size_t i = 0; i < suite.size(); ++i)
        worst = std::max(worst, dev(suite[i], suite[(i + 1) % suite.size()]));
    auto ad = amplitude_damping(0.3);
    worst = std::max(worst, dev(ad, ad));
    return {worst <= 1e-5, "worst |dev| " + fmt(worst) + " over 6 tensor pairs"};
}

// ---- 5. full-code oracle equivalence ------------------------------------

Outcome check_oracle_equivalence(const SolverOptions& o) {
    auto suite = seeded_qubit_suite();
    double worst = 0.0;
    for (const auto& ch : suite) {
        worst = std::max(worst, std::abs(full_code_success_prob(ch, 2, true, nullptr, o) -
                                         success_prob(ch, 2, CodeClass::NS_PPT, o).value_linear));
        worst = std::max(worst, std::abs(full_code_success_prob(ch, 2, false, nullptr, o) -
                                         success_prob(ch, 2, CodeClass::NS, o).value_linear));
    }
    return {worst <= 1e-5, "worst |full - reduced| " + fmt(worst) + " at m=2, both classes"};
}

// ---- 6. primal/dual agreement -------------------------------------------

Outcome check_duality(const SolverOptions& o) {
    auto suite = seeded_qubit_suite();
    double worst = 0.0;
    for (const auto& ch : suite) {
        for (auto cls : {CodeClass::NS, CodeClass::NS_PPT})
            worst = std::max(worst,
                             std::abs(success_prob(ch, 2, cls, o).value_linear -
                                      success_prob_dual(ch, 2, cls, o).value_linear));
        auto fp = f_plus(ch, 2.0, o);
        worst = std::max(worst, std::abs(fp.value_linear - fp.params.at("dual_value")));
    }
    return {worst <= 1e-6, "worst |primal - dual| " + fmt(worst) + " across both program pairs"};
}

// ---- 7. bound orderings ---------------------------------------------------

Outcome check_orderings(const SolverOptions& o) {
    auto suite = seeded_qubit_suite();
    double worst = 0.0;  // largest violation, negative slack means ordered
    auto gap = [&](double small, double big) { worst = std::max(worst, small - big); };
    for (const auto& ch : suite) {
        for (double eps : {0.0, 0.01, 0.1}) {
            const double c_ppt = one_shot_capacity(ch, eps, CodeClass::NS_PPT, o).value_log.value();
            const double c_ns = one_shot_capacity(ch, eps, CodeClass::NS, o).value_log.value();
            const double re = ht_bound(ch, eps, false, o).value_log.value();
            const double re_ppt = ht_bound(ch, eps, true, o).value_log.value();
            gap(c_ppt, c_ns);
            gap(c_ns, re);
            gap(c_ppt, re_ppt);
        }
        const double f_ppt = success_prob(ch, 2, CodeClass::NS_PPT, o).value_linear;
        gap(f_ppt, f_plus(ch, 2.0, o).value_linear);
        gap(f_ppt, f_tilde_plus(ch, 2.0, o).value_linear);
    }
    return {worst <= 1e-7, "largest ordering violation " + fmt(worst)};
}

// ---- 8. strictness of the inequality-marginal relaxation ----------------

Outcome check_strictness_regions(const SolverOptions& o) {
    double best_ad = -1.0, at_g = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double g = 0.05 * i;
        auto ch = amplitude_damping(g);
        const double gap = ht_bound(ch, 0.01, false, o).value_log.value() -
                           one_shot_capacity(ch, 0.01, CodeClass::NS, o).value_log.value();
        if (gap > best_ad) { best_ad = gap; at_g = g; }
    }
    double best_cq = -1.0, at_a = 0.0;
    for (int i = 0; i <= 14; ++i) {
        const double a = std::min(0.71 + 0.02 * i, 0.999);
        auto ch = cq_two_state(a);
        const double gap = ht_bound(ch, 0.005, false, o).value_log.value() -
                           one_shot_capacity(ch, 0.005, CodeClass::NS, o).value_log.value();
        if (gap > best_cq) { best_cq = gap; at_a = a; }
    }
    const bool ok = best_ad >= 1e-4 && best_cq >= 1e-4;
    return {ok, "damping gap " + fmt(best_ad) + " at gamma=" + fmt(at_g) +
                    "; two-state gap " + fmt(best_cq) + " at a=" + fmt(at_a)};
}

// ---- 9. classical reduction to the converse LP --------------------------

std::vector<std::vector<double>> seeded_stochastic(int nx, int ny, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    auto uniform = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    std::vector<std::vector<double>> p(nx, std::vector<double>(ny));
    for (auto& row : p) {
        double s = 0.0;
        for (auto& v : row) { v = 0.05 + uniform(); s += v; }
        for (auto& v : row) v /= s;
    }
    return p;
}

Outcome check_classical_reduction(const SolverOptions& o) {
    const int shapes[5][2] = {{2, 2}, {3, 3}, {4, 4}, {2, 3}, {3, 2}};
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
        auto p = seeded_stochastic(shapes[k][0], shapes[k][1], 401 + k);
        auto ch = classical_channel(p);
        for (double eps : {0.0, 0.1, 0.25}) {
            const double lp = ppv_lp(p, eps, o).value_log.value();
            const double ns = one_shot_capacity(ch, eps, CodeClass::NS, o).value_log.value();
            const double ppt = one_shot_capacity(ch, eps, CodeClass::NS_PPT, o).value_log.value();
            worst = std::max({worst, std::abs(ns - lp), std::abs(ppt - lp)});
        }
    }
    std::vector<std::vector<double>> noiseless(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 3; ++i) noiseless[i][i] = 1.0;
    double worst_k = 0.0;
    for (double eps : {0.0, 0.1, 0.25})
        worst_k = std::max(worst_k, std::abs(ppv_lp(noiseless, eps, o).value_linear -
                                             3.0 / (1.0 - eps)));
    const bool ok = worst <= 1e-6 && worst_k <= 1e-7;
    return {ok, "worst |class dev| " + fmt(worst) + "; noiseless-3 dev " + fmt(worst_k)};
}

// ---- 10. zero-error consistency and the pentagon ------------------------

Outcome check_zero_error(const SolverOptions& o) {
    auto suite = seeded_qubit_suite();
    double worst = 0.0;
    for (const auto& ch : suite)
        for (auto cls : {CodeClass::NS, CodeClass::NS_PPT})
            worst = std::max(worst,
                             std::abs(zero_error_m0(ch, cls, o).value_linear -
                                      std::exp2(one_shot_capacity(ch, 0.0, cls, o).value_log.value())));

    std::vector<std::vector<double>> pent(5, std::vector<double>(5, 0.0));
    for (int x = 0; x < 5; ++x) {
        pent[x][x] = 0.5;
        pent[x][(x + 1) % 5] = 0.5;
    }
    const double relaxed = zero_error_m0(classical_channel(pent, "pentagon"),
                                         CodeClass::NS, o).value_linear;
    const int packed = zero_error_independent_set(pent);
    const bool ok = worst <= 1e-6 && std::abs(relaxed - 2.5) <= 1e-6 && packed == 2;
    return {ok, "worst |M0 - 2^C1| " + fmt(worst) + "; pentagon " + fmt(relaxed) +
                    " vs packing " + std::to_string(packed)};
}

// ---- 11. tensor-square multiplicativity ---------------------------------

Outcome check_multiplicativity(const SolverOptions& o) {
    auto ad = amplitude_damping(0.3);
    const double lhs = success_prob(tensor_channels(ad, ad), 4, CodeClass::NS_PPT, o).value_linear;
    const double fp = f_plus(ad, 2.0, o).value_linear;
    const bool ok = lhs <= fp * fp + 1e-6;
    return {ok, fmt(lhs) + " <= " + fmt(fp * fp) + " (+1e-6)"};
}

// ---- 12. decay of the success probability past the threshold ------------

Outcome check_decay(const SolverOptions& o) {
    auto ad = amplitude_damping(0.5);
    const double r = beta(ad, o).value_log.value() + 0.1;
    const double fp = std::min(1.0, f_plus(ad, std::exp2(r), o).value_linear);
    const double err50 = 1.0 - std::pow(fp, 50);
    const bool clause1 = fp <= 1.0 - 1e-4;
    const bool clause2 = err50 > 0.99;
    return {clause1 && clause2, "one-use value " + fmt(fp) + "; 50-use error bound " +
                                    fmt(err50) + " vs required 0.99"};
}

// ---- 13. entanglement-assisted comparisons ------------------------------

Outcome check_assisted_comparisons(const SolverOptions& o) {
    double min_gap = 1e9;
    for (int i = 0; i <= 15; ++i) {
        const double g = 0.05 * i;
        min_gap = std::min(min_gap, ea_capacity_search(amplitude_damping(g)).value_log.value() -
                                        beta(amplitude_damping(g), o).value_log.value());
    }
    double worst_lower = -1e9;
    for (int i = 0; i <= 20; ++i) {
        const double g = 0.05 * i;
        worst_lower = std::max(worst_lower, ad_holevo_lower(g) -
                                                beta(amplitude_damping(g), o).value_log.value());
    }
    const bool ok = min_gap > 1e-6 && worst_lower <= 1e-7;
    return {ok, "min assisted gap " + fmt(min_gap) + " (gamma <= 0.75); max lower-bound excess " +
                    fmt(worst_lower)};
}

// ---- 14. solver spectral unit checks ------------------------------------

double top_eigenvalue_sdp(const ComplexMatrix& h, const SolverOptions& o, SolverSolution* out) {
    SdpProblem p;
    auto t = p.scalar("t");
    p.minimize(p.scalar_var(t));
    p.psd(times_matrix(p.scalar_var(t), ComplexMatrix::identity(h.rows())) -
          constant_expr(h));
    SolverSolution s = p.solve(o);
    if (out) *out = s;
    return s.primal_objective;
}

double trace_norm_sdp(const ComplexMatrix& h, const SolverOptions& o) {
    SdpProblem p;
    const MatrixExpr x = p.var(p.hermitian("X", h.rows()));
    const ComplexMatrix eye = ComplexMatrix::identity(h.rows());
    p.maximize(inner_expr(h, x));
    p.psd(constant_expr(eye) - x);
    p.psd(constant_expr(eye) + x);
    return p.solve(o).primal_objective;
}

Outcome check_solver_units(const SolverOptions& o) {
    double worst = 0.0;
    bool identical = true;
    for (int k = 0; k < 10; ++k) {
        const int side = 2 + (k % 7);
        ComplexMatrix h = random_hermitian(side, 301 + k);
        auto es = spectral_decompose(HermitianOperator({side}, h));
        double tn = 0.0;
        for (double v : es.values) tn += std::abs(v);

        SolverSolution first, second;
        const double lam = top_eigenvalue_sdp(h, o, &first);
        worst = std::max(worst, std::abs(lam - es.values.front()));
        worst = std::max(worst, std::abs(trace_norm_sdp(h, o) - tn));

        top_eigenvalue_sdp(h, o, &second);
        identical = identical &&
                    std::memcmp(&first.primal_objective, &second.primal_objective,
                                sizeof(double)) == 0 &&
                    first.iterations == second.iterations;
    }
    return {worst <= 1e-7 && identical,
            "worst spectral dev " + fmt(worst) +
                (identical ? "; reruns bit-identical" : "; reruns DIFFER")};
}

struct CheckEntry {
    int index;
    const char* label;
    Outcome (*run)(const SolverOptions&);
};

const CheckEntry kChecks[] = {
    {1, "damping strong-converse formula", check_damping_formula},
    {2, "identity-channel values", check_identity_values},
    {3, "three-level family separations", check_three_level_family},
    {4, "tensor additivity", check_beta_additivity},
    {5, "full-code oracle equivalence", check_oracle_equivalence},
    {6, "primal/dual agreement", check_duality},
    {7, "bound orderings", check_orderings},
    {8, "relaxation strictness regions", check_strictness_regions},
    {9, "classical reduction to the converse LP", check_classical_reduction},
    {10, "zero-error consistency and pentagon", check_zero_error},
    {11, "tensor-square multiplicativity", check_multiplicativity},
    {12, "success decay past the threshold", check_decay},
    {13, "assisted-capacity comparisons", check_assisted_comparisons},
    {14, "solver spectral unit checks", check_solver_units},
};

} // namespace

std::vector<std::pair<int, std::string>> acceptance_labels() {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& c : kChecks) out.emplace_back(c.index, c.label);
    return out;
}

SolverOptions acceptance_solver_options() {
    SolverOptions o;
    if (const char* s = std::getenv("QCAP_GAP_TOL")) {
        const double v = std::atof(s);
        if (v > 0) o.gap_tol = v;
    }
    if (const char* s = std::getenv("QCAP_FEAS_TOL")) {
        const double v = std::atof(s);
        if (v > 0) o.feas_tol = v;
    }
    return o;
}

std::vector<CheckResult> run_acceptance(const std::vector<int>& which) {
    const SolverOptions opts = acceptance_solver_options();
    std::vector<CheckResult> out;
    for (const auto& c : kChecks) {
        if (!which.empty() &&
            std::find(which.begin(), which.end(), c.index) == which.end())
            continue;
        CheckResult r;
        r.index = c.index;
        r.label = c.label;
        try {
            auto [pass, detail] = c.run(opts);
            r.pass = pass;
            r.detail = std::move(detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace qcap
