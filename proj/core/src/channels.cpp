#include "qcap/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qcap {

QuantumChannel::QuantumChannel(std::string label, int d_in, int d_out,
                               std::vector<ComplexMatrix> kraus)
    : label_(std::move(label)), d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
    if (d_in_ <= 0 || d_out_ <= 0) throw std::invalid_argument("QuantumChannel: dims must be positive");
    if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: at least one Kraus operator");
    for (const auto& e : kraus_)
        if (e.rows() != d_out_ || e.cols() != d_in_)
            throw std::invalid_argument("QuantumChannel: Kraus shape mismatch");
    ComplexMatrix acc(d_in_, d_in_);
    for (const auto& e : kraus_) acc += e.dagger() * e;
    acc -= ComplexMatrix::identity(d_in_);
    if (acc.max_abs() > 1e-9)
        throw std::invalid_argument("QuantumChannel: Kraus set is not trace preserving (defect " +
                                    std::to_string(acc.max_abs()) + ")");
}

HermitianOperator QuantumChannel::apply(const HermitianOperator& rho) const {
    if (rho.side() != d_in_) throw std::invalid_argument("apply: state side mismatch");
    ComplexMatrix out(d_out_, d_out_);
    for (const auto& e : kraus_) out += e * rho.matrix() * e.dagger();
    return HermitianOperator({d_out_}, std::move(out));
}

ChoiMatrix::ChoiMatrix(const QuantumChannel& ch) : d_in_(ch.d_in()), d_out_(ch.d_out()),
                                                   j_(HermitianOperator::zero({d_in_, d_out_})) {
    // J = sum_k |v_k><v_k| with v_k = sum_i |i> (x) E_k|i>.
    ComplexMatrix j(d_in_ * d_out_, d_in_ * d_out_);
    for (const auto& e : ch.kraus()) {
        std::vector<cxd> v(static_cast<std::size_t>(d_in_) * d_out_);
        for (int i = 0; i < d_in_; ++i)
            for (int b = 0; b < d_out_; ++b) v[static_cast<std::size_t>(i) * d_out_ + b] = e(b, i);
        for (std::size_t p = 0; p < v.size(); ++p) {
            if (v[p] == cxd(0.0)) continue;
            for (std::size_t q = 0; q < v.size(); ++q)
                j(static_cast<int>(p), static_cast<int>(q)) += v[p] * std::conj(v[q]);
        }
    }
    j_ = HermitianOperator({d_in_, d_out_}, std::move(j));
}

ChoiMatrix::ChoiMatrix(int d_in, int d_out, HermitianOperator j)
    : d_in_(d_in), d_out_(d_out), j_(std::move(j)) {
    if (j_.dims() != std::vector<int>{d_in_, d_out_})
        throw std::invalid_argument("ChoiMatrix: dims must be {d_in, d_out}");
    if (!is_psd(j_, 1e-9)) throw std::invalid_argument("ChoiMatrix: not positive semidefinite");
    HermitianOperator marg = partial_trace(j_, {0});
    ComplexMatrix defect = marg.matrix() - ComplexMatrix::identity(d_in_);
    if (defect.max_abs() > 1e-9)
        throw std::invalid_argument("ChoiMatrix: partial trace over output is not the identity");
}

QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(a.kraus().size() * b.kraus().size());
    for (const auto& e : a.kraus())
        for (const auto& f : b.kraus()) kraus.push_back(kron(e, f));
    return QuantumChannel(a.label() + " x " + b.label(), a.d_in() * b.d_in(),
                          a.d_out() * b.d_out(), std::move(kraus));
}

QuantumChannel complementary_channel(const QuantumChannel& ch) {
    const int env = static_cast<int>(ch.kraus().size());
    std::vector<ComplexMatrix> f(ch.d_out(), ComplexMatrix(env, ch.d_in()));
    for (int k = 0; k < ch.d_out(); ++k)
        for (int i = 0; i < env; ++i)
            for (int j = 0; j < ch.d_in(); ++j) f[k](i, j) = ch.kraus()[i](k, j);
    return QuantumChannel(ch.label() + "^c", ch.d_in(), env, std::move(f));
}

NoncommutativeGraph::NoncommutativeGraph(const QuantumChannel& ch) : side_(ch.d_in()) {
    std::vector<ComplexMatrix> gens;
    for (const auto& ej : ch.kraus())
        for (const auto& ek : ch.kraus()) gens.push_back(ej.dagger() * ek);

    const double drop = 1e-10;
    for (ComplexMatrix g : gens) {
        const double orig = g.frobenius_norm();
        if (orig <= drop) continue;
        // Two orthogonalization passes keep the basis orthonormal to round-off.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis_) {
                const cxd dot = hs_inner(b, g);
                if (dot != cxd(0.0)) g -= dot * b;
            }
        }
        const double res = g.frobenius_norm();
        if (res <= drop * orig || res <= drop) continue;
        g *= 1.0 / res;
        basis_.push_back(std::move(g));
    }
}

double NoncommutativeGraph::project_norm(const ComplexMatrix& t) const {
    if (t.rows() != side_ || t.cols() != side_)
        throw std::invalid_argument("project_norm: operator side mismatch");
    double s = 0.0;
    for (const auto& b : basis_) s += std::norm(hs_inner(b, t));
    return std::sqrt(s);
}

double sperp_residual(const NoncommutativeGraph& g, const ComplexMatrix& t) {
    return g.project_norm(t);
}

QuantumChannel amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("amplitude_damping: gamma outside [0, 1]");
    ComplexMatrix e0(2, 2), e1(2, 2);
    e0(0, 0) = 1.0;
    e0(1, 1) = std::sqrt(1.0 - gamma);
    e1(0, 1) = std::sqrt(gamma);
    return QuantumChannel("ad:" + std::to_string(gamma), 2, 2, {e0, e1});
}

QuantumChannel cq_two_state(double a) {
    const double lo = 1.0 / std::sqrt(2.0) - 1e-12;
    if (a < lo || a > 1.0 + 1e-12) throw std::invalid_argument("cq_two_state: a outside [1/sqrt2, 1]");
    a = std::min(a, 1.0);
    const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
    // Measure-and-prepare form: |psi_x><x| with psi_x = a|0> +- b|1>.
    ComplexMatrix k0(2, 2), k1(2, 2);
    k0(0, 0) = a;
    k0(1, 0) = b;
    k1(0, 1) = a;
    k1(1, 1) = -b;
    return QuantumChannel("cq:" + std::to_string(a), 2, 2, {k0, k1});
}

QuantumChannel n_alpha(double alpha) {
    if (alpha <= 0.0 || alpha > std::atan(1.0) + 1e-12) // pi/4
        throw std::invalid_argument("n_alpha: alpha outside (0, pi/4]");
    ComplexMatrix e0(3, 3), e1(3, 3);
    e0(0, 1) = std::sin(alpha);
    e0(1, 2) = 1.0;
    e1(2, 1) = std::cos(alpha);
    e1(1, 0) = 1.0;
    return QuantumChannel("nalpha:" + std::to_string(alpha), 3, 3, {e0, e1});
}

QuantumChannel classical_channel(const std::vector<std::vector<double>>& n_given_x,
                                 const std::string& label) {
    const int nx = static_cast<int>(n_given_x.size());
    if (nx == 0) throw std::invalid_argument("classical_channel: empty matrix");
    const int ny = static_cast<int>(n_given_x[0].size());
    for (const auto& row : n_given_x) {
        if (static_cast<int>(row.size()) != ny)
            throw std::invalid_argument("classical_channel: ragged matrix");
        double s = 0.0;
        for (double v : row) {
            if (v < -1e-12) throw std::invalid_argument("classical_channel: negative probability");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9)
            throw std::invalid_argument("classical_channel: row does not sum to 1");
    }
    std::vector<ComplexMatrix> kraus;
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
            if (n_given_x[x][y] <= 0.0) continue;
            ComplexMatrix k(ny, nx);
            k(y, x) = std::sqrt(n_given_x[x][y]);
            kraus.push_back(std::move(k));
        }
    return QuantumChannel(label, nx, ny, std::move(kraus));
}

QuantumChannel identity_channel(int d) {
    if (d <= 0) throw std::invalid_argument("identity_channel: d must be positive");
    return QuantumChannel("id:" + std::to_string(d), d, d, {ComplexMatrix::identity(d)});
}

} // namespace qcap
