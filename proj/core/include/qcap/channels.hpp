// Quantum channels in Kraus form, their Choi matrices, and the
// non-commutative confusability graph span{E_j^dag E_k}.
#pragma once

#include "qcap/operators.hpp"

#include <string>
#include <vector>

namespace qcap {

class QuantumChannel {
public:
    // Kraus operators must share the shape d_out x d_in and satisfy the
    // trace-preserving identity sum E^dag E = 1 within 1e-9.
    QuantumChannel(std::string label, int d_in, int d_out, std::vector<ComplexMatrix> kraus);

    const std::string& label() const { return label_; }
    int d_in() const { return d_in_; }
    int d_out() const { return d_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

    HermitianOperator apply(const HermitianOperator& rho) const;

private:
    std::string label_;
    int d_in_;
    int d_out_;
    std::vector<ComplexMatrix> kraus_;
};

// Unnormalized Choi matrix sum_ij |i><j| (x) N(|i><j|) on (input, output);
// trace equals d_in, partial trace over the output leg equals the input
// identity for a trace-preserving channel.
class ChoiMatrix {
public:
    explicit ChoiMatrix(const QuantumChannel& ch);
    ChoiMatrix(int d_in, int d_out, HermitianOperator j); // validated: PSD, tr_out = 1_in

    int d_in() const { return d_in_; }
    int d_out() const { return d_out_; }
    const HermitianOperator& op() const { return j_; } // dims {d_in, d_out}

private:
    int d_in_;
    int d_out_;
    HermitianOperator j_;
};

// Tensor product channel; Kraus set {E_i (x) F_j}, label "a(x)b" composed
// with an x, input and output dims multiply.
QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b);

// Complementary channel to the environment spanned by the Kraus index:
// (F_k)_{ij} = (E_i)_{kj}, one F_k per output basis vector, env dimension
// equals the number of Kraus operators.
QuantumChannel complementary_channel(const QuantumChannel& ch);

// Orthonormal basis (Hilbert-Schmidt) of span{E_j^dag E_k}, built by
// modified Gram-Schmidt with re-orthogonalization; vectors whose residual
// norm falls below 1e-10 of the original are dropped.
class NoncommutativeGraph {
public:
    explicit NoncommutativeGraph(const QuantumChannel& ch);

    int dim() const { return static_cast<int>(basis_.size()); }
    int side() const { return side_; }
    const std::vector<ComplexMatrix>& basis() const { return basis_; }

    // Frobenius norm of the projection of t onto the span; a zero residual
    // certifies t is orthogonal to the graph.
    double project_norm(const ComplexMatrix& t) const;

private:
    int side_;
    std::vector<ComplexMatrix> basis_;
};

// Frobenius norm of the projection of t onto the graph of ch.
double sperp_residual(const NoncommutativeGraph& g, const ComplexMatrix& t);

// Channel zoo.
QuantumChannel amplitude_damping(double gamma);
// Two pure states a|0> +- b|1| prepared from classical input x, a in [1/sqrt2, 1].
QuantumChannel cq_two_state(double a);
// Qutrit channel with Kraus sin(a)|0><1| + |1><2| and cos(a)|2><1| + |1><0|.
QuantumChannel n_alpha(double alpha);
// Classical channel from a row-stochastic matrix, rows indexed by input x,
// columns by output y: n_given_x[x][y] = N(y|x). Kraus {sqrt(N(y|x))|y><x|}.
QuantumChannel classical_channel(const std::vector<std::vector<double>>& n_given_x,
                                 const std::string& label = "classical");
QuantumChannel identity_channel(int d);

} // namespace qcap
