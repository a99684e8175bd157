// Hermitian operators over tensor-product spaces: partial trace and
// transpose, subsystem permutation, spectral decomposition, norms and
// entropies. Subsystem index 0 is the most significant factor, matching
// the kron() convention.
#pragma once

#include "qcap/matrix.hpp"

#include <optional>
#include <vector>

namespace qcap {

class HermitianOperator {
public:
    // Validates the shape and hermiticity. Inputs whose antihermitian part
    // stays below 1e-12 in max-abs are symmetrized to (H + H^dag)/2;
    // anything worse is rejected.
    HermitianOperator(std::vector<int> dims, ComplexMatrix m);

    static HermitianOperator identity(std::vector<int> dims);
    static HermitianOperator zero(std::vector<int> dims);

    const std::vector<int>& dims() const { return dims_; }
    int side() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

    // Same operator viewed with a different subsystem split (product of dims
    // must match the side).
    HermitianOperator reshaped(std::vector<int> dims) const;

private:
    std::vector<int> dims_;
    ComplexMatrix mat_;
};

// Trace out every subsystem not listed in `keep`; kept subsystems stay in
// their original relative order. `keep` must be a non-empty strictly
// increasing list of valid subsystem indices.
HermitianOperator partial_trace(const HermitianOperator& m, const std::vector<int>& keep);

// Transpose one subsystem (basis rule |ij><kl| -> |il><kj| for the
// transposed factor), or a set of subsystems.
HermitianOperator partial_transpose(const HermitianOperator& m, int subsystem);
HermitianOperator partial_transpose(const HermitianOperator& m, const std::vector<int>& subsystems);

// Reorder tensor factors: perm[k] is the old position of the new k-th factor.
HermitianOperator permute_subsystems(const HermitianOperator& m, const std::vector<int>& perm);

// Tensor product of operators; dims concatenate.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// Place `op` (acting on the listed subsystems, in listed order) into the full
// space described by `dims`, identity elsewhere.
ComplexMatrix embed_on_subsystems(const ComplexMatrix& op, const std::vector<int>& where,
                                  const std::vector<int>& dims);

struct EigenSystem {
    std::vector<double> values; // descending
    ComplexMatrix vectors;      // orthonormal eigenvectors as columns, matching order
};

// Householder tridiagonalization plus implicit-shift QL, run on the real
// symmetric embedding of the Hermitian matrix; complex eigenvectors are
// recovered from the embedded ones.
EigenSystem spectral_decompose(const HermitianOperator& h);

double operator_norm(const HermitianOperator& h); // largest |eigenvalue|
double trace_norm(const ComplexMatrix& m);        // sum of singular values, square input

// Entropy in bits. Requires trace 1 within 1e-9 and eigenvalues >= -1e-9;
// small negative eigenvalues inside that tolerance are clamped to zero.
double von_neumann_entropy(const HermitianOperator& rho);

double binary_entropy(double p); // bits, p in [0, 1]

bool is_psd(const HermitianOperator& h, double tol);

} // namespace qcap
