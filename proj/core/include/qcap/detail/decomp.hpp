// Self-contained dense real factorizations used by the eigensolver and the
// interior-point solver. Row-major storage throughout, sizes are small
// (sides up to a couple hundred), so plain loops are adequate.
#pragma once

#include <vector>

namespace qcap::detail {

// Minimal dense real matrix. Deliberately tiny: storage plus indexing.
struct RMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RMatrix() = default;
    RMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

// Eigendecomposition of a real symmetric matrix (Householder reduction to
// tridiagonal form, then implicit-shift QL with eigenvector accumulation).
// Eigenvalues come back ascending, eigenvectors as columns of `vectors`.
// Throws std::runtime_error if the QL sweep fails to converge.
void sym_eig(const RMatrix& m, std::vector<double>& values, RMatrix& vectors);

// In-place lower Cholesky of a symmetric positive definite matrix.
// Returns false (leaving m partially overwritten) if a pivot is not positive.
bool cholesky(RMatrix& m);

// Solve L x = b and L^T x = b for a lower-triangular L from cholesky().
void forward_subst(const RMatrix& l, std::vector<double>& x);
void backward_subst_t(const RMatrix& l, std::vector<double>& x);

// LU factorization with partial pivoting; returns false on exact singularity.
struct LuFactors {
    RMatrix lu;
    std::vector<int> perm;
};
bool lu_factor(RMatrix m, LuFactors& out);
void lu_solve(const LuFactors& f, std::vector<double>& x);

// One-sided Jacobi SVD of a square matrix: m = u * diag(sigma) * v^T with
// orthogonal u, v and sigma descending. Accurate for the well-conditioned
// scaling products it is used on.
void jacobi_svd(const RMatrix& m, RMatrix& u, std::vector<double>& sigma, RMatrix& v);

// Greedy pivoted orthogonalization of the rows of m: returns indices of a
// maximal row subset that is linearly independent up to `tol` relative to
// the largest row norm. Used to drop redundant equality constraints.
std::vector<int> independent_rows(const RMatrix& m, double tol);

} // namespace qcap::detail
