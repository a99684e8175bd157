// Real symmetric conic standard form and a dense primal-dual interior-point
// solver (homogeneous self-dual embedding, Nesterov-Todd scaling, Mehrotra
// predictor-corrector).  Sized for small dense problems: every matrix is
// stored dense and the KKT system is solved by LU factorization.
#pragma once

#include "qcap/detail/decomp.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qcap {

// min c'x  s.t.  A x = b,  G x + s = h,  s in K,
// where K = (nonnegative orthant of length `nonneg`) x (PSD blocks).
// All variables x are free.  PSD blocks are vectorized in a scaled
// upper-triangular basis ("svec"): diagonal entries as-is, off-diagonal
// entries multiplied by sqrt(2), enumerated row-major over the upper
// triangle, so Euclidean inner products of vectorized blocks equal trace
// inner products of the matrices.  Rows of G/h are laid out as the nonneg
// entries first, then each PSD block's svec in order.
struct StandardConicForm {
  int num_vars = 0;
  std::vector<double> c;
  detail::RMatrix A;       // eq_rows x num_vars (may have zero rows)
  std::vector<double> b;
  detail::RMatrix G;       // cone_rows x num_vars
  std::vector<double> h;
  int nonneg = 0;
  std::vector<int> psd_sides;
  // Set by presolve when a dropped equality row was inconsistent with the
  // kept ones; the solver then reports primal infeasibility immediately.
  bool presolve_inconsistent = false;

  int cone_rows() const;   // nonneg + sum of svec dims
  int barrier_degree() const; // nonneg + sum of psd sides
};

enum class SolveStatus { optimal, infeasible, unbounded, max_iter, numerical_failure };

const char* to_string(SolveStatus s);

struct SolverOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iter = 200;
};

// Objective/residual snapshot per iteration, for convergence diagnostics and
// the weak-duality property (primal >= dual up to residual slack).
struct IterateInfo {
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  // For optimal/max_iter these are the tau-normalized primal/dual points.
  // For infeasible, (y, z) is the normalized dual improving ray; for
  // unbounded, (x, s) is the normalized primal improving ray.
  std::vector<double> x, y, z, s;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;            // <s,z>/tau^2, divided by max(1, |primal_objective|)
  double gap_absolute = 0.0;   // <s,z>/tau^2
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<IterateInfo> trace;
  std::string message;
};

// Dense path-following solve.  Deterministic: fixed cold start (cone
// identity), no randomization, so identical inputs give bit-identical runs.
ConicSolution solve_conic(const StandardConicForm& form, const SolverOptions& opts = {});

// svec/smat in the scaled upper-triangular basis used by G's PSD rows.
int svec_dim(int side);
std::vector<double> svec_upper(const detail::RMatrix& m);
detail::RMatrix smat_upper(const double* v, int side);

// Debug dump in a sparse text format for cross-checking against external
// solvers.  Header lines give dimensions and cone sizes; then one line per
// nonzero ("row col value" for matrices, "index value" for vectors):
//   conic 1
//   vars <n> / eq <p> / ineq <m> / nonneg <l> / psd <k> <side...>
//   c <nnz> ... / A <nnz> ... / b <nnz> ... / G <nnz> ... / h <nnz> ... / end
void dump_conic(const StandardConicForm& form, std::ostream& out);

} // namespace qcap
