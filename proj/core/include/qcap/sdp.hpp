// Declarative SDP layer over complex Hermitian variables.  Problems are
// stated with matrix expressions (linear maps of variables plus constants),
// realified into the real symmetric conic standard form, and solved by the
// interior-point engine.  Values reported by SolverSolution always refer to
// the original complex program.
#pragma once

#include "qcap/conic.hpp"
#include "qcap/matrix.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qcap {

enum class Sense { minimize, maximize };

struct VarRef {
  int index = -1;
};

// constant + sum_k map_k(value of var_k), value shaped rows x cols.
// Maps are arbitrary C-linear functions; Hermiticity of the expression is
// validated during realify by probing every basis element of each variable.
struct MatrixExpr {
  int rows = 0, cols = 0;
  ComplexMatrix constant;
  struct Term {
    int var = -1;
    std::function<ComplexMatrix(const ComplexMatrix&)> map;
  };
  std::vector<Term> terms;

  MatrixExpr() = default;
  MatrixExpr(int r, int c) : rows(r), cols(c), constant(ComplexMatrix::zeros(r, c)) {}
};

// Real-valued linear functional: a 1x1 matrix expression.
struct ScalarExpr {
  MatrixExpr expr;
  ScalarExpr() : expr(1, 1) {}
  explicit ScalarExpr(MatrixExpr e) : expr(std::move(e)) {}
  ScalarExpr(double v) : expr(1, 1) { expr.constant(0, 0) = v; } // NOLINT: implicit by design
};

MatrixExpr constant_expr(const ComplexMatrix& c);
MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b);
MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b);
MatrixExpr operator*(double a, const MatrixExpr& e);
MatrixExpr operator-(const MatrixExpr& e);

// Compose a linear map onto an expression (the workhorse for partial traces,
// tensor embeddings, Choi pairings, ...).
MatrixExpr apply_map(const MatrixExpr& e, int out_rows, int out_cols,
                     std::function<ComplexMatrix(const ComplexMatrix&)> f);

// Common maps, with the subsystem dimensions of the expression value given
// explicitly (the expression itself is shape-agnostic).
MatrixExpr kron_left_expr(const ComplexMatrix& a, const MatrixExpr& e);   // a (x) e
MatrixExpr kron_right_expr(const MatrixExpr& e, const ComplexMatrix& b);  // e (x) b
MatrixExpr partial_trace_expr(const MatrixExpr& e, const std::vector<int>& dims,
                              const std::vector<int>& keep);
MatrixExpr partial_transpose_expr(const MatrixExpr& e, const std::vector<int>& dims,
                                  const std::vector<int>& transposed);
// Scalar variable times a constant Hermitian matrix.
MatrixExpr times_matrix(const ScalarExpr& s, const ComplexMatrix& c);

ScalarExpr trace_expr(const MatrixExpr& e);
// <c, e> = tr(c e) for Hermitian c (real pairing).
ScalarExpr inner_expr(const ComplexMatrix& c, const MatrixExpr& e);
ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator*(double a, const ScalarExpr& e);

struct SolverSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  double primal_objective = 0.0; // in the problem's own sense and offset
  double dual_objective = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::map<std::string, ComplexMatrix> assignments; // scalars as 1x1
  bool real_mode = false;   // solved over the real-symmetric restriction
  ConicSolution conic;      // raw solver output, including the iterate trace
};

ComplexMatrix extract_operator(const SolverSolution& sol, const std::string& name);
double extract_scalar(const SolverSolution& sol, const std::string& name);

class SdpProblem {
 public:
  // Hermitian matrix variable of the given side.
  VarRef hermitian(const std::string& name, int side);
  // Real scalar variable; nonneg adds the orthant constraint automatically.
  VarRef scalar(const std::string& name, bool nonneg = false);

  MatrixExpr var(VarRef v) const;
  ScalarExpr scalar_var(VarRef v) const;

  void maximize(const ScalarExpr& objective);
  void minimize(const ScalarExpr& objective);
  void equal(const MatrixExpr& lhs, const ComplexMatrix& rhs);
  void equal_scalar(const ScalarExpr& lhs, double rhs);
  void psd(const MatrixExpr& e);      // e >= 0 in the PSD order
  void nonneg(const ScalarExpr& e);   // e >= 0

  // Convert to the real conic standard form.  Uses the real-symmetric
  // restriction automatically when all data commute with complex
  // conjugation (which halves the embedded block sides); force_complex
  // disables the detection for cross-checking.
  StandardConicForm realify(bool force_complex = false) const;

  SolverSolution solve(const SolverOptions& opts = {}, bool force_complex = false) const;

 private:
  struct VarDecl {
    std::string name;
    int side = 1;        // 1 for scalars
    bool is_scalar = false;
  };
  struct Equality {
    MatrixExpr lhs;
    ComplexMatrix rhs;
  };

  int find_var(const std::string& name) const;
  struct Layout; // realification bookkeeping (defined in sdp.cpp)
  StandardConicForm realify_internal(bool force_complex, Layout& lay) const;

  std::vector<VarDecl> vars_;
  Sense sense_ = Sense::minimize;
  bool objective_set_ = false;
  ScalarExpr objective_;
  std::vector<Equality> equalities_;
  std::vector<MatrixExpr> psd_constraints_;
  std::vector<ScalarExpr> nonneg_constraints_;
};

} // namespace qcap
