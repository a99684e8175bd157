#include "qcap/sdp.hpp"

#include "qcap/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qcap {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPresolveTol = 1e-10;
constexpr double kSqrt2 = 1.4142135623730951;

// Orthonormal Hermitian basis of side-n matrices, enumerated as the n
// diagonal units E_aa, then for each pair p < q (lexicographic) the symmetric
// element (E_pq + E_qp)/sqrt2 and — in complex mode — the antisymmetric
// element i(E_pq - E_qp)/sqrt2.  In real mode the antisymmetric elements are
// dropped: the variable is restricted to real symmetric matrices.
int coord_count(int side, bool real_mode) {
  return real_mode ? side * (side + 1) / 2 : side * side;
}

void pair_of_index(int side, int pair, int& p, int& q) {
  // pair indexes (p, q) with p < q in lexicographic order
  int row_len = side - 1;
  p = 0;
  while (pair >= row_len) {
    pair -= row_len;
    --row_len;
    ++p;
  }
  q = p + 1 + pair;
}

ComplexMatrix basis_element(int side, int alpha, bool real_mode) {
  ComplexMatrix b(side, side);
  if (alpha < side) {
    b(alpha, alpha) = 1.0;
    return b;
  }
  int p = 0, q = 0;
  if (real_mode) {
    pair_of_index(side, alpha - side, p, q);
    b(p, q) = 1.0 / kSqrt2;
    b(q, p) = 1.0 / kSqrt2;
  } else {
    const int idx = alpha - side;
    pair_of_index(side, idx / 2, p, q);
    if (idx % 2 == 0) {
      b(p, q) = 1.0 / kSqrt2;
      b(q, p) = 1.0 / kSqrt2;
    } else {
      b(p, q) = cxd(0.0, 1.0 / kSqrt2);
      b(q, p) = cxd(0.0, -1.0 / kSqrt2);
    }
  }
  return b;
}

bool is_antisym_coord(int side, int alpha, bool real_mode) {
  return !real_mode && alpha >= side && (alpha - side) % 2 == 1;
}

// Coordinates of a Hermitian matrix in the basis above (same enumeration).
void project_coords(const ComplexMatrix& d, bool real_mode, double* out) {
  const int side = d.rows();
  int k = 0;
  for (int a = 0; a < side; ++a) out[k++] = d(a, a).real();
  for (int p = 0; p < side; ++p)
    for (int q = p + 1; q < side; ++q) {
      out[k++] = kSqrt2 * d(p, q).real();
      if (!real_mode) out[k++] = kSqrt2 * d(p, q).imag();
    }
}

double max_imag(const ComplexMatrix& m) {
  double v = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j).imag()));
  return v;
}

double max_real(const ComplexMatrix& m) {
  double v = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j).real()));
  return v;
}

// Real symmetric embedding of a Hermitian matrix: [[Re, -Im], [Im, Re]],
// or just the real part when the whole problem is real.
detail::RMatrix embed_hermitian(const ComplexMatrix& h, bool real_mode) {
  const int side = h.rows();
  if (real_mode) {
    detail::RMatrix m(side, side);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) m(i, j) = h(i, j).real();
    return m;
  }
  detail::RMatrix m(2 * side, 2 * side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double re = h(i, j).real(), im = h(i, j).imag();
      m(i, j) = re;
      m(side + i, side + j) = re;
      m(i, side + j) = -im;
      m(side + i, j) = im;
    }
  return m;
}

void check_hermitian(const ComplexMatrix& m, const char* where) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(where) + ": expression value is not square");
  if (m.hermiticity_defect() > kHermTol)
    throw std::invalid_argument(std::string(where) + ": expression is not Hermitian");
}

void check_shape(const MatrixExpr& a, const MatrixExpr& b, const char* where) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument(std::string(where) + ": shape mismatch");
}

} // namespace

MatrixExpr constant_expr(const ComplexMatrix& c) {
  MatrixExpr e(c.rows(), c.cols());
  e.constant = c;
  return e;
}

MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b) {
  check_shape(a, b, "expr +");
  MatrixExpr out = a;
  out.constant += b.constant;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

MatrixExpr operator*(double a, const MatrixExpr& e) {
  MatrixExpr out(e.rows, e.cols);
  out.constant = cxd(a) * e.constant;
  out.terms.reserve(e.terms.size());
  for (const auto& t : e.terms)
    out.terms.push_back({t.var, [a, inner = t.map](const ComplexMatrix& x) {
                           return cxd(a) * inner(x);
                         }});
  return out;
}

MatrixExpr operator-(const MatrixExpr& e) { return -1.0 * e; }

MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b) { return a + (-1.0 * b); }

MatrixExpr apply_map(const MatrixExpr& e, int out_rows, int out_cols,
                     std::function<ComplexMatrix(const ComplexMatrix&)> f) {
  MatrixExpr out(out_rows, out_cols);
  out.constant = f(e.constant);
  if (out.constant.rows() != out_rows || out.constant.cols() != out_cols)
    throw std::invalid_argument("apply_map: map output shape mismatch");
  out.terms.reserve(e.terms.size());
  for (const auto& t : e.terms)
    out.terms.push_back({t.var, [f, inner = t.map](const ComplexMatrix& x) {
                           return f(inner(x));
                         }});
  return out;
}

MatrixExpr kron_left_expr(const ComplexMatrix& a, const MatrixExpr& e) {
  return apply_map(e, a.rows() * e.rows, a.cols() * e.cols,
                   [a](const ComplexMatrix& x) { return kron(a, x); });
}

MatrixExpr kron_right_expr(const MatrixExpr& e, const ComplexMatrix& b) {
  return apply_map(e, e.rows * b.rows(), e.cols * b.cols(),
                   [b](const ComplexMatrix& x) { return kron(x, b); });
}

MatrixExpr partial_trace_expr(const MatrixExpr& e, const std::vector<int>& dims,
                              const std::vector<int>& keep) {
  int out_side = 1;
  for (int s : keep) out_side *= dims.at(s);
  return apply_map(e, out_side, out_side, [dims, keep](const ComplexMatrix& x) {
    return partial_trace(HermitianOperator(dims, x), keep).matrix();
  });
}

MatrixExpr partial_transpose_expr(const MatrixExpr& e, const std::vector<int>& dims,
                                  const std::vector<int>& transposed) {
  return apply_map(e, e.rows, e.cols, [dims, transposed](const ComplexMatrix& x) {
    return partial_transpose(HermitianOperator(dims, x), transposed).matrix();
  });
}

MatrixExpr times_matrix(const ScalarExpr& s, const ComplexMatrix& c) {
  return apply_map(s.expr, c.rows(), c.cols(),
                   [c](const ComplexMatrix& x) { return x(0, 0) * c; });
}

ScalarExpr trace_expr(const MatrixExpr& e) {
  return ScalarExpr(apply_map(e, 1, 1, [](const ComplexMatrix& x) {
    ComplexMatrix t(1, 1);
    t(0, 0) = x.trace();
    return t;
  }));
}

ScalarExpr inner_expr(const ComplexMatrix& c, const MatrixExpr& e) {
  return ScalarExpr(apply_map(e, 1, 1, [c](const ComplexMatrix& x) {
    ComplexMatrix t(1, 1);
    t(0, 0) = hs_inner(c, x);
    return t;
  }));
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr(a.expr + b.expr);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr(a.expr - b.expr);
}

ScalarExpr operator*(double a, const ScalarExpr& e) { return ScalarExpr(a * e.expr); }

ComplexMatrix extract_operator(const SolverSolution& sol, const std::string& name) {
  if (sol.assignments.empty())
    throw std::logic_error("extract: no variable assignment for status " +
                           std::string(to_string(sol.status)));
  auto it = sol.assignments.find(name);
  if (it == sol.assignments.end())
    throw std::invalid_argument("extract: unknown variable '" + name + "'");
  return it->second;
}

double extract_scalar(const SolverSolution& sol, const std::string& name) {
  ComplexMatrix m = extract_operator(sol, name);
  if (m.rows() != 1 || m.cols() != 1)
    throw std::invalid_argument("extract: variable '" + name + "' is not a scalar");
  return m(0, 0).real();
}

int SdpProblem::find_var(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return -1;
}

VarRef SdpProblem::hermitian(const std::string& name, int side) {
  if (side < 1) throw std::invalid_argument("hermitian: side must be positive");
  if (find_var(name) >= 0) throw std::invalid_argument("variable '" + name + "' already declared");
  vars_.push_back({name, side, false});
  return {static_cast<int>(vars_.size()) - 1};
}

VarRef SdpProblem::scalar(const std::string& name, bool nonneg) {
  if (find_var(name) >= 0) throw std::invalid_argument("variable '" + name + "' already declared");
  vars_.push_back({name, 1, true});
  VarRef ref{static_cast<int>(vars_.size()) - 1};
  if (nonneg) this->nonneg(scalar_var(ref));
  return ref;
}

MatrixExpr SdpProblem::var(VarRef v) const {
  if (v.index < 0 || v.index >= static_cast<int>(vars_.size()))
    throw std::invalid_argument("var: reference out of range");
  const int side = vars_[v.index].side;
  MatrixExpr e(side, side);
  e.terms.push_back({v.index, [](const ComplexMatrix& x) { return x; }});
  return e;
}

ScalarExpr SdpProblem::scalar_var(VarRef v) const {
  if (v.index < 0 || v.index >= static_cast<int>(vars_.size()))
    throw std::invalid_argument("scalar_var: reference out of range");
  if (!vars_[v.index].is_scalar)
    throw std::invalid_argument("scalar_var: '" + vars_[v.index].name + "' is a matrix variable");
  return ScalarExpr(var(v));
}

void SdpProblem::maximize(const ScalarExpr& objective) {
  sense_ = Sense::maximize;
  objective_ = objective;
  objective_set_ = true;
}

void SdpProblem::minimize(const ScalarExpr& objective) {
  sense_ = Sense::minimize;
  objective_ = objective;
  objective_set_ = true;
}

void SdpProblem::equal(const MatrixExpr& lhs, const ComplexMatrix& rhs) {
  if (lhs.rows != rhs.rows() || lhs.cols != rhs.cols())
    throw std::invalid_argument("equal: shape mismatch");
  if (lhs.rows != lhs.cols) throw std::invalid_argument("equal: expression must be square");
  equalities_.push_back({lhs, rhs});
}

void SdpProblem::equal_scalar(const ScalarExpr& lhs, double rhs) {
  ComplexMatrix r(1, 1);
  r(0, 0) = rhs;
  equalities_.push_back({lhs.expr, r});
}

void SdpProblem::psd(const MatrixExpr& e) {
  if (e.rows != e.cols) throw std::invalid_argument("psd: expression must be square");
  if (e.rows == 1) {
    // 1x1 cone constraints belong on the orthant.
    nonneg_constraints_.push_back(ScalarExpr(e));
    return;
  }
  psd_constraints_.push_back(e);
}

void SdpProblem::nonneg(const ScalarExpr& e) { nonneg_constraints_.push_back(e); }

// ---- realification -------------------------------------------------------

struct SdpProblem::Layout {
  bool real_mode = false;
  std::vector<int> offsets;
  std::vector<int> counts;
  int total = 0;
  double objective_constant = 0.0;
};

namespace {

// A term's map commutes with complex conjugation iff images of the symmetric
// basis elements are real and images of the antisymmetric ones are purely
// imaginary; together with real constants this licenses restricting every
// Hermitian variable to real symmetric matrices (conjugating a feasible
// point is then again feasible with equal objective, and the average is
// real), halving the embedded block sides.
bool term_commutes_with_conjugation(const MatrixExpr::Term& term, int side) {
  const int count = coord_count(side, false);
  for (int alpha = 0; alpha < count; ++alpha) {
    const ComplexMatrix image = term.map(basis_element(side, alpha, false));
    if (is_antisym_coord(side, alpha, false)) {
      if (max_real(image) > kHermTol) return false;
    } else {
      if (max_imag(image) > kHermTol) return false;
    }
  }
  return true;
}

} // namespace

StandardConicForm SdpProblem::realify(bool force_complex) const {
  Layout lay;
  return realify_internal(force_complex, lay);
}

StandardConicForm SdpProblem::realify_internal(bool force_complex, Layout& lay) const {
  StandardConicForm form;

  // Real-mode detection: every constant real, every map conjugation-covariant.
  bool real_ok = !force_complex;
  auto check_expr = [&](const MatrixExpr& e) {
    if (!real_ok) return;
    if (max_imag(e.constant) > kHermTol) {
      real_ok = false;
      return;
    }
    for (const auto& t : e.terms) {
      if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
        throw std::invalid_argument("expression references an undeclared variable");
      if (!term_commutes_with_conjugation(t, vars_[t.var].side)) {
        real_ok = false;
        return;
      }
    }
  };
  if (objective_set_) check_expr(objective_.expr);
  for (const auto& eq : equalities_) {
    check_expr(eq.lhs);
    if (real_ok && max_imag(eq.rhs) > kHermTol) real_ok = false;
  }
  for (const auto& e : psd_constraints_) check_expr(e);
  for (const auto& e : nonneg_constraints_) check_expr(e.expr);
  lay.real_mode = real_ok;

  // Also validate term var indices when the detection loop exited early.
  auto validate_vars = [&](const MatrixExpr& e) {
    for (const auto& t : e.terms)
      if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
        throw std::invalid_argument("expression references an undeclared variable");
  };
  if (objective_set_) validate_vars(objective_.expr);
  for (const auto& eq : equalities_) validate_vars(eq.lhs);
  for (const auto& e : psd_constraints_) validate_vars(e);
  for (const auto& e : nonneg_constraints_) validate_vars(e.expr);

  lay.offsets.resize(vars_.size());
  lay.counts.resize(vars_.size());
  int total = 0;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    lay.offsets[v] = total;
    lay.counts[v] = coord_count(vars_[v].side, lay.real_mode);
    total += lay.counts[v];
  }
  lay.total = total;
  form.num_vars = total;

  // Evaluate an expression's column for one variable coordinate.
  auto expr_image = [&](const MatrixExpr& e, int var, const ComplexMatrix& basis) {
    ComplexMatrix acc = ComplexMatrix::zeros(e.rows, e.cols);
    for (const auto& t : e.terms) {
      if (t.var != var) continue;
      ComplexMatrix img = t.map(basis);
      if (img.rows() != e.rows || img.cols() != e.cols)
        throw std::invalid_argument("expression term produced a wrong-shaped value");
      acc += img;
    }
    return acc;
  };
  auto for_each_coord = [&](const MatrixExpr& e, auto&& fn) {
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      bool touched = false;
      for (const auto& t : e.terms) touched = touched || t.var == static_cast<int>(v);
      if (!touched) continue;
      const int side = vars_[v].side;
      for (int alpha = 0; alpha < lay.counts[v]; ++alpha) {
        const ComplexMatrix img =
            expr_image(e, static_cast<int>(v), basis_element(side, alpha, lay.real_mode));
        fn(lay.offsets[v] + alpha, img);
      }
    }
  };

  // Objective.
  form.c.assign(total, 0.0);
  if (objective_set_) {
    const ComplexMatrix& oc = objective_.expr.constant;
    if (std::abs(oc(0, 0).imag()) > kHermTol)
      throw std::invalid_argument("objective constant is not real");
    lay.objective_constant = oc(0, 0).real();
    for_each_coord(objective_.expr, [&](int col, const ComplexMatrix& img) {
      if (std::abs(img(0, 0).imag()) > kHermTol)
        throw std::invalid_argument("objective is not a real functional");
      form.c[col] += img(0, 0).real();
    });
    if (sense_ == Sense::maximize)
      for (double& v : form.c) v = -v;
  }

  // Equalities: project onto the Hermitian basis of the output space.
  int eq_rows = 0;
  for (const auto& eq : equalities_) eq_rows += coord_count(eq.lhs.rows, lay.real_mode);
  detail::RMatrix A(eq_rows, total);
  std::vector<double> b(eq_rows, 0.0);
  {
    int row0 = 0;
    std::vector<double> coords;
    for (const auto& eq : equalities_) {
      const int out_count = coord_count(eq.lhs.rows, lay.real_mode);
      check_hermitian(eq.rhs, "equal rhs");
      check_hermitian(eq.lhs.constant, "equal constant");
      coords.resize(out_count);
      for_each_coord(eq.lhs, [&](int col, const ComplexMatrix& img) {
        check_hermitian(img, "equal");
        project_coords(img, lay.real_mode, coords.data());
        for (int r = 0; r < out_count; ++r) A(row0 + r, col) = coords[r];
      });
      ComplexMatrix rhs = eq.rhs;
      rhs -= eq.lhs.constant;
      project_coords(rhs, lay.real_mode, coords.data());
      for (int r = 0; r < out_count; ++r) b[row0 + r] = coords[r];
      row0 += out_count;
    }
  }

  // Cone rows: orthant first, then the PSD blocks.
  form.nonneg = static_cast<int>(nonneg_constraints_.size());
  int cone_rows = form.nonneg;
  for (const auto& e : psd_constraints_) {
    const int ks = lay.real_mode ? e.rows : 2 * e.rows;
    form.psd_sides.push_back(ks);
    cone_rows += svec_dim(ks);
  }
  form.G = detail::RMatrix(cone_rows, total);
  form.h.assign(cone_rows, 0.0);
  for (std::size_t i = 0; i < nonneg_constraints_.size(); ++i) {
    const MatrixExpr& e = nonneg_constraints_[i].expr;
    if (std::abs(e.constant(0, 0).imag()) > kHermTol)
      throw std::invalid_argument("nonneg constraint constant is not real");
    form.h[i] = e.constant(0, 0).real();
    for_each_coord(e, [&](int col, const ComplexMatrix& img) {
      if (std::abs(img(0, 0).imag()) > kHermTol)
        throw std::invalid_argument("nonneg constraint is not a real functional");
      form.G(static_cast<int>(i), col) -= img(0, 0).real();
    });
  }
  {
    int row0 = form.nonneg;
    for (const auto& e : psd_constraints_) {
      check_hermitian(e.constant, "psd constant");
      const int ks = lay.real_mode ? e.rows : 2 * e.rows;
      const int tdim = svec_dim(ks);
      auto hseg = svec_upper(embed_hermitian(e.constant, lay.real_mode));
      std::copy(hseg.begin(), hseg.end(), form.h.begin() + row0);
      for_each_coord(e, [&](int col, const ComplexMatrix& img) {
        check_hermitian(img, "psd");
        auto gseg = svec_upper(embed_hermitian(img, lay.real_mode));
        for (int r = 0; r < tdim; ++r) form.G(row0 + r, col) -= gseg[r];
      });
      row0 += tdim;
    }
  }

  // Presolve: drop numerically dependent equality rows; flag inconsistency
  // (a dependent row whose right-hand side disagrees with the combination).
  if (eq_rows > 0) {
    std::vector<int> kept = detail::independent_rows(A, kPresolveTol);
    detail::RMatrix aug(eq_rows, total + 1);
    for (int i = 0; i < eq_rows; ++i) {
      for (int j = 0; j < total; ++j) aug(i, j) = A(i, j);
      aug(i, total) = b[i];
    }
    std::vector<int> kept_aug = detail::independent_rows(aug, kPresolveTol);
    if (kept_aug.size() > kept.size()) form.presolve_inconsistent = true;
    detail::RMatrix Ar(static_cast<int>(kept.size()), total);
    std::vector<double> br(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (int j = 0; j < total; ++j) Ar(static_cast<int>(i), j) = A(kept[i], j);
      br[i] = b[kept[i]];
    }
    form.A = std::move(Ar);
    form.b = std::move(br);
  } else {
    form.A = detail::RMatrix(0, total);
  }
  return form;
}

SolverSolution SdpProblem::solve(const SolverOptions& opts, bool force_complex) const {
  Layout lay;
  StandardConicForm form = realify_internal(force_complex, lay);
  const bool real_mode = lay.real_mode;
  const double obj_const = lay.objective_constant;

  ConicSolution cs = solve_conic(form, opts);

  SolverSolution out;
  out.status = cs.status;
  out.real_mode = real_mode;
  out.iterations = cs.iterations;
  out.gap = cs.gap;
  out.primal_residual = cs.primal_residual;
  out.dual_residual = cs.dual_residual;
  const double sign = sense_ == Sense::maximize ? -1.0 : 1.0;
  out.primal_objective = sign * cs.primal_objective + obj_const;
  out.dual_objective = sign * cs.dual_objective + obj_const;

  // The solver hands back its best iterate even on max_iter and stalled
  // runs, so those yield (approximate) assignments too; certificate
  // statuses carry rays in (y, z), not solutions, and are skipped.
  const bool has_point = cs.status == SolveStatus::optimal ||
                         cs.status == SolveStatus::max_iter ||
                         cs.status == SolveStatus::numerical_failure;
  if (has_point && cs.x.size() == static_cast<size_t>(lay.total)) {
    int offset = 0;
    for (const auto& v : vars_) {
      const int count = coord_count(v.side, real_mode);
      ComplexMatrix value = ComplexMatrix::zeros(v.side, v.side);
      for (int alpha = 0; alpha < count; ++alpha) {
        const double coeff = cs.x[offset + alpha];
        if (coeff != 0.0) {
          ComplexMatrix basis = basis_element(v.side, alpha, real_mode);
          basis *= cxd(coeff);
          value += basis;
        }
      }
      out.assignments.emplace(v.name, std::move(value));
      offset += count;
    }
  }
  out.conic = std::move(cs);
  return out;
}

} // namespace qcap
