#include "qcap/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#if defined(__SSE2__)
#include <immintrin.h>
#endif

namespace qcap {

using detail::RMatrix;

int svec_dim(int side) { return side * (side + 1) / 2; }

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2 = 0.7071067811865476;
} // namespace

std::vector<double> svec_upper(const RMatrix& m) {
  const int n = m.rows;
  std::vector<double> v(svec_dim(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    v[k++] = m(i, i);
    for (int j = i + 1; j < n; ++j) v[k++] = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  }
  return v;
}

RMatrix smat_upper(const double* v, int side) {
  RMatrix m(side, side);
  int k = 0;
  for (int i = 0; i < side; ++i) {
    m(i, i) = v[k++];
    for (int j = i + 1; j < side; ++j) {
      const double w = kInvSqrt2 * v[k++];
      m(i, j) = w;
      m(j, i) = w;
    }
  }
  return m;
}

int StandardConicForm::cone_rows() const {
  int m = nonneg;
  for (int s : psd_sides) m += svec_dim(s);
  return m;
}

int StandardConicForm::barrier_degree() const {
  int nu = nonneg;
  for (int s : psd_sides) nu += s;
  return nu;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double t = 0.0;
  for (size_t i = 0; i < a.size(); ++i) t += a[i] * b[i];
  return t;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// y = M x
std::vector<double> matvec(const RMatrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double t = 0.0;
    const double* row = &m.a[static_cast<size_t>(i) * m.cols];
    for (int j = 0; j < m.cols; ++j) t += row[j] * x[j];
    y[i] = t;
  }
  return y;
}

// y = M' x
std::vector<double> matvec_t(const RMatrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.cols, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* row = &m.a[static_cast<size_t>(i) * m.cols];
    for (int j = 0; j < m.cols; ++j) y[j] += row[j] * xi;
  }
  return y;
}

RMatrix matmul(const RMatrix& a, const RMatrix& b) {
  RMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const double v = a(i, k);
      if (v == 0.0) continue;
      const double* brow = &b.a[static_cast<size_t>(k) * b.cols];
      double* crow = &c.a[static_cast<size_t>(i) * b.cols];
      for (int j = 0; j < b.cols; ++j) crow[j] += v * brow[j];
    }
  return c;
}

RMatrix transpose(const RMatrix& a) {
  RMatrix t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

// Offsets of each segment of a cone vector: nonneg first, then PSD svecs.
struct ConeLayout {
  int nonneg = 0;
  std::vector<int> sides;
  std::vector<int> offsets; // per PSD block
  int total = 0;

  explicit ConeLayout(const StandardConicForm& f) : nonneg(f.nonneg), sides(f.psd_sides) {
    int off = nonneg;
    for (int s : sides) {
      offsets.push_back(off);
      off += svec_dim(s);
    }
    total = off;
  }
};

// Nesterov-Todd scaling at (s, z).  For the orthant: w = sqrt(s/z) per
// coordinate.  For a PSD block with S = Ls Ls', Z = Lz Lz' and SVD
// Lz' Ls = U Sigma V', take r = Ls V Sigma^{-1/2}, rti = Lz U Sigma^{-1/2}
// (so rti = r^{-T}); then r' Z r = r^{-1} S r^{-T} = Sigma =: Lambda.
struct NTScaling {
  std::vector<double> d;            // orthant scaling
  std::vector<double> lambda_orthant;
  struct Block {
    RMatrix r, rti;
    std::vector<double> lambda;
  };
  std::vector<Block> blocks;
};

bool cholesky_with_jitter(RMatrix m, RMatrix& out) {
  // Interior-point iterates can brush up against the cone boundary; a tiny
  // escalating diagonal shift recovers factorability without disturbing the
  // search direction at solver tolerance.
  double trace = 0.0;
  for (int i = 0; i < m.rows; ++i) trace += m(i, i);
  double jitter = 1e-14 * std::max(1.0, trace / std::max(1, m.rows));
  for (int attempt = 0; attempt < 3; ++attempt) {
    RMatrix trial = m;
    if (attempt > 0)
      for (int i = 0; i < m.rows; ++i) trial(i, i) += jitter;
    if (detail::cholesky(trial)) {
      out = std::move(trial);
      return true;
    }
    jitter *= 100.0;
  }
  return false;
}

bool compute_nt(const ConeLayout& lay, const std::vector<double>& s,
                const std::vector<double>& z, NTScaling& nt) {
  nt.d.assign(lay.nonneg, 0.0);
  nt.lambda_orthant.assign(lay.nonneg, 0.0);
  for (int i = 0; i < lay.nonneg; ++i) {
    if (s[i] <= 0.0 || z[i] <= 0.0) return false;
    nt.d[i] = std::sqrt(s[i] / z[i]);
    nt.lambda_orthant[i] = std::sqrt(s[i] * z[i]);
  }
  nt.blocks.clear();
  nt.blocks.reserve(lay.sides.size());
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    const int side = lay.sides[k];
    RMatrix S = smat_upper(&s[lay.offsets[k]], side);
    RMatrix Z = smat_upper(&z[lay.offsets[k]], side);
    RMatrix Ls(0, 0), Lz(0, 0);
    if (!cholesky_with_jitter(S, Ls) || !cholesky_with_jitter(Z, Lz)) return false;
    RMatrix M = matmul(transpose(Lz), Ls);
    RMatrix U(0, 0), V(0, 0);
    std::vector<double> sigma;
    detail::jacobi_svd(M, U, sigma, V);
    NTScaling::Block blk;
    blk.lambda = sigma;
    blk.r = RMatrix(side, side);
    blk.rti = RMatrix(side, side);
    for (int i = 0; i < side; ++i) {
      if (sigma[i] <= 0.0) return false;
      const double isq = 1.0 / std::sqrt(sigma[i]);
      for (int row = 0; row < side; ++row) {
        double rv = 0.0, tv = 0.0;
        for (int kk = 0; kk < side; ++kk) {
          rv += Ls(row, kk) * V(kk, i);
          tv += Lz(row, kk) * U(kk, i);
        }
        blk.r(row, i) = rv * isq;
        blk.rti(row, i) = tv * isq;
      }
    }
    nt.blocks.push_back(std::move(blk));
  }
  return true;
}

enum class ScaleMode { W, WT, Winv, WinvT };

// Congruence X -> T' X T applied through svec coordinates.
std::vector<double> congruence(const RMatrix& t, const double* v, int side) {
  RMatrix X = smat_upper(v, side);
  RMatrix tmp = matmul(transpose(t), matmul(X, t));
  return svec_upper(tmp);
}

// Apply the NT scaling operator (or its transpose/inverse) to a cone vector.
//   W(z)      = r' Z r          W'(u)    = r U r'
//   W^{-1}(u) = rti U rti'      W^{-T}(s)= rti' S rti
std::vector<double> scale_vec(const NTScaling& nt, const ConeLayout& lay,
                              const std::vector<double>& v, ScaleMode mode) {
  std::vector<double> out(lay.total, 0.0);
  for (int i = 0; i < lay.nonneg; ++i)
    out[i] = (mode == ScaleMode::W || mode == ScaleMode::WT) ? nt.d[i] * v[i] : v[i] / nt.d[i];
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    const int side = lay.sides[k];
    const RMatrix& r = nt.blocks[k].r;
    const RMatrix& rti = nt.blocks[k].rti;
    std::vector<double> blk;
    switch (mode) {
      case ScaleMode::W: blk = congruence(r, &v[lay.offsets[k]], side); break;
      case ScaleMode::WT: blk = congruence(transpose(r), &v[lay.offsets[k]], side); break;
      case ScaleMode::Winv: blk = congruence(transpose(rti), &v[lay.offsets[k]], side); break;
      case ScaleMode::WinvT: blk = congruence(rti, &v[lay.offsets[k]], side); break;
    }
    std::copy(blk.begin(), blk.end(), out.begin() + lay.offsets[k]);
  }
  return out;
}

// Jordan product u o v: elementwise on the orthant, (UV + VU)/2 on PSD blocks.
std::vector<double> jordan_prod(const ConeLayout& lay, const std::vector<double>& u,
                                const std::vector<double>& v) {
  std::vector<double> out(lay.total, 0.0);
  for (int i = 0; i < lay.nonneg; ++i) out[i] = u[i] * v[i];
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    const int side = lay.sides[k];
    RMatrix U = smat_upper(&u[lay.offsets[k]], side);
    RMatrix V = smat_upper(&v[lay.offsets[k]], side);
    RMatrix P = matmul(U, V);
    RMatrix sym(side, side);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) sym(i, j) = 0.5 * (P(i, j) + P(j, i));
    auto blk = svec_upper(sym);
    std::copy(blk.begin(), blk.end(), out.begin() + lay.offsets[k]);
  }
  return out;
}

// Solve lambda o u = v for u when lambda is the (diagonal) scaling point:
// U_ij = 2 V_ij / (lambda_i + lambda_j).
std::vector<double> jordan_div_lambda(const ConeLayout& lay, const NTScaling& nt,
                                      const std::vector<double>& v) {
  std::vector<double> out(lay.total, 0.0);
  for (int i = 0; i < lay.nonneg; ++i) out[i] = v[i] / nt.lambda_orthant[i];
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    const int side = lay.sides[k];
    const auto& lam = nt.blocks[k].lambda;
    RMatrix V = smat_upper(&v[lay.offsets[k]], side);
    RMatrix U(side, side);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) U(i, j) = 2.0 * V(i, j) / (lam[i] + lam[j]);
    auto blk = svec_upper(U);
    std::copy(blk.begin(), blk.end(), out.begin() + lay.offsets[k]);
  }
  return out;
}

std::vector<double> cone_identity(const ConeLayout& lay) {
  std::vector<double> e(lay.total, 0.0);
  for (int i = 0; i < lay.nonneg; ++i) e[i] = 1.0;
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    int pos = lay.offsets[k];
    for (int i = 0; i < lay.sides[k]; ++i) {
      e[pos] = 1.0;
      pos += lay.sides[k] - i; // skip the off-diagonal entries of row i
    }
  }
  return e;
}

// lambda as a cone vector (diagonal in each PSD block).
std::vector<double> lambda_vec(const ConeLayout& lay, const NTScaling& nt) {
  std::vector<double> v(lay.total, 0.0);
  for (int i = 0; i < lay.nonneg; ++i) v[i] = nt.lambda_orthant[i];
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    int pos = lay.offsets[k];
    for (int i = 0; i < lay.sides[k]; ++i) {
      v[pos] = nt.blocks[k].lambda[i];
      pos += lay.sides[k] - i;
    }
  }
  return v;
}

// Largest alpha with lambda + alpha * rho in the cone (both in scaled
// coordinates, where the scaling point lambda is diagonal/positive).
double max_step(const ConeLayout& lay, const NTScaling& nt, const std::vector<double>& rho) {
  double bound = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lay.nonneg; ++i)
    if (rho[i] < 0.0) bound = std::min(bound, -nt.lambda_orthant[i] / rho[i]);
  for (size_t k = 0; k < lay.sides.size(); ++k) {
    const int side = lay.sides[k];
    const auto& lam = nt.blocks[k].lambda;
    RMatrix R = smat_upper(&rho[lay.offsets[k]], side);
    // lambda + a R >= 0  <=>  I + a Lam^{-1/2} R Lam^{-1/2} >= 0
    RMatrix M(side, side);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        M(i, j) = R(i, j) / std::sqrt(lam[i] * lam[j]);
    std::vector<double> ev;
    RMatrix vecs(0, 0);
    detail::sym_eig(M, ev, vecs);
    if (!ev.empty() && ev.front() < 0.0) bound = std::min(bound, -1.0 / ev.front());
  }
  return bound;
}

// KKT system for the reduced Newton equations:
//   [0  A' G'] [ux]   [bx]
//   [A  0  0 ] [uy] = [by]
//   [G  0 -WW] [uz]   [bz]      with WW = W'W.
// Eliminating uz = WW^{-1} (G ux - bz) leaves the symmetric quasi-definite
// system [[H, A'], [A, 0]] with H = G' WW^{-1} G, factored dense by LU with
// static regularization (+delta on H, -delta on the zero block).
struct KktSolver {
  int n = 0, p = 0;
  RMatrix m0;                 // unregularized, kept for iterative refinement
  detail::LuFactors fac;
  RMatrix ginv;               // WW^{-1} G, reused for every rhs
  const StandardConicForm* form = nullptr;
  const ConeLayout* lay = nullptr;
  const NTScaling* nt = nullptr;

  // Returns false when the factorization fails even at the largest
  // regularization (3 attempts, delta escalating x100).
  bool factor(const StandardConicForm& f, const ConeLayout& layout, const NTScaling& scaling) {
    form = &f;
    lay = &layout;
    nt = &scaling;
    n = f.num_vars;
    p = static_cast<int>(f.b.size());
    const int mrows = f.G.rows;

    // WW^{-1} G: congruence by rti rti' per PSD block, d^{-2} on the orthant.
    ginv = RMatrix(mrows, n);
    std::vector<double> col(mrows), scaled;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < mrows; ++i) col[i] = f.G(i, j);
      scaled = scale_vec(scaling, layout, col, ScaleMode::WinvT);
      scaled = scale_vec(scaling, layout, scaled, ScaleMode::Winv);
      for (int i = 0; i < mrows; ++i) ginv(i, j) = scaled[i];
    }

    m0 = RMatrix(n + p, n + p);
    // H = G' (WW^{-1} G), accumulated row by row: a constraint row touches
    // only a handful of variables, so skipping its zero coefficients avoids
    // the dense n^2 * rows sweep.
    for (int r = 0; r < mrows; ++r) {
      const double* gr = &f.G.a[static_cast<std::size_t>(r) * n];
      const double* sr = &ginv.a[static_cast<std::size_t>(r) * n];
      for (int i = 0; i < n; ++i) {
        const double gri = gr[i];
        if (gri == 0.0) continue;
        double* dst = &m0.a[static_cast<std::size_t>(i) * (n + p)];
        for (int j = 0; j < n; ++j) dst[j] += gri * sr[j];
      }
    }
    for (int r = 0; r < p; ++r)
      for (int j = 0; j < n; ++j) {
        m0(n + r, j) = f.A(r, j);
        m0(j, n + r) = f.A(r, j);
      }

    // Regularization scale follows the (mu-independent) constraint data, not
    // the Schur diagonal: the latter grows like 1/mu near the optimum, which
    // would turn the shift into a large absolute perturbation right when
    // accuracy matters most.
    double scale = 1.0;
    for (double v : f.A.a) scale = std::max(scale, std::abs(v));
    double delta = 1e-12 * scale;
    for (int attempt = 0; attempt < 3; ++attempt) {
      RMatrix reg = m0;
      for (int i = 0; i < n; ++i) reg(i, i) += delta;
      for (int i = n; i < n + p; ++i) reg(i, i) -= delta;
      if (detail::lu_factor(std::move(reg), fac)) return true;
      delta *= 100.0;
    }
    return false;
  }

  std::vector<double> apply_ww_inv(const std::vector<double>& v) const {
    auto t = scale_vec(*nt, *lay, v, ScaleMode::WinvT);
    return scale_vec(*nt, *lay, t, ScaleMode::Winv);
  }

  std::vector<double> apply_ww(const std::vector<double>& v) const {
    auto t = scale_vec(*nt, *lay, v, ScaleMode::W);
    return scale_vec(*nt, *lay, t, ScaleMode::WT);
  }

  // Solve the 3x3 system through the reduced 2x2 form.
  void solve_reduced(const std::vector<double>& bx, const std::vector<double>& by,
                     const std::vector<double>& bz, std::vector<double>& ux,
                     std::vector<double>& uy, std::vector<double>& uz) const {
    auto wbz = apply_ww_inv(bz);
    std::vector<double> rhs(n + p, 0.0);
    auto gt = matvec_t(form->G, wbz);
    for (int i = 0; i < n; ++i) rhs[i] = bx[i] + gt[i];
    for (int r = 0; r < p; ++r) rhs[n + r] = by[r];

    std::vector<double> sol = rhs;
    detail::lu_solve(fac, sol);
    // Iterative refinement against the unregularized matrix; a few passes
    // keep the free-block (dual) residual from stalling once the scaled
    // Schur complement becomes ill-conditioned near the optimum.  The best
    // measured iterate wins.
    double rhs_norm = 0.0;
    for (double v : rhs) rhs_norm = std::max(rhs_norm, std::abs(v));
    std::vector<double> best = sol;
    double best_rn = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass <= 3; ++pass) {
      std::vector<double> resid = matvec(m0, sol);
      for (int i = 0; i < n + p; ++i) resid[i] = rhs[i] - resid[i];
      double rn = 0.0;
      for (double v : resid) rn = std::max(rn, std::abs(v));
      if (rn < best_rn) {
        best_rn = rn;
        best = sol;
      }
      if (pass == 3 || rn <= 1e-13 * std::max(1.0, rhs_norm) || rn > 10.0 * best_rn) break;
      std::vector<double> corr = resid;
      detail::lu_solve(fac, corr);
      for (int i = 0; i < n + p; ++i) sol[i] += corr[i];
    }
    sol = std::move(best);

    ux.assign(sol.begin(), sol.begin() + n);
    uy.assign(sol.begin() + n, sol.end());
    auto gx = matvec(form->G, ux);
    for (size_t i = 0; i < gx.size(); ++i) gx[i] -= bz[i];
    uz = apply_ww_inv(gx);
  }

  // Reduced solve plus refinement against the full 3x3 system.  Measuring the
  // residual on the unreduced equations matters: assembling H = G' WW^{-1} G
  // loses digits to cancellation once WW^{-1} is ill-conditioned, so a solve
  // that looks converged in the reduced system can still leave the free-block
  // equation A'uy + G'uz = bx off by far more than machine precision.  The
  // unreduced residual only touches the original (well-scaled) A and G.
  void solve(const std::vector<double>& bx, const std::vector<double>& by,
             const std::vector<double>& bz, std::vector<double>& ux,
             std::vector<double>& uy, std::vector<double>& uz) const {
    solve_reduced(bx, by, bz, ux, uy, uz);

    double bnorm = 1.0;
    for (double v : bx) bnorm = std::max(bnorm, std::abs(v));
    for (double v : by) bnorm = std::max(bnorm, std::abs(v));
    for (double v : bz) bnorm = std::max(bnorm, std::abs(v));

    std::vector<double> cx, cy, cz;
    for (int pass = 0; pass < 3; ++pass) {
      auto rx = matvec_t(form->A, uy);
      auto gz = matvec_t(form->G, uz);
      for (int i = 0; i < n; ++i) rx[i] = bx[i] - rx[i] - gz[i];
      auto ry = matvec(form->A, ux);
      for (int r = 0; r < p; ++r) ry[r] = by[r] - ry[r];
      auto rz = matvec(form->G, ux);
      auto wz = apply_ww(uz);
      for (size_t i = 0; i < rz.size(); ++i) rz[i] = bz[i] - (rz[i] - wz[i]);

      double rn = 0.0;
      for (double v : rx) rn = std::max(rn, std::abs(v));
      for (double v : ry) rn = std::max(rn, std::abs(v));
      for (double v : rz) rn = std::max(rn, std::abs(v));
      if (rn <= 1e-14 * bnorm) break;

      solve_reduced(rx, ry, rz, cx, cy, cz);
      for (int i = 0; i < n; ++i) ux[i] += cx[i];
      for (int r = 0; r < p; ++r) uy[r] += cy[r];
      for (size_t i = 0; i < uz.size(); ++i) uz[i] += cz[i];
    }
  }
};

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

} // namespace

ConicSolution solve_conic(const StandardConicForm& form, const SolverOptions& opts) {
  ConicSolution sol;
  const int n = form.num_vars;
  const int p = static_cast<int>(form.b.size());
  if (n < 1) throw std::invalid_argument("solve_conic: problem has no variables");
  if (static_cast<int>(form.c.size()) != n) throw std::invalid_argument("solve_conic: c size mismatch");
  const ConeLayout lay(form);
  if (lay.total < 1) throw std::invalid_argument("solve_conic: empty cone");
  if (form.G.rows != lay.total || form.G.cols != n)
    throw std::invalid_argument("solve_conic: G dimensions mismatch");
  if (static_cast<int>(form.h.size()) != lay.total)
    throw std::invalid_argument("solve_conic: h size mismatch");
  if (p > 0 && form.A.cols != n) throw std::invalid_argument("solve_conic: A dimensions mismatch");

  if (form.presolve_inconsistent) {
    sol.status = SolveStatus::infeasible;
    sol.message = "equality presolve found inconsistent rows";
    return sol;
  }

#if defined(__SSE2__)
  // Late iterations multiply scaling factors of magnitude ~1e-9 against
  // their inverses; the subnormal intermediates carry no information at the
  // tolerances used but can slow arithmetic by an order of magnitude.
  // Flush-to-zero for the duration of the solve, restored on every exit path.
  struct DenormalGuard {
    unsigned int saved;
    DenormalGuard() : saved(_mm_getcsr()) { _mm_setcsr(saved | 0x8040); }
    ~DenormalGuard() { _mm_setcsr(saved); }
  } denormal_guard;
#endif

  const double nrm_b = std::max(1.0, norm2(form.b));
  const double nrm_h = std::max(1.0, norm2(form.h));
  const double nrm_c = std::max(1.0, norm2(form.c));
  const int nu = form.barrier_degree();

  // Cold start at the cone identity.
  std::vector<double> x(n, 0.0), y(p, 0.0);
  std::vector<double> s = cone_identity(lay), z = cone_identity(lay);
  double tau = 1.0, kappa = 1.0;

  NTScaling nt;
  KktSolver kkt;
  std::vector<double> rx(n), ry(p), rz(lay.total);
  std::vector<double> vx, vy, vz, ux, uy, uz;

  auto record = [&](double pcost, double dcost, double pres, double dres, double gap) {
    sol.trace.push_back({pcost, dcost, pres, dres, gap});
  };

  // Best iterate seen so far (tau-normalized), returned when the iteration
  // stalls or the budget runs out, so a late numerical breakdown cannot
  // erase an almost-converged point.
  struct Snapshot {
    std::vector<double> x, y, z, s;
    double pcost = 0, dcost = 0, pres = 0, dres = 0, gap_rel = 0, gap_abs = 0;
    int iter = 0;
  } best;
  double best_merit = std::numeric_limits<double>::infinity();
  int stalled_iters = 0;
  auto fill_from_best = [&]() {
    sol.x = best.x;
    sol.y = best.y;
    sol.z = best.z;
    sol.s = best.s;
    sol.primal_objective = best.pcost;
    sol.dual_objective = best.dcost;
    sol.primal_residual = best.pres;
    sol.dual_residual = best.dres;
    sol.gap = best.gap_rel;
    sol.gap_absolute = best.gap_abs;
    sol.iterations = best.iter;
  };

  try {
  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    // Residuals of the homogeneous embedding.
    auto aty = matvec_t(form.A, y);
    auto gtz = matvec_t(form.G, z);
    for (int i = 0; i < n; ++i) rx[i] = aty[i] + gtz[i] + form.c[i] * tau;
    auto ax = matvec(form.A, x);
    for (int i = 0; i < p; ++i) ry[i] = ax[i] - form.b[i] * tau;
    auto gx = matvec(form.G, x);
    for (int i = 0; i < lay.total; ++i) rz[i] = gx[i] + s[i] - form.h[i] * tau;
    const double cx = dot(form.c, x), by_ = dot(form.b, y), hz = dot(form.h, z);
    const double rtau = cx + by_ + hz + kappa;

    const double pcost = cx / tau;
    const double dcost = -(by_ + hz) / tau;
    // Residual scales follow the data and the current iterate: the residual
    // of a sum is judged against the largest term entering it, so convergence
    // never demands cancellation finer than the iterate's own magnitude.
    const double pres = std::max(
        norm2(ry) / std::max(tau * nrm_b, norm2(ax)),
        norm2(rz) / std::max(tau * nrm_h, std::max(norm2(gx), norm2(s))));
    const double dres =
        norm2(rx) / std::max(tau * nrm_c, std::max(norm2(aty), norm2(gtz)));
    const double gap_abs = dot(s, z) / (tau * tau);
    const double gap_rel = gap_abs / std::max(1.0, std::abs(pcost));
    record(pcost, dcost, pres, dres, gap_rel);

    auto fill_point = [&](double scale_primal, double scale_dual) {
      sol.x = x; sol.s = s; sol.y = y; sol.z = z;
      for (auto& v : sol.x) v *= scale_primal;
      for (auto& v : sol.s) v *= scale_primal;
      for (auto& v : sol.y) v *= scale_dual;
      for (auto& v : sol.z) v *= scale_dual;
      sol.primal_objective = pcost;
      sol.dual_objective = dcost;
      sol.primal_residual = pres;
      sol.dual_residual = dres;
      sol.gap = gap_rel;
      sol.gap_absolute = gap_abs;
      sol.iterations = iter;
    };

    const double merit = std::max({pres, dres, std::max(gap_rel, 0.0)});
    if (merit < 0.99 * best_merit) {
      stalled_iters = 0;
    } else {
      ++stalled_iters;
    }
    if (merit < best_merit) {
      best_merit = merit;
      best.x = x; best.y = y; best.z = z; best.s = s;
      const double inv = 1.0 / tau;
      for (auto& v : best.x) v *= inv;
      for (auto& v : best.y) v *= inv;
      for (auto& v : best.z) v *= inv;
      for (auto& v : best.s) v *= inv;
      best.pcost = pcost; best.dcost = dcost;
      best.pres = pres; best.dres = dres;
      best.gap_rel = gap_rel; best.gap_abs = gap_abs;
      best.iter = iter;
    }

    if (pres <= opts.feas_tol && dres <= opts.feas_tol && gap_rel <= opts.gap_tol) {
      fill_point(1.0 / tau, 1.0 / tau);
      sol.status = SolveStatus::optimal;
      return sol;
    }
    // Certificate of primal infeasibility: dual improving ray.
    if (by_ + hz < 0.0) {
      const double scale = -1.0 / (by_ + hz);
      std::vector<double> cert(n);
      for (int i = 0; i < n; ++i) cert[i] = (aty[i] + gtz[i]) * scale;
      if (norm2(cert) / nrm_c <= opts.feas_tol) {
        fill_point(0.0, scale);
        sol.primal_objective = std::numeric_limits<double>::quiet_NaN();
        sol.dual_objective = std::numeric_limits<double>::quiet_NaN();
        sol.status = SolveStatus::infeasible;
        sol.message = "dual improving ray: b'y + h'z = -1, ||A'y + G'z|| <= feas_tol";
        return sol;
      }
    }
    // Certificate of dual infeasibility (primal unbounded): primal ray.
    if (cx < 0.0) {
      const double scale = -1.0 / cx;
      double r1 = 0.0;
      for (int i = 0; i < p; ++i) r1 += ax[i] * ax[i];
      std::vector<double> gxs(lay.total);
      for (int i = 0; i < lay.total; ++i) gxs[i] = gx[i] + s[i];
      if (std::max(std::sqrt(r1) * scale / nrm_b, norm2(gxs) * scale / nrm_h) <= opts.feas_tol) {
        fill_point(scale, 0.0);
        sol.primal_objective = std::numeric_limits<double>::quiet_NaN();
        sol.dual_objective = std::numeric_limits<double>::quiet_NaN();
        sol.status = SolveStatus::unbounded;
        sol.message = "primal improving ray: c'x = -1, residuals <= feas_tol";
        return sol;
      }
    }
    // Numerical breakdown past the point of useful progress: complementarity
    // lost to rounding, or the best point sits within two orders of the
    // tolerances while the merit has stopped improving — the remaining
    // residual is this instance's floating-point floor and further
    // iterations only grind.  The feasibility gate keeps this from firing
    // on infeasible/unbounded problems, whose best residuals bottom out far
    // from zero while their certificates tighten.
    if (gap_abs <= 0.0 ||
        (best.pres <= 100.0 * opts.feas_tol && best.dres <= 100.0 * opts.feas_tol &&
         best.gap_abs <= 100.0 * opts.gap_tol * std::max(1.0, std::abs(best.pcost)) &&
         stalled_iters >= 5)) {
      fill_from_best();
      sol.status = SolveStatus::numerical_failure;
      sol.message = "progress stalled; best iterate reported";
      return sol;
    }
    if (iter == opts.max_iter) {
      fill_from_best();
      sol.status = SolveStatus::max_iter;
      sol.message = "iteration limit reached before tolerances met";
      return sol;
    }

    const double mu = (dot(s, z) + tau * kappa) / (nu + 1);

    if (!compute_nt(lay, s, z, nt) || !kkt.factor(form, lay, nt)) {
      fill_from_best();
      sol.status = SolveStatus::numerical_failure;
      sol.message = "scaling/KKT factorization failed after regularization attempts";
      return sol;
    }
    auto lambda = lambda_vec(lay, nt);

    // Direction for the tau column, reused by both predictor and corrector.
    {
      std::vector<double> bx(n), by2(p), bz(lay.total);
      for (int i = 0; i < n; ++i) bx[i] = -form.c[i];
      for (int i = 0; i < p; ++i) by2[i] = form.b[i];
      for (int i = 0; i < lay.total; ++i) bz[i] = form.h[i];
      kkt.solve(bx, by2, bz, vx, vy, vz);
    }
    const double denom = dot(form.c, vx) + dot(form.b, vy) + dot(form.h, vz) - kappa / tau;

    auto direction = [&](double gamma, const std::vector<double>& bs, double bkappa,
                         std::vector<double>& dx, std::vector<double>& dy,
                         std::vector<double>& dz, std::vector<double>& ds_scaled,
                         std::vector<double>& dz_scaled, double& dtau, double& dkappa) {
      std::vector<double> bx(n), by2(p), bz(lay.total);
      auto lbs = jordan_div_lambda(lay, nt, bs);
      auto wlbs = scale_vec(nt, lay, lbs, ScaleMode::WT);
      for (int i = 0; i < n; ++i) bx[i] = -gamma * rx[i];
      for (int i = 0; i < p; ++i) by2[i] = -gamma * ry[i];
      for (int i = 0; i < lay.total; ++i) bz[i] = -gamma * rz[i] - wlbs[i];
      kkt.solve(bx, by2, bz, ux, uy, uz);
      dtau = (-gamma * rtau - bkappa / tau - (dot(form.c, ux) + dot(form.b, uy) + dot(form.h, uz))) / denom;
      dx = ux; axpy(dx, dtau, vx);
      dy = uy; axpy(dy, dtau, vy);
      dz = uz; axpy(dz, dtau, vz);
      dz_scaled = scale_vec(nt, lay, dz, ScaleMode::W);
      ds_scaled = lbs;
      for (int i = 0; i < lay.total; ++i) ds_scaled[i] -= dz_scaled[i];
      dkappa = (bkappa - kappa * dtau) / tau;
    };

    auto step_bound = [&](const std::vector<double>& ds_scaled, const std::vector<double>& dz_scaled,
                          double dtau, double dkappa) {
      double a = std::min(max_step(lay, nt, ds_scaled), max_step(lay, nt, dz_scaled));
      if (dtau < 0.0) a = std::min(a, -tau / dtau);
      if (dkappa < 0.0) a = std::min(a, -kappa / dkappa);
      return a;
    };

    // Predictor (affine scaling) direction.
    std::vector<double> bs(lay.total);
    {
      auto ll = jordan_prod(lay, lambda, lambda);
      for (int i = 0; i < lay.total; ++i) bs[i] = -ll[i];
    }
    std::vector<double> dx_a, dy_a, dz_a, dss_a, dzs_a;
    double dtau_a, dkappa_a;
    direction(1.0, bs, -tau * kappa, dx_a, dy_a, dz_a, dss_a, dzs_a, dtau_a, dkappa_a);
    const double alpha_aff = std::min(1.0, step_bound(dss_a, dzs_a, dtau_a, dkappa_a));
    const double sigma_base = 1.0 - alpha_aff;
    const double sigma = sigma_base * sigma_base * sigma_base;

    // Corrector: recenter toward sigma*mu and subtract the second-order term.
    {
      auto ll = jordan_prod(lay, lambda, lambda);
      auto cross = jordan_prod(lay, dss_a, dzs_a);
      auto e = cone_identity(lay);
      for (int i = 0; i < lay.total; ++i) bs[i] = -ll[i] + sigma * mu * e[i] - cross[i];
    }
    std::vector<double> dx, dy, dz, dss, dzs;
    double dtau, dkappa;
    direction(1.0 - sigma, bs, -tau * kappa + sigma * mu - dtau_a * dkappa_a,
              dx, dy, dz, dss, dzs, dtau, dkappa);
    const double alpha = std::min(1.0, 0.98 * step_bound(dss, dzs, dtau, dkappa));

    // Update; ds returns to unscaled coordinates via W'.
    auto ds = scale_vec(nt, lay, dss, ScaleMode::WT);
    axpy(x, alpha, dx);
    axpy(y, alpha, dy);
    axpy(z, alpha, dz);
    axpy(s, alpha, ds);
    tau += alpha * dtau;
    kappa += alpha * dkappa;
    if (!(tau > 0.0) || !(kappa > 0.0) || !std::isfinite(tau) || !std::isfinite(kappa)) {
      fill_from_best();
      sol.status = SolveStatus::numerical_failure;
      sol.message = "homogeneous variables left the positive orthant";
      return sol;
    }
  }
  } catch (const std::exception& e) {
    sol.status = SolveStatus::numerical_failure;
    sol.message = e.what();
  }
  return sol;
}

void dump_conic(const StandardConicForm& form, std::ostream& out) {
  char buf[64];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  out << "conic 1\n";
  out << "vars " << form.num_vars << "\n";
  out << "eq " << form.b.size() << "\n";
  out << "ineq " << form.cone_rows() << "\n";
  out << "nonneg " << form.nonneg << "\n";
  out << "psd " << form.psd_sides.size();
  for (int s : form.psd_sides) out << " " << s;
  out << "\n";

  auto count_vec = [](const std::vector<double>& v) {
    int nnz = 0;
    for (double x : v) nnz += (x != 0.0);
    return nnz;
  };
  auto dump_vec = [&](const char* name, const std::vector<double>& v) {
    out << name << " " << count_vec(v) << "\n";
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0.0) {
        out << i << " ";
        emit(v[i]);
        out << "\n";
      }
  };
  auto dump_mat = [&](const char* name, const RMatrix& m) {
    int nnz = 0;
    for (double x : m.a) nnz += (x != 0.0);
    out << name << " " << nnz << "\n";
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (m(i, j) != 0.0) {
          out << i << " " << j << " ";
          emit(m(i, j));
          out << "\n";
        }
  };
  dump_vec("c", form.c);
  dump_mat("A", form.A);
  dump_vec("b", form.b);
  dump_mat("G", form.G);
  dump_vec("h", form.h);
  out << "end\n";
}

} // namespace qcap
