#include "qcap/operators.hpp"

#include "qcap/detail/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcap {

namespace {

int dims_product(const std::vector<int>& dims) {
    int p = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
        p *= d;
    }
    return p;
}

// Decompose a flat index into per-subsystem digits, subsystem 0 most significant.
void unflatten(int idx, const std::vector<int>& dims, std::vector<int>& out) {
    out.resize(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

int flatten(const std::vector<int>& digits, const std::vector<int>& dims) {
    int idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

} // namespace

HermitianOperator::HermitianOperator(std::vector<int> dims, ComplexMatrix m)
    : dims_(std::move(dims)), mat_(std::move(m)) {
    const int side = dims_product(dims_);
    if (mat_.rows() != side || mat_.cols() != side)
        throw std::invalid_argument("HermitianOperator: matrix side does not match dims");
    const double defect = mat_.hermiticity_defect();
    if (defect > 1e-12)
        throw std::invalid_argument("HermitianOperator: input is not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    if (defect > 0.0) {
        ComplexMatrix sym = 0.5 * (mat_ + mat_.dagger());
        mat_ = std::move(sym);
    }
}

HermitianOperator HermitianOperator::identity(std::vector<int> dims) {
    const int side = dims_product(dims);
    return HermitianOperator(std::move(dims), ComplexMatrix::identity(side));
}

HermitianOperator HermitianOperator::zero(std::vector<int> dims) {
    const int side = dims_product(dims);
    return HermitianOperator(std::move(dims), ComplexMatrix(side, side));
}

HermitianOperator HermitianOperator::reshaped(std::vector<int> dims) const {
    if (dims_product(dims) != side())
        throw std::invalid_argument("reshaped: dims do not multiply to the matrix side");
    return HermitianOperator(std::move(dims), mat_);
}

HermitianOperator partial_trace(const HermitianOperator& m, const std::vector<int>& keep) {
    const auto& dims = m.dims();
    const int ns = static_cast<int>(dims.size());
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || keep[k] >= ns)
            throw std::invalid_argument("partial_trace: subsystem index out of range");
        if (k > 0 && keep[k] <= keep[k - 1])
            throw std::invalid_argument("partial_trace: keep must be strictly increasing");
    }

    std::vector<int> kept_dims, traced, traced_dims;
    for (int s = 0, ki = 0; s < ns; ++s) {
        if (ki < static_cast<int>(keep.size()) && keep[ki] == s) {
            kept_dims.push_back(dims[s]);
            ++ki;
        } else {
            traced.push_back(s);
            traced_dims.push_back(dims[s]);
        }
    }
    const int kside = dims_product(kept_dims);
    const int tside = dims_product(traced_dims);
    ComplexMatrix out(kside, kside);

    std::vector<int> krow(keep.size()), kcol(keep.size()), tdig(traced.size()), full_r(ns), full_c(ns);
    for (int i = 0; i < kside; ++i) {
        unflatten(i, kept_dims, krow);
        for (int j = 0; j < kside; ++j) {
            unflatten(j, kept_dims, kcol);
            cxd sum = 0.0;
            for (int t = 0; t < tside; ++t) {
                unflatten(t, traced_dims, tdig);
                for (std::size_t k = 0; k < keep.size(); ++k) {
                    full_r[keep[k]] = krow[k];
                    full_c[keep[k]] = kcol[k];
                }
                for (std::size_t k = 0; k < traced.size(); ++k) {
                    full_r[traced[k]] = tdig[k];
                    full_c[traced[k]] = tdig[k];
                }
                sum += m.matrix()(flatten(full_r, dims), flatten(full_c, dims));
            }
            out(i, j) = sum;
        }
    }
    return HermitianOperator(kept_dims, std::move(out));
}

HermitianOperator partial_transpose(const HermitianOperator& m, const std::vector<int>& subsystems) {
    const auto& dims = m.dims();
    const int ns = static_cast<int>(dims.size());
    std::vector<bool> flip(ns, false);
    for (int s : subsystems) {
        if (s < 0 || s >= ns) throw std::invalid_argument("partial_transpose: subsystem index out of range");
        flip[s] = true;
    }
    const int side = m.side();
    ComplexMatrix out(side, side);
    std::vector<int> r(ns), c(ns);
    for (int i = 0; i < side; ++i) {
        unflatten(i, dims, r);
        for (int j = 0; j < side; ++j) {
            unflatten(j, dims, c);
            std::vector<int> rr = r, cc = c;
            for (int s = 0; s < ns; ++s)
                if (flip[s]) std::swap(rr[s], cc[s]);
            out(flatten(rr, dims), flatten(cc, dims)) = m.matrix()(i, j);
        }
    }
    return HermitianOperator(dims, std::move(out));
}

HermitianOperator partial_transpose(const HermitianOperator& m, int subsystem) {
    return partial_transpose(m, std::vector<int>{subsystem});
}

HermitianOperator permute_subsystems(const HermitianOperator& m, const std::vector<int>& perm) {
    const auto& dims = m.dims();
    const int ns = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != ns)
        throw std::invalid_argument("permute_subsystems: permutation length mismatch");
    std::vector<bool> seen(ns, false);
    std::vector<int> new_dims(ns);
    for (int k = 0; k < ns; ++k) {
        if (perm[k] < 0 || perm[k] >= ns || seen[perm[k]])
            throw std::invalid_argument("permute_subsystems: not a permutation");
        seen[perm[k]] = true;
        new_dims[k] = dims[perm[k]];
    }
    const int side = m.side();
    ComplexMatrix out(side, side);
    std::vector<int> r(ns), c(ns), rr(ns), cc(ns);
    for (int i = 0; i < side; ++i) {
        unflatten(i, dims, r);
        for (int j = 0; j < side; ++j) {
            unflatten(j, dims, c);
            for (int k = 0; k < ns; ++k) {
                rr[k] = r[perm[k]];
                cc[k] = c[perm[k]];
            }
            out(flatten(rr, new_dims), flatten(cc, new_dims)) = m.matrix()(i, j);
        }
    }
    return HermitianOperator(new_dims, std::move(out));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return HermitianOperator(std::move(dims), kron(a.matrix(), b.matrix()));
}

ComplexMatrix embed_on_subsystems(const ComplexMatrix& op, const std::vector<int>& where,
                                  const std::vector<int>& dims) {
    const int ns = static_cast<int>(dims.size());
    std::vector<int> op_dims;
    for (int s : where) {
        if (s < 0 || s >= ns) throw std::invalid_argument("embed_on_subsystems: index out of range");
        op_dims.push_back(dims[s]);
    }
    if (op.rows() != dims_product(op_dims) || op.cols() != op.rows())
        throw std::invalid_argument("embed_on_subsystems: operator side mismatch");

    const int side = dims_product(dims);
    ComplexMatrix out(side, side);
    std::vector<int> r(ns), c(ns), ro(where.size()), co(where.size());
    for (int i = 0; i < side; ++i) {
        unflatten(i, dims, r);
        for (int j = 0; j < side; ++j) {
            unflatten(j, dims, c);
            bool diag_rest = true;
            for (int s = 0; s < ns && diag_rest; ++s) {
                if (std::find(where.begin(), where.end(), s) == where.end() && r[s] != c[s])
                    diag_rest = false;
            }
            if (!diag_rest) continue;
            for (std::size_t k = 0; k < where.size(); ++k) {
                ro[k] = r[where[k]];
                co[k] = c[where[k]];
            }
            out(i, j) = op(flatten(ro, op_dims), flatten(co, op_dims));
        }
    }
    return out;
}

EigenSystem spectral_decompose(const HermitianOperator& h) {
    const int n = h.side();
    const ComplexMatrix& m = h.matrix();

    // Real symmetric embedding [[Re, -Im], [Im, Re]]; its spectrum is that of
    // h with every eigenvalue doubled in multiplicity.
    detail::RMatrix emb(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cxd v = m(i, j);
            emb(i, j) = v.real();
            emb(i, j + n) = -v.imag();
            emb(i + n, j) = v.imag();
            emb(i + n, j + n) = v.real();
        }
    std::vector<double> vals;
    detail::RMatrix vecs;
    detail::sym_eig(emb, vals, vecs);

    // Each embedded eigenvector [u; v] maps to the complex eigenvector u + iv.
    // The doubled eigenspaces collapse back to complex dimension via a greedy
    // orthonormal selection (a vector and its partner i*(u+iv) are collinear).
    EigenSystem out;
    out.vectors = ComplexMatrix(n, n);
    std::vector<std::vector<cxd>> basis;
    std::vector<double> basis_vals;

    for (int pass = 0; pass < 2 && static_cast<int>(basis.size()) < n; ++pass) {
        const double accept = (pass == 0) ? 1e-3 : 1e-12;
        basis.clear();
        basis_vals.clear();
        for (int jj = 2 * n - 1; jj >= 0 && static_cast<int>(basis.size()) < n; --jj) {
            std::vector<cxd> z(n);
            for (int k = 0; k < n; ++k) z[k] = cxd(vecs(k, jj), vecs(k + n, jj));
            for (const auto& bvec : basis) {
                cxd dot = 0.0;
                for (int k = 0; k < n; ++k) dot += std::conj(bvec[k]) * z[k];
                for (int k = 0; k < n; ++k) z[k] -= dot * bvec[k];
            }
            double nrm = 0.0;
            for (int k = 0; k < n; ++k) nrm += std::norm(z[k]);
            nrm = std::sqrt(nrm);
            if (nrm <= accept) continue;
            for (int k = 0; k < n; ++k) z[k] /= nrm;
            basis.push_back(std::move(z));
            basis_vals.push_back(vals[jj]);
        }
    }
    if (static_cast<int>(basis.size()) != n)
        throw std::runtime_error("spectral_decompose: eigenvector extraction failed");

    // Already sorted descending (embedded values were ascending; we walked
    // them from the top).
    out.values = std::move(basis_vals);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.vectors(i, j) = basis[j][i];
    return out;
}

double operator_norm(const HermitianOperator& h) {
    if (h.side() == 0) return 0.0;
    EigenSystem es = spectral_decompose(h);
    return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

double trace_norm(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix not square");
    // Singular values via the Hermitian PSD product m^dag m.
    ComplexMatrix g = m.dagger() * m;
    HermitianOperator h({g.rows()}, std::move(g));
    EigenSystem es = spectral_decompose(h);
    double s = 0.0;
    for (double v : es.values) s += std::sqrt(std::max(0.0, v));
    return s;
}

double von_neumann_entropy(const HermitianOperator& rho) {
    const double tr = rho.matrix().trace().real();
    if (std::abs(tr - 1.0) > 1e-9)
        throw std::invalid_argument("von_neumann_entropy: trace differs from 1 by more than 1e-9");
    EigenSystem es = spectral_decompose(rho);
    double h = 0.0;
    for (double v : es.values) {
        if (v < -1e-9)
            throw std::invalid_argument("von_neumann_entropy: eigenvalue below -1e-9");
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

bool is_psd(const HermitianOperator& h, double tol) {
    if (h.side() == 0) return true;
    EigenSystem es = spectral_decompose(h);
    return es.values.back() >= -tol;
}

} // namespace qcap
