#include "qcap/detail/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qcap::detail {

// Householder reduction of a symmetric matrix to tridiagonal form.
// z holds the matrix on entry and the accumulated transformation on exit;
// d receives the diagonal, e the subdiagonal (e[0] unused).
static void tred2(std::vector<double>& z, int n, std::vector<double>& d, std::vector<double>& e) {
    auto at = [&](int i, int j) -> double& { return z[static_cast<std::size_t>(i) * n + j]; };

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    at(j, i) = at(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i;
        if (d[i] != 0.0) {
            for (int j = 0; j < l; ++j) {
                double g = 0.0;
                for (int k = 0; k < l; ++k) g += at(i, k) * at(k, j);
                for (int k = 0; k < l; ++k) at(k, j) -= g * at(k, i);
            }
        }
        d[i] = at(i, i);
        at(i, i) = 1.0;
        for (int j = 0; j < l; ++j) at(j, i) = at(i, j) = 0.0;
    }
}

// Implicit-shift QL on the tridiagonal (d, e), rotations accumulated into z.
// Eigenvectors end up in the columns of z.
static void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, int n) {
    auto at = [&](int i, int j) -> double& { return z[static_cast<std::size_t>(i) * n + j]; };
    const double eps = std::numeric_limits<double>::epsilon();

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd + 1e-300) break;
            }
            if (m != l) {
                if (iter++ == 80)
                    throw std::runtime_error("sym_eig: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = at(k, i + 1);
                        at(k, i + 1) = s * at(k, i) + c * f;
                        at(k, i) = c * at(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sym_eig(const RMatrix& m, std::vector<double>& values, RMatrix& vectors) {
    const int n = m.rows;
    if (n != m.cols) throw std::invalid_argument("sym_eig: matrix not square");
    if (n == 0) {
        values.clear();
        vectors = RMatrix(0, 0);
        return;
    }
    std::vector<double> z = m.a;
    values.assign(n, 0.0);
    std::vector<double> e(n, 0.0);
    tred2(z, n, values, e);
    tql2(values, e, z, n);

    // Sort ascending, carrying eigenvector columns along.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });

    vectors = RMatrix(n, n);
    std::vector<double> sorted(n);
    for (int j = 0; j < n; ++j) {
        sorted[j] = values[idx[j]];
        for (int i = 0; i < n; ++i) vectors(i, j) = z[static_cast<std::size_t>(i) * n + idx[j]];
    }
    values = std::move(sorted);
}

bool cholesky(RMatrix& m) {
    const int n = m.rows;
    for (int j = 0; j < n; ++j) {
        double d = m(j, j);
        for (int k = 0; k < j; ++k) d -= m(j, k) * m(j, k);
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double l = std::sqrt(d);
        m(j, j) = l;
        for (int i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= m(i, k) * m(j, k);
            m(i, j) = s / l;
        }
    }
    // Zero the strict upper triangle so the factor can be used as a plain matrix.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = 0.0;
    return true;
}

void forward_subst(const RMatrix& l, std::vector<double>& x) {
    const int n = l.rows;
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
        x[i] = s / l(i, i);
    }
}

void backward_subst_t(const RMatrix& l, std::vector<double>& x) {
    const int n = l.rows;
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
}

bool lu_factor(RMatrix m, LuFactors& out) {
    const int n = m.rows;
    out.perm.resize(n);
    std::iota(out.perm.begin(), out.perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(m(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) return false;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(out.perm[k], out.perm[piv]);
        }
        const double inv = 1.0 / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) * inv;
            m(i, k) = f;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    out.lu = std::move(m);
    return true;
}

void lu_solve(const LuFactors& f, std::vector<double>& x) {
    const int n = f.lu.rows;
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = x[f.perm[i]];
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= f.lu(i, k) * b[k];
        b[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= f.lu(i, k) * b[k];
        b[i] = s / f.lu(i, i);
    }
    x = std::move(b);
}

void jacobi_svd(const RMatrix& m, RMatrix& u, std::vector<double>& sigma, RMatrix& v) {
    const int n = m.rows;
    if (n != m.cols) throw std::invalid_argument("jacobi_svd: matrix not square");
    RMatrix a = m;
    v = RMatrix(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    const double eps = 1e-15;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int k = 0; k < n; ++k) {
                    app += a(k, p) * a(k, p);
                    aqq += a(k, q) * a(k, q);
                    apq += a(k, p) * a(k, q);
                }
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(zeta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = c * t;
                for (int k = 0; k < n; ++k) {
                    const double ap = a(k, p), aq = a(k, q);
                    a(k, p) = c * ap - s * aq;
                    a(k, q) = s * ap + c * aq;
                    const double vp = v(k, p), vq = v(k, q);
                    v(k, p) = c * vp - s * vq;
                    v(k, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    sigma.assign(n, 0.0);
    u = RMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += a(k, j) * a(k, j);
        sigma[j] = std::sqrt(s);
        if (sigma[j] > 0.0)
            for (int k = 0; k < n; ++k) u(k, j) = a(k, j) / sigma[j];
        else
            u(j, j) = 1.0;
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return sigma[x] > sigma[y]; });
    RMatrix us(n, n), vs(n, n);
    std::vector<double> ss(n);
    for (int j = 0; j < n; ++j) {
        ss[j] = sigma[idx[j]];
        for (int k = 0; k < n; ++k) {
            us(k, j) = u(k, idx[j]);
            vs(k, j) = v(k, idx[j]);
        }
    }
    u = std::move(us);
    v = std::move(vs);
    sigma = std::move(ss);
}

std::vector<int> independent_rows(const RMatrix& m, double tol) {
    const int r = m.rows, c = m.cols;
    std::vector<std::vector<double>> work(r, std::vector<double>(c));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) work[i][j] = m(i, j);

    auto norm2 = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return s;
    };

    std::vector<double> norms(r);
    double max0 = 0.0;
    for (int i = 0; i < r; ++i) {
        norms[i] = norm2(work[i]);
        max0 = std::max(max0, norms[i]);
    }
    if (max0 == 0.0) return {};
    const double cut = tol * tol * max0;

    std::vector<int> kept;
    std::vector<bool> used(r, false);
    for (int step = 0; step < r; ++step) {
        int best = -1;
        double bn = cut;
        for (int i = 0; i < r; ++i) {
            if (used[i]) continue;
            if (norms[i] > bn) {
                bn = norms[i];
                best = i;
            }
        }
        if (best < 0) break;
        used[best] = true;
        kept.push_back(best);
        const double inv = 1.0 / std::sqrt(norms[best]);
        for (int j = 0; j < c; ++j) work[best][j] *= inv;
        for (int i = 0; i < r; ++i) {
            if (used[i]) continue;
            double dot = 0.0;
            for (int j = 0; j < c; ++j) dot += work[i][j] * work[best][j];
            if (dot != 0.0)
                for (int j = 0; j < c; ++j) work[i][j] -= dot * work[best][j];
            norms[i] = norm2(work[i]);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

} // namespace qcap::detail
