// Dense complex matrices with value semantics. Everything downstream
// (operators, channels, SDP data) is built on this one container.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcap {

using cxd = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("ComplexMatrix: negative shape");
    }

    static ComplexMatrix identity(int n);
    static ComplexMatrix zeros(int rows, int cols) { return ComplexMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cxd& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<cxd>& data() const { return a_; }
    std::vector<cxd>& data() { return a_; }

    ComplexMatrix dagger() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cxd trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    // Largest entry of the antihermitian part (H - H^dag)/2; zero for exact Hermitian input.
    double hermiticity_defect() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cxd s);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cxd s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cxd s);

// Kronecker product; index convention (i_a, i_b) -> i_a * b.rows() + i_b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Hilbert-Schmidt inner product tr(a^dag b).
cxd hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace qcap
