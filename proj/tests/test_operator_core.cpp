// Operator algebra on tensor-product spaces: partial trace/transpose,
// permutation, embedding, spectral decomposition, norms, entropies.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include "qcap/operators.hpp"
#include "qcap/random_channels.hpp"

#include <cmath>

using namespace qcap;

namespace {

HermitianOperator random_herm_op(std::vector<int> dims, std::uint64_t seed) {
  int side = 1;
  for (int d : dims) side *= d;
  return HermitianOperator(std::move(dims), random_hermitian(side, seed));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

} // namespace

TEST_CASE("partial trace of a tensor product splits into factor traces") {
  auto a = random_herm_op({2}, 11);
  auto b = random_herm_op({3}, 12);
  auto ab = tensor(a, b);
  auto ta = partial_trace(ab, {0});
  auto tb = partial_trace(ab, {1});
  const double tr_a = a.matrix().trace().real();
  const double tr_b = b.matrix().trace().real();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(ta.matrix()(i, j) - tr_b * a.matrix()(i, j)) < 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(tb.matrix()(i, j) - tr_a * b.matrix()(i, j)) < 1e-12);
}

TEST_CASE("partial trace keeps subsystem order and composes") {
  auto h = random_herm_op({2, 3, 2}, 13);
  auto keep02 = partial_trace(h, {0, 2});
  auto keep0 = partial_trace(keep02, {0});
  auto keep0_direct = partial_trace(h, {0});
  CHECK(max_abs_diff(keep0.matrix(), keep0_direct.matrix()) < 1e-12);
  CHECK(keep02.dims() == std::vector<int>{2, 2});
  CHECK(std::abs(keep02.matrix().trace() - h.matrix().trace()) < 1e-12);
}

TEST_CASE("partial transpose is an involution and matches the basis rule") {
  auto h = random_herm_op({2, 2}, 14);
  auto t1 = partial_transpose(h, 1);
  CHECK(max_abs_diff(partial_transpose(t1, 1).matrix(), h.matrix()) < 1e-14);
  // |ij><kl| -> |il><kj| on the second factor: entry (2i+j, 2k+l) moves to (2i+l, 2k+j).
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          CHECK(std::abs(t1.matrix()(2 * i + l, 2 * k + j) - h.matrix()(2 * i + j, 2 * k + l)) <
                1e-14);
}

TEST_CASE("partial transpose of a product state stays positive") {
  auto a = random_herm_op({2}, 15);
  auto b = random_herm_op({2}, 16);
  // Square them to force PSD factors.
  auto a2 = HermitianOperator({2}, a.matrix() * a.matrix());
  auto b2 = HermitianOperator({2}, b.matrix() * b.matrix());
  auto prod = tensor(a2, b2);
  CHECK(is_psd(partial_transpose(prod, 1), 1e-10));
}

TEST_CASE("permute_subsystems inverts and matches tensor reordering") {
  auto a = random_herm_op({2}, 17);
  auto b = random_herm_op({3}, 18);
  auto ab = tensor(a, b);
  auto ba = tensor(b, a);
  auto swapped = permute_subsystems(ab, {1, 0});
  CHECK(max_abs_diff(swapped.matrix(), ba.matrix()) < 1e-14);
  auto back = permute_subsystems(swapped, {1, 0});
  CHECK(max_abs_diff(back.matrix(), ab.matrix()) < 1e-14);
}

TEST_CASE("embed_on_subsystems places identity on untouched factors") {
  auto op = random_hermitian(2, 19);
  auto embedded = embed_on_subsystems(op, {0}, {2, 3});
  auto expected = kron(op, ComplexMatrix::identity(3));
  CHECK(max_abs_diff(embedded, expected) < 1e-14);
  auto embedded1 = embed_on_subsystems(op, {1}, {3, 2});
  auto expected1 = kron(ComplexMatrix::identity(3), op);
  CHECK(max_abs_diff(embedded1, expected1) < 1e-14);
}

TEST_CASE("embed_on_subsystems honors the listed order of target factors") {
  auto op = random_hermitian(4, 20); // acts on two qubit factors
  auto fwd = embed_on_subsystems(op, {0, 1}, {2, 2});
  CHECK(max_abs_diff(fwd, op) < 1e-14);
  auto rev = embed_on_subsystems(op, {1, 0}, {2, 2});
  auto h = HermitianOperator({2, 2}, op);
  auto p = permute_subsystems(h, {1, 0});
  CHECK(max_abs_diff(rev, p.matrix()) < 1e-14);
}

TEST_CASE("spectral decomposition reconstructs the operator") {
  auto h = random_herm_op({3, 2}, 21);
  auto eig = spectral_decompose(h);
  CHECK(static_cast<int>(eig.values.size()) == 6);
  for (std::size_t i = 1; i < eig.values.size(); ++i) CHECK(eig.values[i - 1] >= eig.values[i]);
  ComplexMatrix rec(6, 6);
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        rec(i, j) += eig.values[k] * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  CHECK(max_abs_diff(rec, h.matrix()) < 1e-10);
  // Orthonormality
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l) {
      cxd dot = 0;
      for (int i = 0; i < 6; ++i) dot += std::conj(eig.vectors(i, k)) * eig.vectors(i, l);
      CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("operator and trace norms agree with the spectrum") {
  auto h = random_herm_op({4}, 22);
  auto eig = spectral_decompose(h);
  double max_abs = 0, sum_abs = 0;
  for (double v : eig.values) {
    max_abs = std::max(max_abs, std::abs(v));
    sum_abs += std::abs(v);
  }
  CHECK(std::abs(operator_norm(h) - max_abs) < 1e-10);
  CHECK(std::abs(trace_norm(h.matrix()) - sum_abs) < 1e-8);
}

TEST_CASE("entropy: pure zero, mixed log2 d, additive over products") {
  ComplexMatrix pure(2, 2);
  pure(0, 0) = 1.0;
  CHECK(std::abs(von_neumann_entropy(HermitianOperator({2}, pure))) < 1e-9);

  auto mixed3 = HermitianOperator({3}, cxd(1.0 / 3.0, 0.0) * ComplexMatrix::identity(3));
  CHECK(std::abs(von_neumann_entropy(mixed3) - std::log2(3.0)) < 1e-9);

  ComplexMatrix d1(2, 2), d2(2, 2);
  d1(0, 0) = 0.25; d1(1, 1) = 0.75;
  d2(0, 0) = 0.6; d2(1, 1) = 0.4;
  auto r1 = HermitianOperator({2}, d1);
  auto r2 = HermitianOperator({2}, d2);
  const double s12 = von_neumann_entropy(tensor(r1, r2));
  CHECK(std::abs(s12 - von_neumann_entropy(r1) - von_neumann_entropy(r2)) < 1e-9);
  CHECK(std::abs(binary_entropy(0.25) - von_neumann_entropy(r1)) < 1e-12);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("construction symmetrizes tiny defects and rejects real ones") {
  auto m = ComplexMatrix::identity(2);
  m(0, 1) = cxd(0.0, 1e-14); // defect below threshold: accepted, symmetrized
  auto h = HermitianOperator({2}, m);
  CHECK(h.matrix().hermiticity_defect() == 0.0);

  auto bad = ComplexMatrix::identity(2);
  bad(0, 1) = cxd(0.5, 0.0); // asymmetric by 0.25 in the antihermitian part
  bad(1, 0) = cxd(0.0, 0.0);
  CHECK_THROWS_AS(HermitianOperator({2}, bad), std::invalid_argument);
  CHECK_THROWS_AS(HermitianOperator({3}, ComplexMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("reshaped reinterprets the factor split without touching entries") {
  auto h = random_herm_op({4}, 23);
  auto r = h.reshaped({2, 2});
  CHECK(r.dims() == std::vector<int>{2, 2});
  CHECK(max_abs_diff(r.matrix(), h.matrix()) == 0.0);
  CHECK_THROWS_AS(h.reshaped({3, 2}), std::invalid_argument);
}

TEST_CASE("random_hermitian is deterministic in the seed") {
  auto a = random_hermitian(5, 99);
  auto b = random_hermitian(5, 99);
  auto c = random_hermitian(5, 100);
  CHECK(max_abs_diff(a, b) == 0.0);
  CHECK(max_abs_diff(a, c) > 1e-3);
}
