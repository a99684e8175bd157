// Channel zoo, Choi matrices, the confusability-graph basis, and file I/O.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include "qcap/channel_io.hpp"
#include "qcap/channels.hpp"
#include "qcap/random_channels.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace qcap;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// CPTP invariants every constructed channel must satisfy.
void check_cptp(const QuantumChannel& ch) {
  ChoiMatrix choi(ch);
  CHECK(is_psd(choi.op(), 1e-9));
  auto marg = partial_trace(choi.op(), {0});
  CHECK(max_abs_diff(marg.matrix(), ComplexMatrix::identity(ch.d_in())) < 1e-9);
}

HermitianOperator basis_state(int d, int k) {
  ComplexMatrix m(d, d);
  m(k, k) = 1.0;
  return HermitianOperator({d}, m);
}

} // namespace

TEST_CASE("zoo channels pass the CPTP invariants") {
  check_cptp(amplitude_damping(0.0));
  check_cptp(amplitude_damping(0.37));
  check_cptp(amplitude_damping(1.0));
  check_cptp(cq_two_state(0.9));
  check_cptp(cq_two_state(1.0 / std::sqrt(2.0)));
  check_cptp(n_alpha(0.25));
  check_cptp(n_alpha(std::atan(1.0))); // pi/4
  check_cptp(identity_channel(3));
  check_cptp(classical_channel({{0.9, 0.1}, {0.1, 0.9}}));
  for (const auto& ch : seeded_qubit_suite()) check_cptp(ch);
  check_cptp(random_channel(3, 2, 4, 424242));
}

TEST_CASE("damping endpoints: identity map and constant-ground map") {
  auto rho = HermitianOperator({2}, random_hermitian(2, 5) * random_hermitian(2, 5));
  auto id_like = amplitude_damping(0.0).apply(rho);
  CHECK(max_abs_diff(id_like.matrix(), rho.matrix()) < 1e-12);
  auto ground = amplitude_damping(1.0).apply(rho);
  CHECK(std::abs(ground.matrix()(0, 0) - rho.matrix().trace()) < 1e-12);
  CHECK(std::abs(ground.matrix()(1, 1)) < 1e-12);
  CHECK_THROWS_AS(amplitude_damping(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(amplitude_damping(1.1), std::invalid_argument);
}

TEST_CASE("classical channel Choi is diagonal with the transition weights") {
  auto ch = classical_channel({{0.9, 0.1}, {0.1, 0.9}});
  ChoiMatrix choi(ch);
  const double expect[] = {0.9, 0.1, 0.1, 0.9};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double want = i == j ? expect[i] : 0.0;
      CHECK(std::abs(choi.op().matrix()(i, j) - want) < 1e-12);
    }
  CHECK_THROWS_AS(classical_channel({{0.5, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(classical_channel({{1.1, -0.1}}), std::invalid_argument);
}

TEST_CASE("two-state preparation overlap follows 2a^2 - 1") {
  const double a = 0.9;
  auto ch = cq_two_state(a);
  auto out0 = ch.apply(basis_state(2, 0));
  auto out1 = ch.apply(basis_state(2, 1));
  const double overlap = hs_inner(out0.matrix(), out1.matrix()).real();
  const double want = 2.0 * a * a - 1.0; // |<psi0|psi1>|^2 for a|0> +- b|1>
  CHECK(std::abs(overlap - want * want) < 1e-12);

  auto orth = cq_two_state(1.0 / std::sqrt(2.0));
  CHECK(std::abs(hs_inner(orth.apply(basis_state(2, 0)).matrix(),
                          orth.apply(basis_state(2, 1)).matrix())) < 1e-12);
  CHECK_THROWS_AS(cq_two_state(0.5), std::invalid_argument);
}

TEST_CASE("three-level family maps the extreme basis states to the middle") {
  auto ch = n_alpha(0.6);
  auto o0 = ch.apply(basis_state(3, 0));
  auto o2 = ch.apply(basis_state(3, 2));
  auto mid = basis_state(3, 1);
  CHECK(max_abs_diff(o0.matrix(), mid.matrix()) < 1e-12);
  CHECK(max_abs_diff(o2.matrix(), mid.matrix()) < 1e-12);
  CHECK_THROWS_AS(n_alpha(0.0), std::invalid_argument);
  CHECK_THROWS_AS(n_alpha(1.0), std::invalid_argument); // past pi/4
}

TEST_CASE("three-level family: adjacent inputs separate, extreme inputs collide") {
  auto ch = n_alpha(0.45);
  auto out0 = ch.apply(basis_state(3, 0));
  auto out1 = ch.apply(basis_state(3, 1));
  auto out2 = ch.apply(basis_state(3, 2));
  // |0> and |1> have orthogonal outputs: one use carries two messages at
  // zero error without any assistance.
  CHECK(std::abs(hs_inner(out0.matrix(), out1.matrix())) < 1e-10);
  CHECK(std::abs(hs_inner(out1.matrix(), out2.matrix())) < 1e-10);
  // |0> and |2> produce the identical output state, so the unassisted count
  // stops at two.
  CHECK(max_abs_diff(out0.matrix(), out2.matrix()) < 1e-10);
  // The middle input's image carries the angle: diag(sin^2, 0, cos^2).
  const double s2 = std::sin(0.45) * std::sin(0.45);
  CHECK(std::abs(out1.matrix()(0, 0).real() - s2) < 1e-12);
  CHECK(std::abs(out1.matrix()(2, 2).real() - (1.0 - s2)) < 1e-12);
}

TEST_CASE("tensor product Choi equals the subsystem-permuted kron of factors") {
  auto a = amplitude_damping(0.3);
  auto b = random_channel(2, 3, 2, 777);
  auto ab = tensor_channels(a, b);
  CHECK(ab.d_in() == 4);
  CHECK(ab.d_out() == 6);
  ChoiMatrix ja(a), jb(b), jab(ab);
  // kron gives (A_in A_out B_in B_out); the composite orders inputs first.
  auto kron_op = tensor(ja.op(), jb.op()); // dims {2,2,2,3}
  auto permuted = permute_subsystems(kron_op, {0, 2, 1, 3});
  CHECK(max_abs_diff(jab.op().reshaped({2, 2, 2, 3}).matrix(), permuted.matrix()) < 1e-10);
}

TEST_CASE("complementary channel is trace preserving with env = kraus count") {
  auto ch = random_channel(3, 3, 4, 31337);
  auto comp = complementary_channel(ch);
  CHECK(comp.d_in() == 3);
  CHECK(comp.d_out() == 4);
  ChoiMatrix jc(comp);
  auto marg = partial_trace(jc.op(), {0});
  CHECK(max_abs_diff(marg.matrix(), ComplexMatrix::identity(3)) < 1e-9);
}

TEST_CASE("confusability span contains the identity and every E_j^dag E_k") {
  auto ch = n_alpha(0.5);
  NoncommutativeGraph g(ch);
  auto checked = [&](const ComplexMatrix& t) {
    return g.project_norm(t) / std::max(1e-30, t.frobenius_norm());
  };
  CHECK(checked(ComplexMatrix::identity(3)) > 1.0 - 1e-10);
  for (const auto& ei : ch.kraus())
    for (const auto& ek : ch.kraus()) {
      auto prod = ei.dagger() * ek;
      if (prod.frobenius_norm() < 1e-12) continue;
      CHECK(checked(prod) > 1.0 - 1e-10);
    }
}

TEST_CASE("channel json round-trips and validates") {
  auto ch = random_channel(2, 3, 2, 909);
  std::stringstream buf;
  save_channel_json(ch, buf);
  auto back = load_channel_json(buf);
  CHECK(back.d_in() == 2);
  CHECK(back.d_out() == 3);
  ChoiMatrix ja(ch), jb(back);
  CHECK(max_abs_diff(ja.op().matrix(), jb.op().matrix()) < 1e-12);

  // Kraus set that is not trace preserving must be rejected by the loader.
  std::stringstream bad;
  bad << R"({"label":"bad","d_in":1,"d_out":1,"kraus":[[[[0.5,0.0]]]]})";
  CHECK_THROWS_AS(load_channel_json(bad), std::invalid_argument);

  std::stringstream garbled;
  garbled << "{not json";
  CHECK_THROWS_AS(load_channel_json(garbled), std::invalid_argument);
}

TEST_CASE("stochastic matrix file loads plain rows") {
  const char* path = "qcap_test_stochastic.json";
  {
    std::ofstream out(path);
    out << "[[0.25, 0.75], [1.0, 0.0]]\n";
  }
  auto p = load_stochastic_json_file(path);
  REQUIRE(p.size() == 2);
  CHECK(p[0][0] == doctest::Approx(0.25));
  CHECK(p[1][1] == doctest::Approx(0.0));
  check_cptp(classical_channel(p));
  std::remove(path);
  CHECK_THROWS(load_stochastic_json_file("qcap_no_such_file.json"));
}
