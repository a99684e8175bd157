// Reference-oracle agreement: the reduced programs must reproduce the values
// of direct, structure-free computations on instances small enough to afford
// them.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include "qcap/bounds.hpp"
#include "qcap/channels.hpp"
#include "qcap/oracles.hpp"
#include "qcap/random_channels.hpp"

#include <cmath>
#include <stdexcept>

using namespace qcap;

TEST_CASE("full-code optimization matches the reduced program") {
  auto suite = seeded_qubit_suite();
  for (int k : {0, 2}) {
    for (bool ppt : {true, false}) {
      const auto cls = ppt ? CodeClass::NS_PPT : CodeClass::NS;
      CodeChoi best;
      const double direct = full_code_success_prob(suite[k], 2, ppt, &best);
      const auto reduced = success_prob(suite[k], 2, cls);
      REQUIRE(reduced.diagnostics.status == SolveStatus::optimal);
      CHECK(std::abs(direct - reduced.value_linear) < 1e-5);

      // The optimizer returned by the direct search is a valid code of its
      // class and, wired around the channel, reproduces the value.
      CHECK(code_residual(best, ppt) < 1e-6);
      auto eff = compose_choi(suite[k], best);
      double diag = 0.0;
      for (int i = 0; i < 2; ++i) diag += eff.matrix()(3 * i, 3 * i).real();
      CHECK(std::abs(diag / 2.0 - direct) < 1e-5);
    }
  }
}

TEST_CASE("identity channel admits a perfect two-message code") {
  CodeChoi best;
  const double direct = full_code_success_prob(identity_channel(2), 2, true, &best);
  CHECK(std::abs(direct - 1.0) < 1e-6);
  CHECK(code_residual(best, true) < 1e-6);
}

TEST_CASE("classical brute force lower-bounds the assisted programs") {
  std::vector<std::vector<double>> noiseless = {{1, 0}, {0, 1}};
  CHECK(brute_force_classical_success(noiseless, 2) == doctest::Approx(1.0));

  std::vector<std::vector<double>> bsc = {{0.9, 0.1}, {0.1, 0.9}};
  CHECK(brute_force_classical_success(bsc, 2) == doctest::Approx(0.9));

  std::vector<std::vector<double>> flat = {{0.5, 0.5}, {0.5, 0.5}};
  CHECK(brute_force_classical_success(flat, 2) == doctest::Approx(0.5));

  std::vector<std::vector<double>> p = {{0.7, 0.2, 0.1}, {0.15, 0.6, 0.25}, {0.05, 0.3, 0.65}};
  const double bf = brute_force_classical_success(p, 3);
  auto ch = classical_channel(p);
  auto nsppt = success_prob(ch, 3, CodeClass::NS_PPT);
  auto ns = success_prob(ch, 3, CodeClass::NS);
  REQUIRE(nsppt.diagnostics.status == SolveStatus::optimal);
  REQUIRE(ns.diagnostics.status == SolveStatus::optimal);
  CHECK(bf <= nsppt.value_linear + 1e-7);
  CHECK(nsppt.value_linear <= ns.value_linear + 1e-7);
}

TEST_CASE("independent set packing vs the relaxed zero-error count") {
  std::vector<std::vector<double>> id3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(zero_error_independent_set(id3) == 3);

  std::vector<std::vector<double>> complete = {{0.4, 0.3, 0.3}, {0.3, 0.4, 0.3}, {0.3, 0.3, 0.4}};
  CHECK(zero_error_independent_set(complete) == 1);

  std::vector<std::vector<double>> pent(5, std::vector<double>(5, 0.0));
  for (int x = 0; x < 5; ++x) {
    pent[x][x] = 0.5;
    pent[x][(x + 1) % 5] = 0.5;
  }
  const int indep = zero_error_independent_set(pent);
  CHECK(indep == 2);
  auto relaxed = zero_error_m0(classical_channel(pent), CodeClass::NS);
  CHECK(indep <= relaxed.value_linear + 1e-6);
}

TEST_CASE("oracle size guards reject instances past the supported range") {
  CHECK_THROWS_AS((void)full_code_success_prob(identity_channel(3), 3),
                  std::invalid_argument);
  std::vector<std::vector<double>> wide(5, std::vector<double>(5, 0.2));
  CHECK_THROWS_AS((void)brute_force_classical_success(wide, 2), std::invalid_argument);
  std::vector<std::vector<double>> huge(13, std::vector<double>(13, 1.0 / 13));
  CHECK_THROWS_AS((void)zero_error_independent_set(huge), std::invalid_argument);
}
