#include "qcap/random_channels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qcap {

namespace {

// Box-Muller on top of the raw engine.  std::normal_distribution is
// implementation-defined, which would break bit-reproducibility of the
// seeded suites across standard libraries.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : eng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  cxd complex_gaussian() {
    const double re = (*this)();
    const double im = (*this)();
    return {re, im};
  }

  double uniform() {
    // 53-bit mantissa draw in [0, 1).
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Orthonormalize the columns of g (tall matrix) by two rounds of modified
// Gram-Schmidt; with Gaussian input this samples the Haar measure on
// isometries.
ComplexMatrix haar_isometry(int rows, int cols, Gaussian& gauss) {
  if (cols > rows) throw std::invalid_argument("haar_isometry: more columns than rows");
  ComplexMatrix v(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) v(i, j) = gauss.complex_gaussian();
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < j; ++k) {
        cxd proj = 0.0;
        for (int i = 0; i < rows; ++i) proj += std::conj(v(i, k)) * v(i, j);
        for (int i = 0; i < rows; ++i) v(i, j) -= proj * v(i, k);
      }
      double nrm = 0.0;
      for (int i = 0; i < rows; ++i) nrm += std::norm(v(i, j));
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12) throw std::runtime_error("haar_isometry: degenerate sample");
      for (int i = 0; i < rows; ++i) v(i, j) /= nrm;
    }
  }
  return v;
}

} // namespace

QuantumChannel random_channel(int d_in, int d_out, int kraus_count, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || kraus_count < 1)
    throw std::invalid_argument("random_channel: dimensions must be positive");
  if (d_in > d_out * kraus_count)
    throw std::invalid_argument("random_channel: no isometry into env (x) out exists");
  Gaussian gauss(seed);
  ComplexMatrix v = haar_isometry(d_out * kraus_count, d_in, gauss);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_count);
  for (int k = 0; k < kraus_count; ++k) {
    ComplexMatrix e(d_out, d_in);
    for (int b = 0; b < d_out; ++b)
      for (int i = 0; i < d_in; ++i) e(b, i) = v(k * d_out + b, i);
    kraus.push_back(std::move(e));
  }
  return QuantumChannel("rand:" + std::to_string(seed), d_in, d_out, std::move(kraus));
}

ComplexMatrix random_hermitian(int side, std::uint64_t seed) {
  Gaussian gauss(seed);
  ComplexMatrix m(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) m(i, j) = gauss.complex_gaussian();
  ComplexMatrix h(side, side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

std::vector<std::vector<double>> random_stochastic(int inputs, int outputs, std::uint64_t seed) {
  if (inputs < 1 || outputs < 1)
    throw std::invalid_argument("random_stochastic: dimensions must be positive");
  Gaussian gauss(seed);
  std::vector<std::vector<double>> rows(inputs, std::vector<double>(outputs, 0.0));
  for (auto& row : rows) {
    double total = 0.0;
    for (double& p : row) {
      // Strictly positive weights; the offset keeps conditionals away from 0
      // so LP reductions stay comfortably in the interior.
      p = 0.05 + gauss.uniform();
      total += p;
    }
    for (double& p : row) p /= total;
  }
  return rows;
}

std::vector<QuantumChannel> seeded_qubit_suite() {
  std::vector<QuantumChannel> suite;
  suite.reserve(5);
  for (std::uint64_t seed = 101; seed <= 105; ++seed)
    suite.push_back(random_channel(2, 2, 2, seed));
  return suite;
}

} // namespace qcap
