#pragma once
// Shared test oracles, deliberately independent of the library code they
// check: dense matrix exponentials instead of closed forms, Pascal's
// triangle instead of log-gamma, and a bit-stable RNG for property tests.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

using Complex = std::complex<double>;

// exp(-i t H) for the real symmetric H = [[h11, h12], [h12, h22]], via dense
// eigendecomposition.  This is the arbiter for the closed-form propagator.
inline Eigen::Matrix2cd expi(double t, double h11, double h12, double h22) {
  Eigen::Matrix2d h;
  h << h11, h12, h12, h22;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::polar(1.0, -es.eigenvalues()(0) * t);
  d(1, 1) = std::polar(1.0, -es.eigenvalues()(1) * t);
  const Eigen::Matrix2cd v = es.eigenvectors().cast<Complex>();
  return v * d * v.adjoint();
}

// Binomial row C(n, 0..n) / 2^n by the additive Pascal recurrence.
inline std::vector<double> pascal_weights(int n) {
  std::vector<double> row{1.0};
  for (int k = 1; k <= n; ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (int j = 0; j < k; ++j) {
      next[j] += 0.5 * row[j];
      next[j + 1] += 0.5 * row[j];
    }
    row.swap(next);
  }
  return row;
}

// Deterministic uniforms.  mt19937_64 output is pinned by the standard; the
// distribution adaptors are not, so the mapping to doubles is done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const double u = (eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Complex unit_complex() {
    const double re = uniform(-1.0, 1.0);
    const double im = uniform(-1.0, 1.0);
    return {re, im};
  }

 private:
  std::mt19937_64 eng_;
};

// Canonical example preparation (1+i, i) / sqrt(3).
inline Complex canonical_a() { return {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}; }
inline Complex canonical_b() { return {0.0, 1.0 / std::sqrt(3.0)}; }

}  // namespace testutil
