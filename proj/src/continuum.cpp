#include "qbec/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbec/propagator.hpp"

namespace qbec {

namespace {

struct Kahan {
  double sum = 0.0;
  double c = 0.0;

  void add(double x) {
    const double t = sum + x;
    c += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

struct Components {
  double s11 = 0.0;
  double re12 = 0.0;
  double im12 = 0.0;
};

Components integrand(double t, double eps, const QubitAmplitudes& q0, double omega0,
                     IntegrandRoute route) {
  switch (route) {
    case IntegrandRoute::closed_form: {
      const SigmaTilde st = sigma_tilde_closed_form(t, eps, q0.a(), q0.b(), omega0);
      return {st.s11, st.s12.real(), st.s12.imag()};
    }
    case IntegrandRoute::propagator: {
      const DensityMatrix2 rho = sigma_tilde(t, eps, q0, omega0);
      return {rho.s11(), rho.s12().real(), rho.s12().imag()};
    }
    case IntegrandRoute::propagator_raw: {
      const DensityMatrix2 rho = sigma_of_epsilon(t, eps, q0, omega0);
      return {rho.s11(), rho.s12().real(), rho.s12().imag()};
    }
  }
  throw ValidationError("unknown integrand route");
}

// Gaussian-weighted trapezoid sums, tracked as plain weighted node sums (the
// spacing h cancels out of the final self-normalized ratio).
struct WeightedSums {
  Kahan s11, re12, im12, w;

  void add_node(double t, double eps, const QubitAmplitudes& q0, double omega0,
                IntegrandRoute route, double alpha, double coeff) {
    const double g = coeff * std::exp(-0.5 * eps * eps / (alpha * alpha));
    const Components f = integrand(t, eps, q0, omega0, route);
    s11.add(g * f.s11);
    re12.add(g * f.re12);
    im12.add(g * f.im12);
    w.add(g);
  }

  Components normalized() const {
    const double z = w.value();
    return {s11.value() / z, re12.value() / z, im12.value() / z};
  }
};

}  // namespace

DensityMatrix2 reduced_density_continuum(double t, const ContinuumParams& params,
                                         const QubitAmplitudes& q0, double tol,
                                         IntegrandRoute route) {
  params.validate();
  if (!std::isfinite(t) || t < 0.0)
    throw ValidationError("time must be nonnegative and finite");
  if (!std::isfinite(tol) || tol < kQuadratureTolMin || tol > kQuadratureTolMax)
    throw ValidationError("quadrature tolerance must lie in [1e-12, 1e-4]");

  // The integrand is even in eps for the symmetrized routes, so integrate
  // [0, L] and let the normalization absorb the factor 2; the raw route has
  // an odd part that must cancel numerically, so it gets the full domain.
  const bool half = route != IntegrandRoute::propagator_raw;
  const double alpha = params.alpha;
  // Truncation at 10 alpha leaves Gaussian weight ~1e-22 outside.  Initial
  // spacing resolves both the Gaussian (>= 8 nodes per alpha) and the local
  // oscillation: |d(2 omega t)/d eps| <= t, so h <= pi / (4 t) keeps the
  // per-interval phase advance under pi/4.
  const double cut = 10.0 * alpha;
  const long n0 = std::max<long>(
      80, static_cast<long>(std::ceil(40.0 * alpha * t / std::numbers::pi)));

  auto node_count_full = [&](long n) { return half ? 2 * n : n; };
  if (node_count_full(n0) > kQuadratureNodeCap)
    throw ConvergenceError(
        "quadrature node cap exceeded before the first pass; alpha * t too "
        "large for direct integration");

  WeightedSums sums;
  long n = n0;  // intervals on the computed domain
  const double lo = half ? 0.0 : -cut;
  double h = (cut - lo) / static_cast<double>(n);
  // Endpoints carry trapezoid weight 1/2; every refinement only adds
  // interior midpoints of weight 1.
  sums.add_node(t, lo, q0, params.omega0, route, alpha, 0.5);
  sums.add_node(t, cut, q0, params.omega0, route, alpha, 0.5);
  for (long i = 1; i < n; ++i)
    sums.add_node(t, lo + h * i, q0, params.omega0, route, alpha, 1.0);

  Components prev = sums.normalized();
  while (true) {
    if (node_count_full(2 * n) > kQuadratureNodeCap)
      throw ConvergenceError(
          "quadrature failed to stabilize within the node cap; alpha * t too "
          "large for direct integration (use the stationary-phase asymptote)");
    for (long i = 0; i < n; ++i)
      sums.add_node(t, lo + h * (i + 0.5), q0, params.omega0, route, alpha, 1.0);
    n *= 2;
    h *= 0.5;
    const Components cur = sums.normalized();
    const double diff = std::max({std::fabs(cur.s11 - prev.s11),
                                  std::fabs(cur.re12 - prev.re12),
                                  std::fabs(cur.im12 - prev.im12)});
    if (diff < tol)
      return make_density(cur.s11, Complex(cur.re12, cur.im12));
    prev = cur;
  }
}

Complex static_qubit_coherence(double t, double alpha, Complex a, Complex b) {
  if (!std::isfinite(alpha) || alpha <= 0.0)
    throw ValidationError("alpha must be positive");
  if (!std::isfinite(t) || t < 0.0)
    throw ValidationError("time must be nonnegative and finite");
  const QubitAmplitudes q0(a, b);  // normalize like every other route
  return q0.a() * std::conj(q0.b()) * std::exp(-0.5 * alpha * alpha * t * t);
}

}  // namespace qbec
