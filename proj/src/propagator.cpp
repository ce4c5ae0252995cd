#include "qbec/propagator.hpp"

#include <cmath>

namespace qbec {

AsymmetricQubit::AsymmetricQubit(double epsilon_prime, double omega0)
    : epsilon_prime_(epsilon_prime), omega0_(omega0) {
  if (!std::isfinite(epsilon_prime) || !std::isfinite(omega0))
    throw ValidationError("qubit parameters must be finite");
  rabi_ = std::hypot(0.5 * epsilon_prime, omega0);
}

Eigen::Matrix2cd propagator_matrix(double t, const AsymmetricQubit& q) {
  Eigen::Matrix2cd u;
  const double w = q.rabi();
  if (w == 0.0) {
    // eps' = omega0 = 0: H vanishes identically.
    u.setIdentity();
    return u;
  }
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  // Global phase from splitting the diagonal as eps'/2 * (I + sigma_z).
  const Complex phase = std::polar(1.0, -0.5 * q.epsilon_prime() * t);
  const double dz = 0.5 * q.epsilon_prime() / w;
  const double dx = q.omega0() / w;
  u(0, 0) = phase * Complex(c, dz * s);
  u(1, 1) = phase * Complex(c, -dz * s);
  u(0, 1) = phase * Complex(0.0, dx * s);
  u(1, 0) = u(0, 1);
  return u;
}

DensityMatrix2 sigma_of_epsilon(double t, double epsilon, const QubitAmplitudes& q0,
                                double omega0) {
  const Eigen::Matrix2cd u = propagator_matrix(t, AsymmetricQubit(epsilon, omega0));
  const Complex p1 = u(0, 0) * q0.a() + u(0, 1) * q0.b();
  const Complex p2 = u(1, 0) * q0.a() + u(1, 1) * q0.b();
  return make_density(std::norm(p1), p1 * std::conj(p2));
}

DensityMatrix2 sigma_tilde(double t, double epsilon, const QubitAmplitudes& q0,
                           double omega0) {
  const DensityMatrix2 plus = sigma_of_epsilon(t, epsilon, q0, omega0);
  const DensityMatrix2 minus = sigma_of_epsilon(t, -epsilon, q0, omega0);
  return make_density(0.5 * (plus.s11() + minus.s11()),
                      0.5 * (plus.s12() + minus.s12()));
}

SigmaTilde sigma_tilde_closed_form(double t, double epsilon, Complex a, Complex b,
                                   double omega0) {
  const double aa = std::norm(a);
  const double bb = std::norm(b);
  const Complex ab = a * std::conj(b);
  const double w = std::hypot(0.5 * epsilon, omega0);
  if (w == 0.0) return {aa, ab};
  const double r = omega0 / w;
  const double c2 = std::cos(2.0 * w * t);
  const double s2 = std::sin(2.0 * w * t);
  const double s11 = aa + 0.5 * (bb - aa) * (1.0 - c2) * r * r + ab.imag() * s2 * r;
  const Complex s12(ab.real() * (c2 + (1.0 - c2) * r * r),
                    ab.imag() * c2 + 0.5 * (bb - aa) * s2 * r);
  return {s11, s12};
}

}  // namespace qbec
