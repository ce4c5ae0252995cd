#include "qbec/types.hpp"

#include <cmath>

namespace qbec {

namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

QubitAmplitudes::QubitAmplitudes(Complex a, Complex b) : a_(a), b_(b) {
  if (!finite(a) || !finite(b)) throw ValidationError("qubit amplitudes must be finite");
  const double n2 = std::norm(a) + std::norm(b);
  if (n2 <= 0.0) throw ValidationError("qubit amplitudes must not both vanish");
  const double s = 1.0 / std::sqrt(n2);
  a_ *= s;
  b_ *= s;
}

DensityMatrix2 make_density(double s11, Complex s12) {
  if (!finite(s11) || !finite(s12))
    throw ValidationError("density matrix entries must be finite");
  if (s11 < -1e-10 || s11 > 1.0 + 1e-10)
    throw ValidationError("population s11 outside [0, 1]");
  if (s11 * (1.0 - s11) - std::norm(s12) < -1e-8)
    throw ValidationError(
        "density matrix not positive semidefinite: |s12|^2 exceeds s11*s22; "
        "this indicates an upstream numerical bug, not rounding noise");
  return DensityMatrix2(s11, s12);
}

DensityMatrix2 pure_density(const QubitAmplitudes& q0) {
  return make_density(std::norm(q0.a()), q0.a() * std::conj(q0.b()));
}

double DensityMatrix2::purity() const {
  return s11_ * s11_ + s22() * s22() + 2.0 * std::norm(s12_);
}

double DensityMatrix2::positivity() const {
  return s11_ * s22() - std::norm(s12_);
}

void FiniteModelParams::validate() const {
  if (n_atoms < 1) throw ValidationError("n_atoms must be a positive integer");
  if (!finite(omega_hop) || omega_hop <= 0.0)
    throw ValidationError("omega_hop must be positive");
  if (!finite(delta_omega) || delta_omega < 0.0 || delta_omega > omega_hop)
    throw ValidationError("delta_omega must lie in [0, omega_hop]");
  if (!finite(omega0) || omega0 < 0.0)
    throw ValidationError("omega0 must be nonnegative");
  if (e0 != 0.0)
    throw ValidationError("e0 is the energy reference and must stay 0");
  if (!finite(e1) || !finite(e2) || e1 != e2)
    throw ValidationError(
        "e1 != e2 is not supported: the factorized evolution assumes a "
        "symmetric qubit, where only the hopping asymmetry matters");
}

void ContinuumParams::validate() const {
  if (!finite(alpha) || alpha <= 0.0) throw ValidationError("alpha must be positive");
  if (!finite(omega0) || omega0 < 0.0)
    throw ValidationError("omega0 must be nonnegative");
  if (kappa && (!finite(*kappa) || *kappa <= 0.0))
    throw ValidationError("kappa, if given, must be positive");
}

void TimeSeries::append(double t, const DensityMatrix2& rho) {
  if (!finite(t)) throw ValidationError("sample time must be finite");
  if (!samples_.empty() && t <= samples_.back().first)
    throw ValidationError("sample times must be strictly increasing");
  samples_.emplace_back(t, rho);
}

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::finite_n: return "finite_n";
    case ModelTag::oracle: return "oracle";
    case ModelTag::continuum: return "continuum";
    case ModelTag::stationary_phase: return "stationary_phase";
    case ModelTag::closed_form: return "closed_form";
  }
  return "unknown";
}

}  // namespace qbec
