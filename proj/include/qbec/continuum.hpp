#pragma once
// Continuum (N -> infinity) limit: the spectral sum becomes a Gaussian
// average of sigma_tilde over level displacements, evaluated by an
// oscillation-aware trapezoid rule with node doubling.

#include "qbec/types.hpp"

namespace qbec {

// Which integrand the quadrature evaluates.  All three agree analytically;
// the propagator routes exist to guard the closed form against transcription
// errors and to exercise the evenness argument behind the half-domain rule.
enum class IntegrandRoute {
  closed_form,     // trigonometric closed form (fast path, half domain)
  propagator,      // sigma_tilde rebuilt from propagator products (half domain)
  propagator_raw,  // unsymmetrized sigma_of_epsilon over the full domain
};

inline constexpr double kQuadratureTolMin = 1e-12;
inline constexpr double kQuadratureTolMax = 1e-4;
inline constexpr double kQuadratureTolDefault = 1e-8;
// Cap on full-domain-equivalent node count before giving up.
inline constexpr long kQuadratureNodeCap = 1L << 20;

// Reduced density matrix in the continuum limit.  Throws ConvergenceError if
// the node cap is hit first (large alpha * t; use the stationary-phase
// asymptote there instead).
DensityMatrix2 reduced_density_continuum(double t, const ContinuumParams& params,
                                         const QubitAmplitudes& q0,
                                         double tol = kQuadratureTolDefault,
                                         IntegrandRoute route = IntegrandRoute::closed_form);

// Frozen qubit (omega0 = 0): populations hold still and the coherence decays
// as a pure Gaussian, a conj(b) exp(-alpha^2 t^2 / 2).
Complex static_qubit_coherence(double t, double alpha, Complex a, Complex b);

}  // namespace qbec
