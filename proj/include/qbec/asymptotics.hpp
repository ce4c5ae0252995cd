#pragma once
// Long-time closed forms: the dephased steady state, the stationary-phase
// 1/sqrt(t) approach to it, the strong-coupling (projective) limit, and the
// envelope fit used to measure the relaxation exponent from a trajectory.

#include "qbec/types.hpp"

namespace qbec {

// Scaled complementary error function exp(x^2) erfc(x).  Stable for large x
// where exp(x^2) alone would overflow; relative accuracy ~1e-13 or better on
// x >= 0.  Negative x uses the reflection 2 exp(x^2) - erfcx(-x) and
// overflows (to +inf) below x ~ -26.6 like exp(x^2) itself does.
double erfcx(double x);

// t -> infinity limit of the continuum dynamics.  The coherence is purely
// real: the Gaussian average kills every oscillating term and what survives
// of s12 is Re(a conj(b)) times the same spectral weight that mixes the
// populations.
struct SteadyState {
  double s11_st;
  double s12_st;
  double z;  // sqrt(2) * omega0 / alpha
};

SteadyState steady_state(const ContinuumParams& params, const QubitAmplitudes& q0);

// Phase factor paired with the Im(a conj b) term of the coherence
// correction.  Two candidate pairings circulate for this formula; direct
// quadrature agrees with the cosine pairing (see tests), which is the
// default.  The sine pairing is kept selectable for comparison.
enum class CoherencePhaseVariant { cosine, sine };

struct StationaryPhaseResult {
  DensityMatrix2 rho;
  // False in the marginal window 3 omega0/alpha^2 < t < 10 omega0/alpha^2
  // where the formula is returned but not yet trustworthy.
  bool within_validity;
};

// Leading large-t behavior: steady state plus an oscillation at 2*omega0
// whose envelope decays as sqrt(omega0 / (2 alpha^2 t)).  Rejects t <= 0 and
// t <= 3 omega0/alpha^2.
StationaryPhaseResult stationary_phase_density(
    double t, const ContinuumParams& params, const QubitAmplitudes& q0,
    CoherencePhaseVariant variant = CoherencePhaseVariant::cosine);

// alpha -> infinity limit: the detector projects onto the dots instantly, so
// coherences vanish and populations freeze at their initial values.
DensityMatrix2 strong_coupling_density(const QubitAmplitudes& q0);

// Least-squares power-law exponent of the oscillation envelope |s11(t) -
// s11(inf)|, from the logs of its local peaks.  Requires omega0 > 0 and at
// least 10 resolvable peaks; a 1/sqrt(t) relaxation fits to -0.5.
double relaxation_envelope_fit(const TimeSeries& series, double omega0);

}  // namespace qbec
