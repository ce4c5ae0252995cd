#pragma once
// Exact finite-N evolution.  The factorized route is a binomial-weighted
// spectral sum of per-mode density matrices; the brute-force route
// diagonalizes the full qubit+condensate Hamiltonian in the 2(N+1)-dimensional
// number basis and exists purely to validate the factorization.

#include <vector>

#include "qbec/types.hpp"

namespace qbec {

// Binomial weight C(N, n) / 2^N of condensate eigenmode n, via log-gamma so
// it stays finite up to N ~ 1e6.
double eigenweight(int n, int n_atoms);

// Large-N Gaussian approximation (2 / sqrt(2 pi N)) exp(-(N - 2n)^2 / 2N).
// Rejects N < 10, where the approximation is meaningless.
double eigenweight_gaussian(int n, int n_atoms);

// Probability of finding n atoms in the right well at time t when the qubit
// is frozen on the given dot (1 or 2).  Requires omega0 == 0; the atom
// distribution is then exactly binomial with a coherently oscillating bias.
double pn_static(double t, int n, const FiniteModelParams& params, int dot);

// N -> infinity short-time limit of pn_static with sqrt(N) * omega_hop fixed
// at kappa: a Poisson distribution in (kappa * dt)^2.
double pn_poisson_limit(int n, double kappa, double dt);

// Reduced qubit density matrix from the factorized evolution: the spectral
// sum over eigenmodes n with level displacements (2n - N) * delta_omega.
DensityMatrix2 reduced_density_finite(double t, const FiniteModelParams& params,
                                      const QubitAmplitudes& q0);

inline constexpr int kBruteForceAtomCap = 64;

// Brute-force evolution of the full Hamiltonian (dense symmetric
// eigendecomposition, dimension 2(N+1)).  Refuses n_atoms > atom_cap.
DensityMatrix2 full_hamiltonian_evolution(double t, const FiniteModelParams& params,
                                          const QubitAmplitudes& q0,
                                          int atom_cap = kBruteForceAtomCap);

// Atom-number distribution sum_q |psi_{q,n}|^2 from the same brute-force
// state, indexed by the right-well occupation n = 0..N.
std::vector<double> full_hamiltonian_atom_distribution(
    double t, const FiniteModelParams& params, const QubitAmplitudes& q0,
    int atom_cap = kBruteForceAtomCap);

// Full revival period 2 pi / delta_omega of the factorized finite-N dynamics.
double recurrence_time(const FiniteModelParams& params);

}  // namespace qbec
