#pragma once
// Closed-form propagator of a single asymmetric two-level system and the
// per-mode qubit density matrices built from it.  Everything downstream
// (finite-N sums, continuum quadrature, asymptotics) reduces the full
// qubit+condensate problem to averages of these objects over the detector's
// eigenenergy shifts.
//
// Sign convention: in the {|1>, |2>} basis the Hamiltonian is
//
//     H(eps') = [[ 0,      -omega0 ],
//                [ -omega0,  eps'  ]]
//
// and the propagator is U(t) = exp(-i H t).  The dense matrix exponential of
// exactly this matrix is the arbiter for every sign below; the unit tests
// check against it directly.

#include <Eigen/Dense>

#include "qbec/types.hpp"

namespace qbec {

// Two-level system with level displacement eps' on |2> and tunneling omega0.
// rabi() is half the oscillation splitting: omega = sqrt((eps'/2)^2 + omega0^2).
class AsymmetricQubit {
 public:
  AsymmetricQubit(double epsilon_prime, double omega0);

  double epsilon_prime() const { return epsilon_prime_; }
  double omega0() const { return omega0_; }
  double rabi() const { return rabi_; }

 private:
  double epsilon_prime_;
  double omega0_;
  double rabi_;
};

// U(t) for the Hamiltonian above.  Exactly unitary up to rounding; reduces to
// the identity when both eps' and omega0 vanish.
Eigen::Matrix2cd propagator_matrix(double t, const AsymmetricQubit& q);

// Pure-state density matrix U psi0 psi0^dag U^dag at level displacement
// epsilon.  Purity stays 1 by construction.
DensityMatrix2 sigma_of_epsilon(double t, double epsilon, const QubitAmplitudes& q0,
                                double omega0);

// Symmetrized average of sigma_of_epsilon over +-epsilon.  This is the
// quantity the detector actually selects: its eigenenergy shifts come in
// opposite-sign pairs with equal weight, so only the even part survives.
DensityMatrix2 sigma_tilde(double t, double epsilon, const QubitAmplitudes& q0,
                           double omega0);

// Closed trigonometric form of sigma_tilde.  Quadrature hot path: returns the
// two independent entries without constructing a DensityMatrix2 (and without
// its validation cost).
struct SigmaTilde {
  double s11;
  Complex s12;
};

SigmaTilde sigma_tilde_closed_form(double t, double epsilon, Complex a, Complex b,
                                   double omega0);

}  // namespace qbec
