#pragma once
// Value types shared by every model: qubit amplitudes, 2x2 reduced density
// matrices, detector parameter sets, and sampled trajectories.  Everything is
// in units with hbar = 1, so energies are angular frequencies and times are
// their inverses.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbec {

using Complex = std::complex<double>;

// A parameter or constructed state violates its domain.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iterative routine hit its resource cap before reaching tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pure qubit state a|1> + b|2>.  The constructor rescales to unit norm, so
// unnormalized amplitudes (typed on a command line, say) are accepted; only
// the zero vector is rejected.
class QubitAmplitudes {
 public:
  QubitAmplitudes(Complex a, Complex b);

  Complex a() const { return a_; }
  Complex b() const { return b_; }

 private:
  Complex a_;
  Complex b_;
};

class DensityMatrix2;

// Validating constructor.  Rejects s11 outside [0, 1] (beyond 1e-10 rounding
// slack) and positivity violations det < -1e-8; smaller negative dets are
// accepted as quadrature noise.
DensityMatrix2 make_density(double s11, Complex s12);

DensityMatrix2 pure_density(const QubitAmplitudes& q0);

// Qubit reduced density matrix.  Stores s11 and s12 only: the unit trace
// fixes s22 = 1 - s11 exactly, Hermiticity fixes s21 = conj(s12).
class DensityMatrix2 {
 public:
  double s11() const { return s11_; }
  double s22() const { return 1.0 - s11_; }
  Complex s12() const { return s12_; }
  Complex s21() const { return std::conj(s12_); }

  // tr(rho^2); 1 for pure states, >= 1/2 always.
  double purity() const;

  // det(rho); nonnegative (up to rounding) iff rho is a valid state.
  double positivity() const;

 private:
  friend DensityMatrix2 make_density(double s11, Complex s12);
  DensityMatrix2(double s11, Complex s12) : s11_(s11), s12_(s12) {}

  double s11_;
  Complex s12_;
};

// Finite detector: N condensate atoms in a symmetric double well, hopping
// amplitude omega_hop when the qubit electron sits on dot 1 and
// omega_hop - delta_omega when it sits on dot 2.
struct FiniteModelParams {
  int n_atoms = 0;
  double omega_hop = 0.0;    // > 0
  double delta_omega = 0.0;  // in [0, omega_hop]
  double omega0 = 0.0;       // qubit tunneling, >= 0
  double e0 = 0.0;           // condensate single-particle energy; fixed 0
  double e1 = 0.0;           // qubit level energies; the factorized routes
  double e2 = 0.0;           //   require e1 == e2 (only the splitting matters)

  void validate() const;  // throws ValidationError
};

// Continuum detector (N -> infinity at fixed alpha = sqrt(N) * delta_omega).
struct ContinuumParams {
  double alpha = 0.0;           // > 0
  double omega0 = 0.0;          // >= 0
  std::optional<double> kappa;  // sqrt(N) * omega_hop, used only by the
                                // Poisson counting check

  double z() const { return std::sqrt(2.0) * omega0 / alpha; }
  void validate() const;
};

enum class ModelTag {
  finite_n,
  oracle,
  continuum,
  stationary_phase,
  closed_form,
};

// Trajectory of density matrices at strictly increasing times.
class TimeSeries {
 public:
  explicit TimeSeries(ModelTag tag) : tag_(tag) {}

  void append(double t, const DensityMatrix2& rho);

  ModelTag tag() const { return tag_; }
  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }
  const std::vector<std::pair<double, DensityMatrix2>>& samples() const {
    return samples_;
  }

 private:
  ModelTag tag_;
  std::vector<std::pair<double, DensityMatrix2>> samples_;
};

std::string to_string(ModelTag tag);

}  // namespace qbec
