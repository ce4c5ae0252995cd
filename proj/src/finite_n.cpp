#include "qbec/finite_n.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "qbec/propagator.hpp"

namespace qbec {

namespace {

// Neumaier-compensated accumulator.  The spectral sums mix weights spanning
// hundreds of orders of magnitude, and the quadrature tolerances sit close
// to what naive summation would leave behind.
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

double log_binomial(int n_atoms, int n) {
  return std::lgamma(n_atoms + 1.0) - std::lgamma(n + 1.0) -
         std::lgamma(n_atoms - n + 1.0);
}

void require_mode(int n, int n_atoms) {
  if (n_atoms < 1) throw ValidationError("n_atoms must be a positive integer");
  if (n < 0 || n > n_atoms)
    throw ValidationError("eigenmode index n must lie in [0, n_atoms]");
}

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0)
    throw ValidationError("time must be nonnegative and finite");
}

}  // namespace

double eigenweight(int n, int n_atoms) {
  require_mode(n, n_atoms);
  return std::exp(log_binomial(n_atoms, n) - n_atoms * std::numbers::ln2);
}

double eigenweight_gaussian(int n, int n_atoms) {
  require_mode(n, n_atoms);
  if (n_atoms < 10)
    throw ValidationError("eigenweight_gaussian needs n_atoms >= 10");
  const double d = static_cast<double>(n_atoms) - 2.0 * n;
  return 2.0 / std::sqrt(2.0 * std::numbers::pi * n_atoms) *
         std::exp(-d * d / (2.0 * n_atoms));
}

double pn_static(double t, int n, const FiniteModelParams& params, int dot) {
  params.validate();
  require_time(t);
  require_mode(n, params.n_atoms);
  if (params.omega0 != 0.0)
    throw ValidationError("pn_static requires a frozen qubit (omega0 = 0)");
  if (dot != 1 && dot != 2) throw ValidationError("dot must be 1 or 2");
  const double rate = dot == 1 ? params.omega_hop : params.omega_hop - params.delta_omega;
  const int N = params.n_atoms;
  const double co = std::cos(rate * t);
  const double si = std::sin(rate * t);
  // Exact zeros of sin/cos would poison the log route; they only occur at
  // t = 0 (or rate = 0), where the answer is a point mass.
  if (si == 0.0) return n == 0 ? std::pow(co * co, N) : 0.0;
  if (co == 0.0) return n == N ? std::pow(si * si, N) : 0.0;
  return std::exp(log_binomial(N, n) + 2.0 * (N - n) * std::log(std::fabs(co)) +
                  2.0 * n * std::log(std::fabs(si)));
}

double pn_poisson_limit(int n, double kappa, double dt) {
  if (n < 0) throw ValidationError("n must be nonnegative");
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw ValidationError("kappa must be nonnegative");
  require_time(dt);
  const double x = kappa * dt * kappa * dt;
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(x) - x - std::lgamma(n + 1.0));
}

DensityMatrix2 reduced_density_finite(double t, const FiniteModelParams& params,
                                      const QubitAmplitudes& q0) {
  params.validate();
  require_time(t);
  const int N = params.n_atoms;
  Kahan s11, re12, im12, wsum;
  for (int n = 0; n <= N; ++n) {
    const double w = eigenweight(n, N);
    const double eps_n = (2.0 * n - N) * params.delta_omega;
    const SigmaTilde st =
        sigma_tilde_closed_form(t, eps_n, q0.a(), q0.b(), params.omega0);
    s11.add(w * st.s11);
    re12.add(w * st.s12.real());
    im12.add(w * st.s12.imag());
    wsum.add(w);
  }
  // Normalizing by the summed weight (1 up to rounding) keeps the result an
  // explicit convex combination: exact trace, t = 0 exactly pure.
  const double z = wsum.value();
  return make_density(s11.value() / z,
                      Complex(re12.value() / z, im12.value() / z));
}

namespace {

// Full-basis state at time t.  Index (q, n) -> q * (N + 1) + n with q = 0, 1
// for the electron on dot 1, 2 and n right-well atoms.
Eigen::VectorXcd evolve_full(double t, const FiniteModelParams& params,
                             const QubitAmplitudes& q0, int atom_cap) {
  params.validate();
  require_time(t);
  if (atom_cap < 1) throw ValidationError("atom_cap must be positive");
  if (params.n_atoms > atom_cap)
    throw ValidationError(
        "n_atoms exceeds the brute-force cap; the dense eigensolve scales as "
        "N^3 and is meant for validation only");
  const int N = params.n_atoms;
  const int dim = 2 * (N + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double hop[2] = {params.omega_hop, params.omega_hop - params.delta_omega};
  for (int q = 0; q < 2; ++q) {
    const int off = q * (N + 1);
    for (int n = 0; n <= N; ++n) {
      h(off + n, off + n) = q == 0 ? params.e1 : params.e2;
      if (n >= 1) {
        // Bosonic hopping between wells: <n-1| b_L^dag b_R + h.c. |n>.
        const double el = -hop[q] * std::sqrt(static_cast<double>(n) * (N - n + 1));
        h(off + n - 1, off + n) = el;
        h(off + n, off + n - 1) = el;
      }
    }
  }
  for (int n = 0; n <= N; ++n) {
    h(n, N + 1 + n) = -params.omega0;
    h(N + 1 + n, n) = -params.omega0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("full-Hamiltonian eigensolve failed");
  const Eigen::MatrixXd& v = es.eigenvectors();
  // psi0 = (a |1> + b |2>) x |all atoms left>; only rows 0 and N+1 project.
  Eigen::VectorXcd coef(dim);
  for (int k = 0; k < dim; ++k)
    coef(k) = (q0.a() * v(0, k) + q0.b() * v(N + 1, k)) *
              std::polar(1.0, -es.eigenvalues()(k) * t);
  return v.cast<Complex>() * coef;
}

}  // namespace

DensityMatrix2 full_hamiltonian_evolution(double t, const FiniteModelParams& params,
                                          const QubitAmplitudes& q0, int atom_cap) {
  const Eigen::VectorXcd psi = evolve_full(t, params, q0, atom_cap);
  const int N = params.n_atoms;
  Kahan s11, re12, im12;
  for (int n = 0; n <= N; ++n) {
    s11.add(std::norm(psi(n)));
    const Complex c = psi(n) * std::conj(psi(N + 1 + n));
    re12.add(c.real());
    im12.add(c.imag());
  }
  return make_density(s11.value(), Complex(re12.value(), im12.value()));
}

std::vector<double> full_hamiltonian_atom_distribution(
    double t, const FiniteModelParams& params, const QubitAmplitudes& q0,
    int atom_cap) {
  const Eigen::VectorXcd psi = evolve_full(t, params, q0, atom_cap);
  const int N = params.n_atoms;
  std::vector<double> pn(N + 1);
  for (int n = 0; n <= N; ++n)
    pn[n] = std::norm(psi(n)) + std::norm(psi(N + 1 + n));
  return pn;
}

double recurrence_time(const FiniteModelParams& params) {
  params.validate();
  if (params.delta_omega == 0.0)
    throw ValidationError(
        "delta_omega = 0 has no recurrence: the qubit never dephases");
  return 2.0 * std::numbers::pi / params.delta_omega;
}

}  // namespace qbec
