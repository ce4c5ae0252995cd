#include "qbec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace qbec {

double erfcx(double x) {
  if (std::isnan(x)) throw ValidationError("erfcx of NaN");
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < 6.0) return std::exp(x * x) * std::erfc(x);
  // Laplace continued fraction, evaluated bottom-up:
  //   erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // 40 levels is far past full double precision for x >= 6.
  double f = x;
  for (int k = 40; k >= 1; --k) f = x + 0.5 * k / f;
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

SteadyState steady_state(const ContinuumParams& params, const QubitAmplitudes& q0) {
  params.validate();
  const double z = params.z();
  // Spectral weight (sqrt(pi)/2) z erfcx(z): 0 at strong coupling (z -> 0),
  // 1/2 at weak coupling (z -> inf).
  const double f = 0.5 * std::sqrt(std::numbers::pi) * z * erfcx(z);
  const double aa = std::norm(q0.a());
  const double bb = std::norm(q0.b());
  const Complex ab = q0.a() * std::conj(q0.b());
  return {aa + f * (bb - aa), 2.0 * f * ab.real(), z};
}

StationaryPhaseResult stationary_phase_density(double t, const ContinuumParams& params,
                                               const QubitAmplitudes& q0,
                                               CoherencePhaseVariant variant) {
  params.validate();
  if (!std::isfinite(t) || t <= 0.0) throw ValidationError("time must be positive");
  const double t_scale = params.omega0 / (params.alpha * params.alpha);
  if (t <= 3.0 * t_scale)
    throw ValidationError(
        "t below the stationary-phase window (t <= 3 omega0 / alpha^2)");
  const SteadyState st = steady_state(params, q0);
  const double aa = std::norm(q0.a());
  const double bb = std::norm(q0.b());
  const double im = (q0.a() * std::conj(q0.b())).imag();
  // The only stationary point of the phase 2 omega(eps) t sits at eps = 0,
  // where omega = omega0; expanding around it gives a half-Gaussian
  // oscillatory integral, hence the sqrt envelope and the pi/4 phase offset.
  const double env = std::sqrt(params.omega0 / (2.0 * params.alpha * params.alpha * t));
  const double th = 2.0 * params.omega0 * t + 0.25 * std::numbers::pi;
  const double c = std::cos(th);
  const double s = std::sin(th);
  const double s11 = st.s11_st + env * ((aa - bb) * c + 2.0 * im * s);
  const double im12 =
      env * ((bb - aa) * s + 2.0 * im * (variant == CoherencePhaseVariant::cosine ? c : s));
  return {make_density(s11, Complex(st.s12_st, im12)), t >= 10.0 * t_scale};
}

DensityMatrix2 strong_coupling_density(const QubitAmplitudes& q0) {
  return make_density(std::norm(q0.a()), Complex(0.0, 0.0));
}

double relaxation_envelope_fit(const TimeSeries& series, double omega0) {
  if (!std::isfinite(omega0) || omega0 <= 0.0)
    throw ValidationError(
        "envelope fit needs an oscillating qubit (omega0 > 0); a static "
        "qubit relaxes as a Gaussian, not a power law");
  const auto& s = series.samples();
  if (s.size() < 32)
    throw ValidationError("envelope fit needs a densely sampled series");

  // Steady value from the tail: midpoint of the extremes over the last few
  // oscillation periods, insensitive to the residual envelope amplitude.
  const double period = std::numbers::pi / omega0;
  const double t_end = s.back().first;
  const double window = std::max(2.0 * period, 0.05 * (t_end - s.front().first));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [t, rho] : s) {
    if (t < t_end - window) continue;
    lo = std::min(lo, rho.s11());
    hi = std::max(hi, rho.s11());
  }
  const double s_inf = 0.5 * (lo + hi);

  std::vector<double> dev(s.size());
  double dev_max = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    dev[i] = std::fabs(s[i].second.s11() - s_inf);
    dev_max = std::max(dev_max, dev[i]);
  }
  // Peaks of |deviation|; the floor skips jitter near the zero crossings.
  const double floor = 1e-3 * dev_max;
  std::vector<double> log_t, log_d;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (dev[i] > dev[i - 1] && dev[i] >= dev[i + 1] && dev[i] > floor &&
        s[i].first > 0.0) {
      log_t.push_back(std::log(s[i].first));
      log_d.push_back(std::log(dev[i]));
    }
  }
  if (log_t.size() < 10)
    throw ValidationError(
        "fewer than 10 envelope peaks resolved; sample the series more "
        "densely or over a longer span");

  const std::size_t m = log_t.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += log_t[i];
    my += log_d[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (log_t[i] - mx) * (log_d[i] - my);
    sxx += (log_t[i] - mx) * (log_t[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace qbec
