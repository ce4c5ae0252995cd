#pragma once
// Scenario layer behind the command-line front end: a flat configuration
// struct, per-model dispatch, deterministic CSV emission, and the
// comparison/sweep drivers.

#include <stdexcept>
#include <string>
#include <vector>

#include "qbec/types.hpp"

namespace qbec {

// A problem with the requested configuration itself (unknown key or model
// name, malformed value, unreadable file) as opposed to a physics-parameter
// domain violation.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioModel {
  finite_n,           // factorized spectral sum at finite N
  oracle,             // brute-force full-Hamiltonian evolution (N <= 64)
  continuum,          // Gaussian quadrature in the N -> infinity limit
  stationary_phase,   // long-time closed form
  static_closed_form, // frozen qubit: Gaussian coherence decay
  steady_state,       // t -> infinity limit only (single-row output)
};

ScenarioModel parse_scenario_model(const std::string& name);
std::string to_string(ScenarioModel model);

struct ScenarioConfig {
  ScenarioModel model = ScenarioModel::continuum;

  // Initial qubit state, canonical preparation (1+i, i)/sqrt(3) by default.
  double a_re = 0.57735026918962573;
  double a_im = 0.57735026918962573;
  double b_re = 0.0;
  double b_im = 0.57735026918962573;

  double omega0 = 1.0;

  // Continuum-family coupling.
  double alpha = 1.0;

  // Finite-detector family; delta_omega defaults to alpha / sqrt(N).
  int n_atoms = 100;
  double omega_hop = 1.0;
  double delta_omega = 0.1;

  double t_max = 25.0;
  int n_samples = 501;
  double tol = 1e-8;

  std::string csv_path;  // empty: stdout
  std::string svg_path;  // empty: no charts; else prefix for <prefix>_s11.svg
                         // and <prefix>_s12.svg

  // Set by the front end when the user explicitly supplied keys of either
  // parameter family; validate() insists the populated family matches the
  // model, catching e.g. a finite-N delta_omega silently ignored by a
  // continuum run.
  bool continuum_keys_set = false;
  bool finite_keys_set = false;

  QubitAmplitudes qubit() const;
  FiniteModelParams finite_params() const;
  ContinuumParams continuum_params() const;
  bool uses_finite_family() const;
  void validate() const;
};

// Uniform sampling grid [0, t_max] with n_samples points.
std::vector<double> scenario_grid(const ScenarioConfig& cfg);

// State of the configured model at one time.
DensityMatrix2 scenario_state_at(const ScenarioConfig& cfg, double t);

// Trajectory over the scenario grid.  The stationary_phase model skips grid
// points below its validity cutoff; steady_state has no trajectory and is
// rejected here.
TimeSeries scenario_series(const ScenarioConfig& cfg);

// CSV bytes: header t,s11,s12_re,s12_im,purity, 17 significant digits, LF
// line ends.  Deterministic: identical configuration gives identical bytes.
std::string series_csv(const TimeSeries& series);

// CSV for the configured model; the steady_state model emits the single-row
// schema s11_st,s12_st instead of a trajectory.
std::string scenario_csv(const ScenarioConfig& cfg);

// Run one scenario: CSV to csv_path (stdout if empty) plus optional charts.
void run_scenario(const ScenarioConfig& cfg);

// Evaluate several models on the shared grid and qubit of `base`: one CSV
// per model at <csv_prefix>_<model>.csv and two overlay charts at
// <svg_prefix>_s11.svg / _s12.svg with the steady-state asymptote marked.
void run_comparison(const ScenarioConfig& base,
                    const std::vector<ScenarioModel>& models,
                    const std::string& csv_prefix, const std::string& svg_prefix);

// One CSV row per value, in input order; an empty value list yields just the
// header.  axis is a numeric configuration key (omega0, alpha, N, omega_hop,
// delta_omega, t_max, n_samples, tol) with each row reporting the state at
// t_max, or "t", evaluating the base scenario at exactly the given times.
std::string run_sweep(const ScenarioConfig& base, const std::string& axis,
                      const std::vector<double>& values);

// Flat key = value configuration text: one pair per line, '#' comments and
// blank lines ignored.  Returned in file order.
std::vector<std::pair<std::string, std::string>> parse_config_text(
    const std::string& text);

// Apply one key/value pair (from a config file or a command-line override).
// Unknown keys and malformed values raise ConfigError.
void apply_config_entry(ScenarioConfig& cfg, const std::string& key,
                        const std::string& value);

const std::vector<std::string>& scenario_config_keys();

}  // namespace qbec
