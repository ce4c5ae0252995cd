// Command-line front end.  Subcommands:
//   evolve   one model over a uniform time grid -> CSV (+ optional charts)
//   compare  several models on a shared grid -> per-model CSV + overlay charts
//   sweep    one parameter (or t itself) over explicit values -> CSV table
//   steady   t -> infinity limit -> single-row CSV
//   pn-dist  atom counting statistics of a frozen qubit -> CSV
//   oracle   factorized vs brute-force evolution deviation table -> CSV
//
// Exit codes: 0 success, 1 configuration errors, 2 parameter validation
// errors, 3 quadrature/eigensolver non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbec/finite_n.hpp"
#include "qbec/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qbec::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qbec::ConfigError("cannot open output path: " + path);
  out << bytes;
  if (!out) throw qbec::ConfigError("failed writing: " + path);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = s.find(sep, pos);
    out.push_back(s.substr(pos, c == std::string::npos ? c : c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

double parse_double(const std::string& what, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw qbec::ConfigError(what + ": '" + s + "' is not a number");
  }
}

std::vector<double> parse_value_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : split(s, ','))
    out.push_back(parse_double("--values entry", item));
  return out;
}

std::vector<double> parse_logspace(const std::string& s) {
  const std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3)
    throw qbec::ConfigError("--logspace expects lo:hi:count");
  const double lo = parse_double("--logspace lo", parts[0]);
  const double hi = parse_double("--logspace hi", parts[1]);
  const double nd = parse_double("--logspace count", parts[2]);
  if (!(lo > 0.0) || !(hi > lo))
    throw qbec::ConfigError("--logspace needs 0 < lo < hi");
  if (nd < 1.0 || nd != std::floor(nd))
    throw qbec::ConfigError("--logspace count must be a positive integer");
  const int n = static_cast<int>(nd);
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i)
    out[i] = lo * std::pow(hi / lo, i / static_cast<double>(n - 1));
  return out;
}

const char* help_for(const std::string& key) {
  static const std::map<std::string, const char*> help = {
      {"model", "finite_n | oracle | continuum | stationary_phase | "
                "static_closed_form | steady_state"},
      {"a_re", "Re a of the initial state a|1> + b|2> (normalized on input)"},
      {"a_im", "Im a of the initial state"},
      {"b_re", "Re b of the initial state"},
      {"b_im", "Im b of the initial state"},
      {"omega0", "qubit tunneling frequency"},
      {"alpha", "continuum coupling, the N->inf limit of sqrt(N)*delta_omega"},
      {"N", "atom count of the finite detector"},
      {"omega_hop", "condensate hopping frequency"},
      {"delta_omega", "hopping reduction when the electron sits on dot 2"},
      {"t_max", "end of the time grid"},
      {"n_samples", "grid points on [0, t_max]"},
      {"tol", "quadrature tolerance (continuum model)"},
      {"csv_path", "output CSV path (stdout if omitted)"},
      {"svg_path", "chart prefix; writes <prefix>_s11.svg and <prefix>_s12.svg"},
  };
  const auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

// Scenario keys are registered as raw string options and funneled through
// apply_config_entry, so a flag and a config-file line behave identically.
struct KeyOptions {
  std::map<std::string, CLI::Option*> opts;
  CLI::Option* config = nullptr;
};

KeyOptions add_scenario_options(CLI::App* cmd,
                                const std::set<std::string>& skip = {}) {
  KeyOptions ko;
  ko.config =
      cmd->add_option("--config", "flat key = value file, applied before flags");
  for (const std::string& key : qbec::scenario_config_keys())
    if (!skip.count(key))
      ko.opts[key] = cmd->add_option("--" + key)->description(help_for(key));
  return ko;
}

qbec::ScenarioConfig build_config(const KeyOptions& ko,
                                  qbec::ScenarioConfig cfg = {}) {
  if (ko.config->count())
    for (const auto& [k, v] :
         qbec::parse_config_text(read_file(ko.config->results().back())))
      qbec::apply_config_entry(cfg, k, v);
  for (const auto& [key, opt] : ko.opts)
    if (opt->count()) qbec::apply_config_entry(cfg, key, opt->results().back());
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Reduced dynamics of a double-dot qubit continuously measured by a "
      "double-well condensate"};
  app.require_subcommand(1);

  // evolve
  CLI::App* evolve = app.add_subcommand("evolve", "one model over a time grid");
  const KeyOptions evolve_keys = add_scenario_options(evolve);
  evolve->callback([&] { qbec::run_scenario(build_config(evolve_keys)); });

  // compare
  CLI::App* compare =
      app.add_subcommand("compare", "several models on a shared grid");
  const KeyOptions compare_keys =
      add_scenario_options(compare, {"model", "csv_path", "svg_path"});
  auto models_str =
      std::make_shared<std::string>("continuum,finite_n,stationary_phase");
  auto csv_prefix = std::make_shared<std::string>();
  auto svg_prefix = std::make_shared<std::string>();
  compare->add_option("--models", *models_str, "comma-separated model list")
      ->capture_default_str();
  compare->add_option("--csv_prefix", *csv_prefix,
                      "per-model CSVs at <prefix>_<model>.csv");
  compare->add_option("--svg_prefix", *svg_prefix,
                      "overlay charts at <prefix>_s11.svg / _s12.svg");
  compare->callback([&, models_str, csv_prefix, svg_prefix] {
    std::vector<qbec::ScenarioModel> models;
    for (const std::string& name : split(*models_str, ','))
      models.push_back(qbec::parse_scenario_model(name));
    qbec::run_comparison(build_config(compare_keys), models, *csv_prefix,
                         *svg_prefix);
  });

  // sweep
  CLI::App* sweep =
      app.add_subcommand("sweep", "one parameter (or t) over explicit values");
  const KeyOptions sweep_keys = add_scenario_options(sweep, {"svg_path"});
  auto axis = std::make_shared<std::string>();
  auto values_str = std::make_shared<std::string>();
  auto logspace_str = std::make_shared<std::string>();
  sweep->add_option("--axis", *axis,
                    "omega0 | alpha | N | omega_hop | delta_omega | t_max | "
                    "n_samples | tol | t")
      ->required();
  CLI::Option* values_opt = sweep->add_option(
      "--values", *values_str, "comma-separated values (empty: header only)");
  CLI::Option* logspace_opt = sweep->add_option(
      "--logspace", *logspace_str, "lo:hi:count log-spaced values");
  values_opt->excludes(logspace_opt);
  logspace_opt->excludes(values_opt);
  sweep->callback([&, axis, values_str, logspace_str] {
    const qbec::ScenarioConfig cfg = build_config(sweep_keys);
    std::vector<double> values;
    if (sweep->count("--logspace"))
      values = parse_logspace(*logspace_str);
    else
      values = parse_value_list(*values_str);
    write_output(cfg.csv_path, qbec::run_sweep(cfg, *axis, values));
  });

  // steady
  CLI::App* steady = app.add_subcommand("steady", "t -> infinity steady state");
  const KeyOptions steady_keys = add_scenario_options(
      steady, {"model", "N", "omega_hop", "delta_omega", "t_max", "n_samples",
               "tol", "svg_path"});
  steady->callback([&] {
    qbec::ScenarioConfig cfg = build_config(steady_keys);
    cfg.model = qbec::ScenarioModel::steady_state;
    qbec::run_scenario(cfg);
  });

  // pn-dist
  CLI::App* pn =
      app.add_subcommand("pn-dist", "atom counting statistics, frozen qubit");
  auto pn_n = std::make_shared<int>(100);
  auto pn_hop = std::make_shared<double>(1.0);
  auto pn_dw = std::make_shared<double>(0.1);
  auto pn_dot = std::make_shared<int>(1);
  auto pn_t = std::make_shared<double>(0.0);
  auto pn_kappa = std::make_shared<double>(0.0);
  auto pn_csv = std::make_shared<std::string>();
  pn->add_option("--N", *pn_n, "atom count")->capture_default_str();
  pn->add_option("--omega_hop", *pn_hop, help_for("omega_hop"))->capture_default_str();
  pn->add_option("--delta_omega", *pn_dw, help_for("delta_omega"))->capture_default_str();
  pn->add_option("--dot", *pn_dot, "dot the electron is frozen on (1 or 2)")
      ->capture_default_str();
  CLI::Option* pn_t_opt = pn->add_option("--t", *pn_t, "measurement time");
  pn_t_opt->required();
  CLI::Option* pn_kappa_opt = pn->add_option(
      "--kappa", *pn_kappa, "also tabulate the Poisson limit at this kappa");
  pn->add_option("--csv_path", *pn_csv, help_for("csv_path"));
  pn->callback([&, pn_n, pn_hop, pn_dw, pn_dot, pn_t, pn_kappa, pn_csv] {
    qbec::FiniteModelParams params;
    params.n_atoms = *pn_n;
    params.omega_hop = *pn_hop;
    params.delta_omega = *pn_dw;
    params.omega0 = 0.0;
    const bool poisson = pn_kappa_opt->count() > 0;
    std::string csv = poisson ? "n,p_n,p_poisson\n" : "n,p_n\n";
    double sum = 0.0;
    for (int n = 0; n <= *pn_n; ++n) {
      const double p = qbec::pn_static(*pn_t, n, params, *pn_dot);
      sum += p;
      csv += std::to_string(n) + "," + g17(p);
      if (poisson) csv += "," + g17(qbec::pn_poisson_limit(n, *pn_kappa, *pn_t));
      csv += '\n';
    }
    write_output(*pn_csv, csv);
    std::cerr << "# sum p_n = " << g17(sum) << "\n";
  });

  // oracle
  CLI::App* oracle = app.add_subcommand(
      "oracle", "factorized vs brute-force evolution deviation table");
  const KeyOptions oracle_keys = add_scenario_options(
      oracle, {"model", "alpha", "tol", "svg_path"});
  oracle->callback([&] {
    qbec::ScenarioConfig base;
    base.n_atoms = 8;  // brute force is O(N^3) per eigensolve; default small
    qbec::ScenarioConfig cfg = build_config(oracle_keys, base);
    cfg.model = qbec::ScenarioModel::finite_n;
    cfg.continuum_keys_set = false;
    cfg.finite_keys_set = true;
    cfg.validate();
    const qbec::QubitAmplitudes q0 = cfg.qubit();
    const qbec::FiniteModelParams params = cfg.finite_params();
    std::string csv =
        "t,s11_sum,s12_re_sum,s12_im_sum,s11_full,s12_re_full,s12_im_full,dev\n";
    double worst = 0.0;
    for (double t : qbec::scenario_grid(cfg)) {
      const qbec::DensityMatrix2 sum = qbec::reduced_density_finite(t, params, q0);
      const qbec::DensityMatrix2 full =
          qbec::full_hamiltonian_evolution(t, params, q0);
      const double dev = std::max(
          {std::fabs(sum.s11() - full.s11()),
           std::fabs(sum.s12().real() - full.s12().real()),
           std::fabs(sum.s12().imag() - full.s12().imag())});
      worst = std::max(worst, dev);
      csv += g17(t) + "," + g17(sum.s11()) + "," + g17(sum.s12().real()) + "," +
             g17(sum.s12().imag()) + "," + g17(full.s11()) + "," +
             g17(full.s12().real()) + "," + g17(full.s12().imag()) + "," +
             g17(dev) + "\n";
    }
    write_output(cfg.csv_path, csv);
    std::cerr << "# max deviation = " << g17(worst) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const qbec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const qbec::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const qbec::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
