#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "oracle_utils.hpp"
#include "qbec/asymptotics.hpp"
#include "qbec/continuum.hpp"
#include "qbec/scenario.hpp"

using namespace qbec;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "qbec_scenario_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(QBEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("config text parsing") {
  const std::string text =
      "# comment line\n"
      "model = continuum\n"
      "\n"
      "omega0=2.5   # trailing comment\n"
      "  alpha =  0.5\n"
      "csv_path = out.csv\n";
  const auto entries = parse_config_text(text);
  REQUIRE(entries.size() == 4);
  CHECK(entries[0] == std::pair<std::string, std::string>{"model", "continuum"});
  CHECK(entries[1] == std::pair<std::string, std::string>{"omega0", "2.5"});
  CHECK(entries[2] == std::pair<std::string, std::string>{"alpha", "0.5"});
  CHECK(entries[3] == std::pair<std::string, std::string>{"csv_path", "out.csv"});

  CHECK_THROWS_AS(parse_config_text("omega0 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("= 1\n"), ConfigError);
}

TEST_CASE("config entries populate the scenario") {
  ScenarioConfig cfg;
  apply_config_entry(cfg, "model", "finite_n");
  apply_config_entry(cfg, "omega0", "0.25");
  apply_config_entry(cfg, "N", "32");
  apply_config_entry(cfg, "delta_omega", "0.05");
  CHECK(cfg.model == ScenarioModel::finite_n);
  CHECK(cfg.omega0 == 0.25);
  CHECK(cfg.n_atoms == 32);
  CHECK(cfg.finite_keys_set);
  CHECK_FALSE(cfg.continuum_keys_set);
  apply_config_entry(cfg, "alpha", "2.0");
  CHECK(cfg.continuum_keys_set);

  CHECK_THROWS_AS(apply_config_entry(cfg, "bogus", "1"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "omega0", "fast"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "N", "3.5"), ConfigError);
  CHECK_THROWS_AS(apply_config_entry(cfg, "model", "markovian"), ConfigError);
}

TEST_CASE("parameter families must match the model") {
  ScenarioConfig cfg;
  cfg.model = ScenarioModel::continuum;
  cfg.finite_keys_set = true;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  ScenarioConfig fin;
  fin.model = ScenarioModel::finite_n;
  fin.continuum_keys_set = true;
  CHECK_THROWS_AS(fin.validate(), ValidationError);
  fin.continuum_keys_set = false;
  CHECK_NOTHROW(fin.validate());

  ScenarioConfig bad;
  bad.t_max = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = ScenarioConfig{};
  bad.n_samples = 1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("grid spans [0, t_max]") {
  ScenarioConfig cfg;
  cfg.t_max = 10.0;
  cfg.n_samples = 5;
  const std::vector<double> grid = scenario_grid(cfg);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 10.0);
  CHECK(grid[2] == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("csv bytes are deterministic and well-formed") {
  ScenarioConfig cfg;
  cfg.model = ScenarioModel::static_closed_form;
  cfg.t_max = 2.0;
  cfg.n_samples = 9;
  const std::string csv1 = scenario_csv(cfg);
  const std::string csv2 = scenario_csv(cfg);
  CHECK(csv1 == csv2);
  const auto ls = lines_of(csv1);
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] == "t,s11,s12_re,s12_im,purity");
  // 17 significant digits round-trip exactly.
  const std::string cell = ls[1].substr(ls[1].find(',') + 1);
  const double s11 = std::stod(cell);
  CHECK(s11 == 2.0 / 3.0);
}

TEST_CASE("steady state emits a single row") {
  ScenarioConfig cfg;
  cfg.model = ScenarioModel::steady_state;
  const std::string csv = scenario_csv(cfg);
  const auto ls = lines_of(csv);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "s11_st,s12_st");
  const SteadyState st =
      steady_state(cfg.continuum_params(), cfg.qubit());
  const std::size_t comma = ls[1].find(',');
  CHECK(std::stod(ls[1].substr(0, comma)) == st.s11_st);
  CHECK(std::stod(ls[1].substr(comma + 1)) == st.s12_st);
}

TEST_CASE("stationary phase series skips the invalid early grid") {
  ScenarioConfig cfg;
  cfg.model = ScenarioModel::stationary_phase;
  cfg.t_max = 20.0;
  cfg.n_samples = 21;  // grid step 1: points 0..3 are outside the window
  const TimeSeries series = scenario_series(cfg);
  REQUIRE(!series.empty());
  CHECK(series.samples().front().first == 4.0);
  CHECK(series.samples().back().first == 20.0);

  cfg.t_max = 2.0;  // entirely below 3 omega0 / alpha^2
  CHECK_THROWS_AS(scenario_series(cfg), ValidationError);
}

TEST_CASE("sweep over a parameter keeps input order") {
  ScenarioConfig base;
  base.model = ScenarioModel::steady_state;
  const std::string csv = run_sweep(base, "alpha", {2.0, 0.5, 1.0, 8.0, 0.1});
  const auto ls = lines_of(csv);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "alpha,s11_st,s12_st");
  // Rows keep the input order; the axis value leads each row (printed with
  // %.17g, so 0.1 round-trips rather than prints prettily).
  const std::vector<double> want{2.0, 0.5, 1.0, 8.0, 0.1};
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(std::stod(ls[i + 1].substr(0, ls[i + 1].find(','))) == want[i]);
}

TEST_CASE("empty sweep yields only the header") {
  ScenarioConfig base;
  CHECK(run_sweep(base, "omega0", {}) == "omega0,t,s11,s12_re,s12_im,purity\n");
  CHECK(run_sweep(base, "t", {}) == "t,s11,s12_re,s12_im,purity\n");
}

TEST_CASE("omega0 sweep touches the static limit") {
  ScenarioConfig base;
  base.model = ScenarioModel::continuum;
  base.t_max = 2.0;
  const std::string csv = run_sweep(base, "omega0", {0.0, 1.0});
  const auto ls = lines_of(csv);
  REQUIRE(ls.size() == 3);
  // Row omega0 = 0: coherence equals the closed-form Gaussian decay.
  std::istringstream row(ls[1]);
  std::string cell;
  std::vector<double> vals;
  while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
  REQUIRE(vals.size() == 6);
  const QubitAmplitudes q0 = base.qubit();
  const Complex expect = static_qubit_coherence(2.0, 1.0, q0.a(), q0.b());
  CHECK(vals[0] == 0.0);
  CHECK(vals[1] == 2.0);
  CHECK(std::fabs(vals[2] - std::norm(q0.a())) < 1e-8);
  CHECK(std::fabs(vals[3] - expect.real()) < 1e-8);
  CHECK(std::fabs(vals[4] - expect.imag()) < 1e-8);
}

TEST_CASE("sweep over t evaluates exactly the given times") {
  ScenarioConfig base;
  base.model = ScenarioModel::static_closed_form;
  const std::string csv = run_sweep(base, "t", {0.25, 4.0});
  const auto ls = lines_of(csv);
  REQUIRE(ls.size() == 3);
  CHECK(ls[1].substr(0, 5) == "0.25,");
  CHECK(ls[2].substr(0, 2) == "4,");
}

TEST_CASE("sweep rejects nonsense") {
  ScenarioConfig base;
  CHECK_THROWS_AS(run_sweep(base, "flux", {1.0}), ConfigError);
  CHECK_THROWS_AS(run_sweep(base, "N", {2.5}), ConfigError);
  // Domain violations surface as validation errors, not config errors.
  CHECK_THROWS_AS(run_sweep(base, "alpha", {-1.0}), ValidationError);
}

TEST_CASE("run_scenario writes csv and charts") {
  const fs::path dir = test_dir();
  ScenarioConfig cfg;
  cfg.model = ScenarioModel::continuum;
  cfg.t_max = 3.0;
  cfg.n_samples = 31;
  cfg.csv_path = (dir / "evolve.csv").string();
  cfg.svg_path = (dir / "evolve").string();
  run_scenario(cfg);
  const std::string csv = slurp(dir / "evolve.csv");
  CHECK(lines_of(csv).size() == 32);
  const std::string svg11 = slurp(dir / "evolve_s11.svg");
  const std::string svg12 = slurp(dir / "evolve_s12.svg");
  CHECK(svg11.find("<svg") == 0);
  CHECK(svg11.find("</svg>") != std::string::npos);
  CHECK(svg11.find("polyline") != std::string::npos);
  CHECK(svg11.find("steady state") != std::string::npos);
  CHECK(svg12.find("|s12|") != std::string::npos);

  // Byte-identical on a second run.
  run_scenario(cfg);
  CHECK(slurp(dir / "evolve.csv") == csv);
  CHECK(slurp(dir / "evolve_s11.svg") == svg11);
}

TEST_CASE("comparison shares one grid across models") {
  const fs::path dir = test_dir();
  ScenarioConfig base;
  base.t_max = 4.0;
  base.n_samples = 9;
  base.n_atoms = 6;
  base.omega_hop = 1.0;
  base.delta_omega = 1.0 / std::sqrt(6.0);  // matched alpha = 1
  const std::string prefix = (dir / "cmp").string();
  run_comparison(base,
                 {ScenarioModel::continuum, ScenarioModel::finite_n,
                  ScenarioModel::oracle},
                 prefix, prefix);
  const std::string c_cont = slurp(dir / "cmp_continuum.csv");
  const std::string c_fin = slurp(dir / "cmp_finite_n.csv");
  const std::string c_oracle = slurp(dir / "cmp_oracle.csv");
  // Same time column everywhere.
  const auto tcol = [](const std::string& csv) {
    std::vector<std::string> ts;
    for (const std::string& l : lines_of(csv)) ts.push_back(l.substr(0, l.find(',')));
    return ts;
  };
  CHECK(tcol(c_cont) == tcol(c_fin));
  CHECK(tcol(c_cont) == tcol(c_oracle));
  const std::string svg = slurp(dir / "cmp_s11.svg");
  CHECK(svg.find("finite_n") != std::string::npos);
  CHECK(svg.find("oracle") != std::string::npos);
  CHECK(svg.find("continuum") != std::string::npos);

  CHECK_THROWS_AS(run_comparison(base, {}, prefix, prefix), ConfigError);
  CHECK_THROWS_AS(run_comparison(base, {ScenarioModel::steady_state}, prefix, ""),
                  ConfigError);
}

TEST_CASE("cli: evolve to csv, exit 0") {
  const fs::path dir = test_dir();
  const fs::path csv = dir / "cli_evolve.csv";
  const int rc = run_cli("evolve --model static_closed_form --t_max 2 "
                         "--n_samples 5 --csv_path " + csv.string());
  CHECK(rc == 0);
  CHECK(lines_of(slurp(csv)).size() == 6);
}

TEST_CASE("cli: config file with command-line override") {
  const fs::path dir = test_dir();
  const fs::path conf = dir / "cli.conf";
  const fs::path csv = dir / "cli_conf.csv";
  {
    std::ofstream out(conf);
    out << "# scenario\nmodel = static_closed_form\nt_max = 1\nn_samples = 3\n"
        << "csv_path = " << csv.string() << "\n";
  }
  CHECK(run_cli("evolve --config " + conf.string()) == 0);
  auto ls = lines_of(slurp(csv));
  REQUIRE(ls.size() == 4);
  CHECK(ls.back().substr(0, 2) == "1,");
  // Flag beats file.
  CHECK(run_cli("evolve --config " + conf.string() + " --t_max 2") == 0);
  ls = lines_of(slurp(csv));
  CHECK(ls.back().substr(0, 2) == "2,");
}

TEST_CASE("cli: error taxonomy maps to exit codes") {
  // Unknown model name: configuration error.
  CHECK(run_cli("evolve --model markovian") == 1);
  // Unknown flag: configuration error.
  CHECK(run_cli("evolve --wibble 3") == 1);
  // Missing config file: configuration error.
  CHECK(run_cli("evolve --config /nonexistent/qbec.conf") == 1);
  // Unknown sweep axis: configuration error.
  CHECK(run_cli("sweep --axis flux --values 1,2") == 1);
  // Domain violation: validation error.
  CHECK(run_cli("evolve --alpha=-1 --t_max 1 --n_samples 3") == 2);
  CHECK(run_cli("evolve --model finite_n --alpha 2 --t_max 1 --n_samples 3") == 2);
  // Node cap: non-convergence.
  CHECK(run_cli("sweep --axis t --values 3000000 --tol 1e-10") == 3);
}

TEST_CASE("cli: steady and sweep to stdout") {
  const fs::path dir = test_dir();
  const fs::path out = dir / "steady_stdout.txt";
  const std::string cmd = std::string(QBEC_CLI_PATH) +
                          " steady --alpha 1 --omega0 1 > " + out.string() +
                          " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const auto ls = lines_of(slurp(out));
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "s11_st,s12_st");
  CHECK(std::stod(ls[1].substr(0, ls[1].find(','))) ==
        doctest::Approx(0.5262102569039818).epsilon(1e-14));

  const fs::path sw = dir / "sweep_stdout.txt";
  const std::string cmd2 = std::string(QBEC_CLI_PATH) +
                           " sweep --model steady_state --axis alpha "
                           "--values 1,2 > " + sw.string() + " 2>/dev/null";
  REQUIRE(std::system(cmd2.c_str()) == 0);
  CHECK(lines_of(slurp(sw)).size() == 3);
}

TEST_CASE("cli: pn-dist distribution sums to one") {
  const fs::path dir = test_dir();
  const fs::path csv = dir / "pn.csv";
  const int rc = run_cli("pn-dist --N 12 --omega_hop 1 --delta_omega 0.2 "
                         "--dot 2 --t 0.8 --csv_path " + csv.string());
  CHECK(rc == 0);
  const auto ls = lines_of(slurp(csv));
  REQUIRE(ls.size() == 14);
  CHECK(ls[0] == "n,p_n");
  double sum = 0.0;
  for (std::size_t i = 1; i < ls.size(); ++i)
    sum += std::stod(ls[i].substr(ls[i].find(',') + 1));
  CHECK(std::fabs(sum - 1.0) < 1e-12);
}

TEST_CASE("cli: oracle deviation table") {
  const fs::path dir = test_dir();
  const fs::path csv = dir / "oracle.csv";
  const int rc = run_cli("oracle --N 6 --omega_hop 1 --delta_omega 0.3 "
                         "--omega0 1 --t_max 4 --n_samples 9 --csv_path " +
                         csv.string());
  CHECK(rc == 0);
  const auto ls = lines_of(slurp(csv));
  REQUIRE(ls.size() == 10);
  // Last column is the max deviation; the factorization holds to 1e-10.
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const std::string dev = ls[i].substr(ls[i].rfind(',') + 1);
    CHECK(std::stod(dev) < 1e-10);
  }
}

}  // TEST_SUITE
