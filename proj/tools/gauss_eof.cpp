// gauss_eof: entanglement-of-formation bounds, exact values and ensemble
// sweeps for two-mode Gaussian states.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical-domain failure,
// 3 I/O failure. Diagnostics go to stderr.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "geof/ensemble.hpp"
#include "geof/eof.hpp"
#include "geof/state_io.hpp"

namespace {

using nlohmann::json;

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// key/value output in the selected format; csv = one header row + one row
void emit(const std::vector<std::pair<std::string, json>>& fields, const std::string& format) {
  if (format == "csv") {
    std::string head, row;
    for (const auto& [k, v] : fields) {
      if (!head.empty()) { head += ','; row += ','; }
      head += k;
      if (v.is_number_float())
        row += fmt12(v.get<double>());
      else
        row += v.dump();
    }
    std::cout << head << "\n" << row << "\n";
  } else {
    json out = json::object();
    for (const auto& [k, v] : fields) out[k] = v;
    std::cout << out.dump(2) << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Entanglement of formation for two-mode Gaussian states"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --format after the subcommand
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string state_path;
  geof::EofOptions eof_opts;
  geof::OracleGrid oracle_grid;
  geof::SweepConfig sweep_cfg;
  std::string plot_path;
  bool serial = false;

  CLI::App* bounds = app.add_subcommand("bounds", "Analytical lower/upper EoF bounds");
  bounds->add_option("state", state_path, "State JSON file")->required();

  CLI::App* exact = app.add_subcommand("exact", "Exact EoF via the r' minimization");
  exact->add_option("state", state_path, "State JSON file")->required();
  exact->add_option("--grid-points", eof_opts.grid_points, "Coarse grid size")
      ->capture_default_str();
  exact->add_option("--tol-r", eof_opts.tol_r, "Golden-section bracket tolerance")
      ->capture_default_str();

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force PSD oracle and gap vs exact");
  oracle->add_option("state", state_path, "State JSON file")->required();
  oracle->add_option("--n-r", oracle_grid.n_r, "Grid points in r")->capture_default_str();
  oracle->add_option("--n-local", oracle_grid.n_local, "Grid points per local squeezing")
      ->capture_default_str();
  oracle->add_option("--range-local", oracle_grid.range_local, "Local squeezing half-range")
      ->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "Physicality, classicality, separability, spectra");
  check->add_option("state", state_path, "State JSON file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Random-ensemble bound-gap sweep");
  sweep->add_option("--n", sweep_cfg.n_states, "Number of entangled states")
      ->capture_default_str();
  sweep->add_option("--seed", sweep_cfg.seed, "Master seed")->capture_default_str();
  sweep->add_option("--s-max", sweep_cfg.s_max, "Upper limit of s = (a+b)/2")
      ->capture_default_str();
  sweep->add_option("--min-purity", sweep_cfg.min_purity, "Reject draws below this purity")
      ->capture_default_str();
  sweep->add_option("--bins", sweep_cfg.bins, "Purity histogram bins")->capture_default_str();
  sweep->add_option("--out", sweep_cfg.output_path, "CSV output path");
  sweep->add_option("--plot-data", plot_path, "Gnuplot two-column export of (mu, delta+-)");
  sweep->add_flag("--serial", serial, "Run the serial reference kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (bounds->parsed()) {
    const geof::LoadedState st = geof::load_state_json(state_path);
    if (geof::is_separable(st.sf)) {
      emit({{"lower", 0.0}, {"upper", 0.0}, {"r_minus", 0.0}, {"r_plus", 0.0},
            {"separable", true}},
           format);
      return 0;
    }
    const geof::LowerBoundResult lb = geof::r_lower(st.sf);
    const geof::LocalSqueezings ls = geof::local_squeezings(st.sf, lb.r_minus);
    const double r_plus = geof::k_of(lb.r_minus, ls.r1, ls.r2);
    emit({{"lower", geof::entropy_of_entanglement(lb.r_minus)},
          {"upper", geof::entropy_of_entanglement(r_plus)},
          {"r_minus", lb.r_minus},
          {"r_plus", r_plus},
          {"separable", false}},
         format);
    return 0;
  }

  if (exact->parsed()) {
    const geof::LoadedState st = geof::load_state_json(state_path);
    const geof::EofResult res = geof::eof_exact(st.sf, eof_opts);
    emit({{"lower", res.lower},
          {"upper", res.upper},
          {"exact", res.exact},
          {"r_minus", res.r_minus},
          {"r_plus", res.r_plus},
          {"r_opt", res.r_opt},
          {"evaluations", res.evaluations},
          {"converged", res.converged}},
         format);
    return 0;
  }

  if (oracle->parsed()) {
    const geof::LoadedState st = geof::load_state_json(state_path);
    const double value = geof::eof_oracle(st.sf, oracle_grid);
    const geof::EofResult res = geof::eof_exact(st.sf);
    emit({{"oracle", value}, {"exact", res.exact}, {"gap", std::abs(value - res.exact)}},
         format);
    return 0;
  }

  if (check->parsed()) {
    // lenient load: report physicality instead of failing on it
    bool physical = true;
    geof::LoadedState st;
    try {
      st = geof::load_state_json(state_path);
    } catch (const geof::NotPhysical& e) {
      std::cerr << "note: " << e.what() << "\n";
      physical = false;
    }
    if (!physical) {
      emit({{"physical", false},
            {"classical", false},  // sigma >= 1 would imply physicality
            {"separable", nullptr},
            {"nu_minus", nullptr},
            {"nu_plus", nullptr},
            {"nu_gamma_minus", nullptr},
            {"nu_gamma_plus", nullptr}},
           format);
      return 0;
    }
    const geof::SymplecticSpectrum sp = geof::symplectic_spectrum(st.cov);
    const geof::SymplecticSpectrum pt = geof::pt_spectrum(st.cov);
    const geof::Purities pur = geof::purities(st.cov);
    emit({{"physical", true},
          {"classical", geof::is_classical(st.cov)},
          {"separable", geof::is_separable(st.cov)},
          {"nu_minus", sp.nu_minus},
          {"nu_plus", sp.nu_plus},
          {"nu_gamma_minus", pt.nu_minus},
          {"nu_gamma_plus", pt.nu_plus},
          {"mu", pur.mu},
          {"mu_a", pur.mu_a},
          {"mu_b", pur.mu_b},
          {"standard_form_a", st.sf.a},
          {"standard_form_b", st.sf.b},
          {"standard_form_c1", st.sf.c1},
          {"standard_form_c2", st.sf.c2}},
         format);
    return 0;
  }

  // sweep
  sweep_cfg.exec = serial ? geof::Execution::serial : geof::Execution::parallel;
  const geof::SweepResult res = geof::run_sweep(sweep_cfg);
  if (!plot_path.empty()) geof::write_plot_data(res.records, plot_path);
  emit({{"n_states", res.summary.n_states},
        {"rejected_draws", res.summary.rejected_draws},
        {"mean_delta_minus_pct", res.summary.mean_delta_minus},
        {"mean_delta_plus_pct", res.summary.mean_delta_plus},
        {"upper_closer", res.summary.upper_closer},
        {"spearman_minus", res.summary.spearman_minus},
        {"spearman_plus", res.summary.spearman_plus}},
       format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const geof::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
