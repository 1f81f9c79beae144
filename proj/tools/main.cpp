#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bursty/errors.hpp"
#include "bursty/sweep.hpp"

namespace {

void bind_options(CLI::App& app, bursty::RunConfig& config) {
  app.add_option("--system.F", config.birth_rate, "Production rate of A");
  app.add_option("--system.gamma_B", config.decay_b, "Death rate of B");

  app.add_option("--rate.kind", config.rate.kind, "constant | linear | hill | tabulated");
  app.add_option("--rate.constant", config.rate.constant);
  app.add_option("--rate.slope", config.rate.slope);
  app.add_option("--rate.hill_n", config.rate.hill_n);
  app.add_option("--rate.hill_a0", config.rate.hill_a0);
  app.add_option("--rate.table", config.rate.table)->expected(-1);
  app.add_option("--rate.tail", config.rate.tail);

  app.add_option("--burst.kind", config.burst.kind,
                 "deterministic | uniform | poisson | geometric | binomial");
  app.add_option("--burst.q0", config.burst.q0);
  app.add_option("--burst.lo", config.burst.lo);
  app.add_option("--burst.hi", config.burst.hi);
  app.add_option("--burst.lambda", config.burst.lambda);
  app.add_option("--burst.p", config.burst.p);
  app.add_option("--burst.m_n", config.burst.m_n);
  app.add_option("--burst.n", config.burst.n);

  app.add_option("--sweep.lambda_min", config.lambda_min);
  app.add_option("--sweep.lambda_max", config.lambda_max);
  app.add_option("--sweep.lambda_points", config.lambda_points);
  app.add_flag("--sweep.lambda_log,!--sweep.lambda_linear", config.lambda_log);
  app.add_option("--sweep.lambda_list", config.lambda_list, "Explicit E[A] axis")->expected(-1);

  app.add_option("--grid.gamma_b_min", config.gamma_b_min);
  app.add_option("--grid.gamma_b_max", config.gamma_b_max);
  app.add_option("--grid.gamma_b_points", config.gamma_b_points);

  app.add_option("--series.order", config.series_order);

  app.add_option("--ssa.n_traj", config.n_traj);
  app.add_option("--ssa.t_sample", config.t_sample);
  app.add_option("--ssa.t_burn", config.t_burn, "Negative: 10 / slowest decay rate");
  app.add_option("--ssa.sample_dt", config.sample_dt, "Nonpositive: 0.5 / fastest decay rate");

  app.add_option("--cme.max_states", config.cme_max_states);
  app.add_option("--cme.b_mass_tol", config.cme_b_mass_tol);

  app.add_option("--methods", config.methods, "From: bound series lna ssa cme")
      ->delimiter(',')
      ->expected(-1);
  app.add_option("--seed", config.seed, "Master seed for all stochastic runs");
  app.add_option("--rel-tol", config.rel_tol, "Relative tolerance of Poisson expectations");
  app.add_option("--out", config.out_dir, "Output directory");
  app.add_option("--lambda", config.report_lambda, "E[A] for the report subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Stationary moments of a two-species bursty birth-death network:\n"
      "series variance bound, covariance, linear-noise baseline, exact\n"
      "simulation and a truncated master-equation oracle."};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file (INI sections matching the option groups)");

  bursty::RunConfig config;
  bind_options(app, config);

  CLI::App* cmd_report = app.add_subcommand("report", "Single-point moment report (JSON)");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "Sweep over E[A] at fixed gamma_B (CSV)");
  CLI::App* cmd_grid =
      app.add_subcommand("grid", "Relative-error grid over (gamma_B, E[A]) (CSV)");
  CLI::App* cmd_validate = app.add_subcommand("validate", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_report->parsed()) {
      std::cout << bursty::run_report(config).dump(2) << '\n';
    } else if (cmd_sweep->parsed()) {
      std::cout << bursty::write_sweep(config) << '\n';
    } else if (cmd_grid->parsed()) {
      std::cout << bursty::write_grid(config) << '\n';
    } else if (cmd_validate->parsed()) {
      if (!bursty::run_validate(std::cout)) return 3;
    }
  } catch (const bursty::InvalidParam& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const bursty::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
