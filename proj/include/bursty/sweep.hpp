#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bursty/system.hpp"

namespace bursty {

struct RateSpec {
  std::string kind = "hill";
  double constant = 0.5;
  double slope = 1.0;
  double hill_n = 9.0;
  double hill_a0 = 100.0;
  std::vector<double> table;
  double tail = 0.0;

  RateFunction build() const;
};

struct BurstSpec {
  std::string kind = "uniform";
  std::int64_t q0 = 1;
  std::int64_t lo = 1;
  std::int64_t hi = 16;
  double lambda = 8.0;
  double p = 0.5;
  std::int64_t m_n = 21;
  std::int64_t n = 20;

  BurstDistribution build() const;
};

// Everything one experiment needs. Defaults reproduce the reference sweep:
// F = 1, gamma_B = 0.01, Hill(9, 100), Q ~ uniform{1..16}, 40 log-spaced
// mean-A values in [0.1, 200].
struct RunConfig {
  double birth_rate = 1.0;
  double decay_b = 0.01;
  RateSpec rate;
  BurstSpec burst;

  // Sweep axis: E[A] values; decay_a is derived as birth_rate / lambda.
  double lambda_min = 0.1;
  double lambda_max = 200.0;
  int lambda_points = 40;
  bool lambda_log = true;
  std::vector<double> lambda_list;  // explicit axis, overrides the generated one

  // Second axis for error grids.
  double gamma_b_min = 0.1;
  double gamma_b_max = 1.0;
  int gamma_b_points = 5;

  std::vector<std::string> methods = {"bound", "series", "lna", "ssa", "cme"};
  int series_order = 20;
  double rel_tol = 1e-12;

  int n_traj = 200;
  double t_sample = 500.0;
  double t_burn = -1.0;    // < 0: 10 / min(decay rate)
  double sample_dt = -1.0; // < 0: 0.5 / max(decay rate)

  std::int64_t cme_max_states = 200'000;
  double cme_b_mass_tol = 1e-8;

  std::uint64_t seed = 1;
  std::string out_dir = "out";
  double report_lambda = 100.0;

  bool wants(const std::string& method) const;
  SystemParams make_params(double lambda, double gamma_b) const;
};

std::vector<double> lambda_axis(const RunConfig& config);
std::vector<double> gamma_b_axis(const RunConfig& config);

// One sweep over E[A] at fixed gamma_B; CSV columns MeanA, BoundVarB,
// SeriesVarB, VarFromLNA, VarB_SSA, VarB_SSA_SE, VarB_CME, CovAB, MeanB.
// Cells that were not computed carry the marker NA; the metadata JSON
// records the per-cell reason.
void run_sweep(const RunConfig& config, std::ostream& csv, nlohmann::json& meta);

// Error grid over (gamma_B, E[A]); CSV columns gamma_B, MeanA,
// RelErrBoundPct, RelErrLnaPct against the oracle variance (master-equation
// solve when it fits the state cap, otherwise simulation; per-cell choice
// recorded in the metadata).
void run_grid(const RunConfig& config, std::ostream& csv, nlohmann::json& meta);

// Single-point report (moments, bound, series, covariance, correlation
// bound, linear-noise value) plus oracle and simulation statistics when
// requested.
nlohmann::json run_report(const RunConfig& config);

// Condensed invariant suite; prints one pass/fail line per check.
bool run_validate(std::ostream& os);

// File-writing wrappers: <name>.csv, <name>.meta.json and a gnuplot script
// next to them under config.out_dir.
std::string write_sweep(const RunConfig& config);
std::string write_grid(const RunConfig& config);

}  // namespace bursty
