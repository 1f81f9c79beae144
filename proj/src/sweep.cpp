#include "bursty/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bursty/analytics.hpp"
#include "bursty/charlier.hpp"
#include "bursty/cme.hpp"
#include "bursty/lna.hpp"
#include "bursty/ssa.hpp"

namespace bursty {

RateFunction RateSpec::build() const {
  if (kind == "constant") return RateFunction::constant(constant);
  if (kind == "linear") return RateFunction::linear(slope);
  if (kind == "hill") return RateFunction::hill(hill_n, hill_a0);
  if (kind == "tabulated") return RateFunction::tabulated(table, tail);
  throw InvalidParam("RateSpec: unknown kind '" + kind + "'");
}

BurstDistribution BurstSpec::build() const {
  if (kind == "deterministic") return BurstDistribution::deterministic(q0);
  if (kind == "uniform") return BurstDistribution::uniform(lo, hi);
  if (kind == "poisson") return BurstDistribution::trunc_shift_poisson(lambda, m_n);
  if (kind == "geometric") return BurstDistribution::trunc_geometric(p, m_n);
  if (kind == "binomial") return BurstDistribution::shifted_binomial(n, p);
  throw InvalidParam("BurstSpec: unknown kind '" + kind + "'");
}

bool RunConfig::wants(const std::string& method) const {
  for (const auto& m : methods)
    if (m == method) return true;
  return false;
}

SystemParams RunConfig::make_params(double lambda, double gamma_b) const {
  if (!(lambda > 0.0)) throw InvalidParam("RunConfig: lambda must be positive");
  return {birth_rate, birth_rate / lambda, gamma_b, rate.build(), burst.build()};
}

std::vector<double> lambda_axis(const RunConfig& config) {
  if (!config.lambda_list.empty()) return config.lambda_list;
  if (config.lambda_points < 1) throw InvalidParam("RunConfig: lambda_points must be >= 1");
  std::vector<double> axis;
  axis.reserve(static_cast<size_t>(config.lambda_points));
  if (config.lambda_points == 1) {
    axis.push_back(config.lambda_min);
    return axis;
  }
  for (int i = 0; i < config.lambda_points; ++i) {
    const double f = static_cast<double>(i) / (config.lambda_points - 1);
    axis.push_back(config.lambda_log
                       ? std::exp(std::log(config.lambda_min) +
                                  f * (std::log(config.lambda_max) - std::log(config.lambda_min)))
                       : config.lambda_min + f * (config.lambda_max - config.lambda_min));
  }
  return axis;
}

std::vector<double> gamma_b_axis(const RunConfig& config) {
  if (config.gamma_b_points < 1) throw InvalidParam("RunConfig: gamma_b_points must be >= 1");
  std::vector<double> axis;
  axis.reserve(static_cast<size_t>(config.gamma_b_points));
  if (config.gamma_b_points == 1) {
    axis.push_back(config.gamma_b_min);
    return axis;
  }
  for (int i = 0; i < config.gamma_b_points; ++i) {
    const double f = static_cast<double>(i) / (config.gamma_b_points - 1);
    axis.push_back(config.gamma_b_min + f * (config.gamma_b_max - config.gamma_b_min));
  }
  return axis;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) { return v ? format_value(*v) : "NA"; }

SsaConfig ssa_config_for(const RunConfig& config, const SystemParams& params,
                         std::uint64_t point_index, int n_threads) {
  SsaConfig ssa = SsaConfig::with_defaults(params, config.n_traj, config.t_sample,
                                           substream_seed(config.seed, point_index));
  if (config.t_burn >= 0.0) ssa.t_burn = config.t_burn;
  if (config.sample_dt > 0.0) ssa.sample_dt = config.sample_dt;
  ssa.n_threads = n_threads;
  return ssa;
}

struct PointResult {
  double lambda = 0.0;
  double gamma_b = 0.0;
  std::optional<double> bound, series, lna, ssa_var, ssa_se, cme_var, cme_cov, cov, mean_b_val;
  std::optional<double> ssa_mean_b, ssa_cov, ssa_cov_se, ssa_mean_b_se;
  nlohmann::json notes = nlohmann::json::object();
};

PointResult evaluate_point(const RunConfig& config, double lambda, double gamma_b,
                           std::uint64_t point_index, int ssa_threads) {
  PointResult result;
  result.lambda = lambda;
  result.gamma_b = gamma_b;
  const SystemParams params = config.make_params(lambda, gamma_b);

  const auto guarded = [&result](const char* method, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      result.notes[method] = e.what();
    }
  };

  if (config.wants("bound"))
    guarded("bound", [&] { result.bound = variance_bound(params, config.rel_tol); });
  if (config.wants("series"))
    guarded("series", [&] {
      result.series = variance_series(params, config.series_order, config.rel_tol);
    });
  if (config.wants("lna")) guarded("lna", [&] { result.lna = lna_variance_b(params); });
  guarded("cov", [&] { result.cov = covariance_ab(params, config.rel_tol); });
  guarded("mean_b", [&] { result.mean_b_val = mean_b(params, config.rel_tol); });

  if (config.wants("ssa")) {
    guarded("ssa", [&] {
      const EnsembleStats stats =
          estimate_stationary(params, ssa_config_for(config, params, point_index, ssa_threads));
      result.ssa_var = stats.var_b;
      result.ssa_se = stats.se_var_b;
      result.ssa_mean_b = stats.mean_b;
      result.ssa_mean_b_se = stats.se_mean_b;
      result.ssa_cov = stats.cov_ab;
      result.ssa_cov_se = stats.se_cov_ab;
    });
  }
  if (config.wants("cme")) {
    guarded("cme", [&] {
      const CmeGrid grid = default_grid(params, config.rel_tol);
      const std::int64_t states = (grid.a_max + 1) * (grid.b_max + 1);
      if (states > config.cme_max_states) {
        result.notes["cme"] = "grid of " + std::to_string(states) + " states above cap";
        return;
      }
      const TruncatedCme cme =
          solve_stationary(params, grid.a_max, grid.b_max, config.cme_b_mass_tol);
      const CmeMoments m = moments(cme);
      result.cme_var = m.var_b;
      result.cme_cov = m.cov_ab;
      result.notes["cme_grid"] = {grid.a_max, grid.b_max};
      result.notes["cme_mass_defect"] = cme.mass_defect;
    });
  }
  return result;
}

std::vector<PointResult> evaluate_points(const RunConfig& config,
                                         const std::vector<std::pair<double, double>>& points) {
  std::vector<PointResult> results(points.size());
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<size_t>(points.size(), static_cast<size_t>(hw)));
  const int ssa_threads = workers > 1 ? 1 : hw;

  std::vector<std::future<void>> futures;
  futures.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (size_t i = static_cast<size_t>(w); i < points.size(); i += static_cast<size_t>(workers))
        results[i] = evaluate_point(config, points[i].first, points[i].second,
                                    static_cast<std::uint64_t>(i), ssa_threads);
    }));
  }
  for (auto& f : futures) f.get();
  return results;
}

nlohmann::json config_metadata(const RunConfig& config) {
  nlohmann::json meta;
  meta["birth_rate"] = config.birth_rate;
  meta["rate"] = config.rate.build().describe();
  const BurstDistribution burst = config.burst.build();
  meta["burst"] = burst.describe();
  meta["burst_support"] = {burst.q_min(), burst.q_max()};
  meta["burst_mean"] = burst.mean();
  meta["burst_second_moment"] = burst.second_moment();
  if (burst.kind() == BurstDistribution::Kind::ShiftedBinomial)
    meta["burst_shift_convention"] = "q = 1 + binomial draw keeps the support positive";
  meta["series_order"] = config.series_order;
  meta["rel_tol"] = config.rel_tol;
  meta["seed"] = config.seed;
  meta["methods"] = config.methods;
  meta["ssa"] = {{"n_traj", config.n_traj},
                 {"t_sample", config.t_sample},
                 {"t_burn", config.t_burn},
                 {"sample_dt", config.sample_dt}};
  meta["cme_max_states"] = config.cme_max_states;
  return meta;
}

}  // namespace

void run_sweep(const RunConfig& config, std::ostream& csv, nlohmann::json& meta) {
  const std::vector<double> axis = lambda_axis(config);
  std::vector<std::pair<double, double>> points;
  points.reserve(axis.size());
  for (double lam : axis) points.emplace_back(lam, config.decay_b);
  const std::vector<PointResult> results = evaluate_points(config, points);

  csv << "MeanA,BoundVarB,SeriesVarB,VarFromLNA,VarB_SSA,VarB_SSA_SE,VarB_CME,CovAB,MeanB\n";
  meta = config_metadata(config);
  meta["gamma_b"] = config.decay_b;
  meta["lambda_axis"] = axis;
  nlohmann::json cells = nlohmann::json::array();
  for (const PointResult& r : results) {
    csv << format_value(r.lambda) << ',' << cell(r.bound) << ',' << cell(r.series) << ','
        << cell(r.lna) << ',' << cell(r.ssa_var) << ',' << cell(r.ssa_se) << ','
        << cell(r.cme_var) << ',' << cell(r.cov) << ',' << cell(r.mean_b_val) << '\n';
    cells.push_back(r.notes);
  }
  meta["cells"] = cells;
}

void run_grid(const RunConfig& config, std::ostream& csv, nlohmann::json& meta) {
  const std::vector<double> lambdas = lambda_axis(config);
  const std::vector<double> gammas = gamma_b_axis(config);
  std::vector<std::pair<double, double>> points;
  points.reserve(lambdas.size() * gammas.size());
  for (double lam : lambdas)
    for (double gb : gammas) points.emplace_back(lam, gb);
  const std::vector<PointResult> results = evaluate_points(config, points);

  csv << "gamma_B,MeanA,RelErrBoundPct,RelErrLnaPct\n";
  meta = config_metadata(config);
  meta["lambda_axis"] = lambdas;
  meta["gamma_b_axis"] = gammas;
  nlohmann::json cells = nlohmann::json::array();
  for (const PointResult& r : results) {
    nlohmann::json note = r.notes;
    std::optional<double> reference;
    if (r.cme_var) {
      reference = r.cme_var;
      note["reference"] = "cme";
    } else if (r.ssa_var) {
      reference = r.ssa_var;
      note["reference"] = "ssa";
    } else {
      note["reference"] = "none";
    }
    std::optional<double> err_bound, err_lna;
    if (reference && *reference > 0.0) {
      if (r.bound) err_bound = 100.0 * std::fabs(*reference - *r.bound) / *reference;
      if (r.lna) err_lna = 100.0 * std::fabs(*reference - *r.lna) / *reference;
    }
    csv << format_value(r.gamma_b) << ',' << format_value(r.lambda) << ',' << cell(err_bound)
        << ',' << cell(err_lna) << '\n';
    cells.push_back(note);
  }
  meta["cells"] = cells;
}

nlohmann::json run_report(const RunConfig& config) {
  const SystemParams params = config.make_params(config.report_lambda, config.decay_b);
  nlohmann::json out;
  out["config"] = config_metadata(config);
  out["lambda"] = config.report_lambda;
  out["gamma_b"] = config.decay_b;

  const MomentReport report = moment_report(params, config.series_order, config.rel_tol);
  out["analytics"] = report;

  if (config.wants("ssa")) {
    const EnsembleStats stats = estimate_stationary(params, ssa_config_for(config, params, 0, 0));
    out["ssa"] = {{"n_traj", stats.n_traj},       {"n_samples", stats.n_samples},
                  {"mean_a", stats.mean_a},       {"se_mean_a", stats.se_mean_a},
                  {"var_a", stats.var_a},         {"se_var_a", stats.se_var_a},
                  {"mean_b", stats.mean_b},       {"se_mean_b", stats.se_mean_b},
                  {"var_b", stats.var_b},         {"se_var_b", stats.se_var_b},
                  {"cov_ab", stats.cov_ab},       {"se_cov_ab", stats.se_cov_ab},
                  {"corr_ab", stats.corr_ab},     {"se_corr_ab", stats.se_corr_ab}};
  }
  if (config.wants("cme")) {
    const CmeGrid grid = default_grid(params, config.rel_tol);
    const std::int64_t states = (grid.a_max + 1) * (grid.b_max + 1);
    if (states <= config.cme_max_states) {
      const TruncatedCme cme =
          solve_stationary(params, grid.a_max, grid.b_max, config.cme_b_mass_tol);
      const CmeMoments m = moments(cme);
      out["cme"] = {{"a_max", cme.a_max},           {"b_max", cme.b_max},
                    {"mean_a", m.mean_a},           {"var_a", m.var_a},
                    {"mean_b", m.mean_b},           {"var_b", m.var_b},
                    {"cov_ab", m.cov_ab},           {"mass_defect", cme.mass_defect},
                    {"residual", cme.residual}};
    } else {
      out["cme"] = {{"skipped", "grid of " + std::to_string(states) + " states above cap"}};
    }
  }
  return out;
}

namespace {

void write_meta(const std::filesystem::path& path, const nlohmann::json& meta) {
  std::ofstream os(path);
  os << meta.dump(2) << '\n';
}

}  // namespace

std::string write_sweep(const RunConfig& config) {
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csv_path = dir / "sweep.csv";

  std::ostringstream csv;
  nlohmann::json meta;
  run_sweep(config, csv, meta);
  std::ofstream(csv_path) << csv.str();
  write_meta(dir / "sweep.meta.json", meta);

  std::ofstream gp(dir / "sweep.gp");
  gp << "set datafile separator ','\n"
     << "set logscale x\n"
     << "set xlabel 'E[A]'\n"
     << "set ylabel 'var(B)'\n"
     << "plot 'sweep.csv' using 1:2 with lines title 'bound', \\\n"
     << "     'sweep.csv' using 1:3 with lines title 'series', \\\n"
     << "     'sweep.csv' using 1:4 with lines title 'LNA', \\\n"
     << "     'sweep.csv' using 1:5 with points title 'SSA', \\\n"
     << "     'sweep.csv' using 1:7 with points title 'CME'\n";
  return csv_path.string();
}

std::string write_grid(const RunConfig& config) {
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csv_path = dir / "grid.csv";

  std::ostringstream csv;
  nlohmann::json meta;
  run_grid(config, csv, meta);
  std::ofstream(csv_path) << csv.str();
  write_meta(dir / "grid.meta.json", meta);

  std::ofstream gp(dir / "grid.gp");
  gp << "set datafile separator ','\n"
     << "set xlabel 'gamma_B'\n"
     << "set ylabel 'E[A]'\n"
     << "set view map\n"
     << "splot 'grid.csv' using 1:2:3 with points palette title 'bound err %', \\\n"
     << "      'grid.csv' using 1:2:4 with points palette title 'LNA err %'\n";
  return csv_path.string();
}

bool run_validate(std::ostream& os) {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok) {
    os << (ok ? "PASS" : "FAIL") << "  " << name << '\n';
    if (!ok) ++failures;
  };
  const auto rel_close = [](double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
  };

  try {
    // Orthogonality of the psi basis under the Poisson weight.
    bool orth = true;
    for (double lam : {0.5, 2.0, 10.0}) {
      for (int n = 0; n <= 6 && orth; ++n) {
        for (int m = 0; m <= 6 && orth; ++m) {
          const quad r = static_cast<quad>(lam);
          const auto integrand = [&](std::int64_t a) -> quad {
            return psi_in<quad>(n, a, r) * psi_in<quad>(m, a, r);
          };
          const GrowthClass growth = psi_growth(n, lam) * psi_growth(m, lam);
          const double value = static_cast<double>(
              poisson_expectation_in<quad>(integrand, growth, lam, 1e-12));
          double expected = 0.0;
          if (n == m) {
            expected = 1.0;
            for (int i = 1; i <= n; ++i) expected *= i * lam;
          }
          orth = n == m ? rel_close(value, expected, 1e-8) : std::fabs(value) < 1e-10;
        }
      }
    }
    check("psi orthogonality (n,m <= 6)", orth);

    // Both sigma routes on a cubic rate.
    const RateFunction cubic = RateFunction::tabulated(
        [] {
          std::vector<double> v;
          for (int a = 0; a <= 400; ++a)
            v.push_back(0.3 + 0.7 * a + 0.2 * a * a + 0.05 * a * a * a);
          return v;
        }(),
        0.3 + 0.7 * 400 + 0.2 * 400.0 * 400 + 0.05 * 400.0 * 400 * 400);
    bool routes = true;
    for (int n = 0; n <= 3; ++n) {
      const double diff = sigma_by_difference(cubic, n, 5.0, 20);
      const double proj = sigma_by_projection(cubic, n, PoissonMean(5.0), 1e-12);
      routes = routes && rel_close(diff, proj, 1e-8);
    }
    check("sigma route agreement (cubic rate)", routes);

    // Linear rates: bound, series and the Lyapunov solve coincide.
    const SystemParams linear(1.0, 0.25, 1.0, RateFunction::linear(1.0),
                              BurstDistribution::uniform(1, 4));
    const double bound = variance_bound(linear);
    const double series = variance_series(linear, 10);
    const double exact = variance_linear_exact(linear);
    const double lyap = lna_variance_b(linear);
    check("linear collapse (bound = series = exact = lyapunov)",
          rel_close(bound, series, 1e-10) && rel_close(bound, exact, 1e-10) &&
              rel_close(bound, lyap, 1e-10));

    // Burst moments recomputed from the stored pmf.
    const BurstDistribution geom = BurstDistribution::trunc_geometric(0.5, 21);
    long double m1 = 0.0L, m2 = 0.0L;
    for (std::int64_t q = geom.q_min(); q <= geom.q_max(); ++q) {
      m1 += static_cast<long double>(q) * static_cast<long double>(geom.probability(q));
      m2 += static_cast<long double>(q) * static_cast<long double>(q) *
            static_cast<long double>(geom.probability(q));
    }
    check("burst moments consistent with pmf",
          std::fabs(static_cast<double>(m1) - geom.mean()) <= 1e-14 &&
              std::fabs(static_cast<double>(m2) - geom.second_moment()) <= 1e-14);

    // Master-equation oracle reproduces the linear closed form.
    const SystemParams linear4(4.0, 1.0, 1.0, RateFunction::linear(1.0),
                               BurstDistribution::deterministic(1));
    const CmeMoments m = moments(solve_stationary(linear4, 40, 80));
    check("oracle variance matches linear closed form",
          std::fabs(m.var_b - 6.0) < 1e-6);
  } catch (const Error& e) {
    os << "FAIL  exception: " << e.what() << '\n';
    ++failures;
  }

  os << (failures == 0 ? "all checks passed\n" : "some checks failed\n");
  return failures == 0;
}

}  // namespace bursty
