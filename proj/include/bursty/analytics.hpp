#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bursty/charlier.hpp"
#include "bursty/system.hpp"

namespace bursty {

// Stationary first two moments of B from the Newton-series machinery.
//
// mean_b        = E[Q] sigma_0 / gamma_B
// var_bound     = [sigma_0 (gA+gB)(E[Q^2]+E[Q]) + 2 sigma_1^2 E[Q]^2 lambda]
//                 / (2 gB (gA+gB))                       (hard lower bound)
// var_series(N) = full series with the sum over n truncated at N; equals the
//                 bound at N = 1 and for linear rates at every N.
// cov_ab        = E[Q] sigma_1 lambda / (gA + gB)        (exact, any rate)

double mean_b(const SystemParams& params, double rel_tol = 1e-12);
double variance_bound(const SystemParams& params, double rel_tol = 1e-12);

struct SeriesVariance {
  double value = 0.0;
  double last_term = 0.0;  // contribution of the n = N term
  int order = 0;
};

SeriesVariance variance_series_report(const SystemParams& params, int order,
                                      double rel_tol = 1e-12);
double variance_series(const SystemParams& params, int order, double rel_tol = 1e-12);

double covariance_ab(const SystemParams& params, double rel_tol = 1e-12);
// cov / (sqrt(var A) sqrt(var bound)); a lower bound on the correlation
// for nondecreasing rates (sigma_1 >= 0).
double correlation_lower_bound(const SystemParams& params, double rel_tol = 1e-12);

// Closed form for R(a) = slope * a where the bound is exact.
double variance_linear_exact(const SystemParams& params);

struct MomentReport {
  double mean_a = 0.0;
  double var_a = 0.0;
  double mean_b = 0.0;
  double var_bound = 0.0;
  double var_series = 0.0;
  int series_order = 0;
  double series_tail_estimate = 0.0;
  double cov_ab = 0.0;
  double corr_lower_bound = 0.0;
  std::optional<double> var_linear_exact;
  double lna_var_b = 0.0;
  double sigma0 = 0.0;
  double sigma1 = 0.0;
  int sigma1_sign = 0;  // the correlation bound is a lower bound only when >= 0
  double rel_tol = 0.0;
  std::string rate;
  std::string burst;
};

MomentReport moment_report(const SystemParams& params, int max_order = 20,
                           double rel_tol = 1e-12);

void to_json(nlohmann::json& j, const MomentReport& report);

}  // namespace bursty
