#include "bursty/analytics.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "bursty/lna.hpp"

namespace bursty {

namespace {

double sigma0(const SystemParams& params, double rel_tol) {
  return sigma_by_projection(params.rate, 0, params.poisson_mean(), rel_tol);
}

double sigma1(const SystemParams& params, double rel_tol) {
  return sigma_by_projection(params.rate, 1, params.poisson_mean(), rel_tol);
}

double bound_from_sigmas(const SystemParams& params, double s0, double s1) {
  const double eq = params.burst.mean();
  const double eq2 = params.burst.second_moment();
  const double ga = params.decay_a;
  const double gb = params.decay_b;
  const double lam = params.lambda();
  return (s0 * (ga + gb) * (eq2 + eq) + 2.0 * s1 * s1 * eq * eq * lam) / (2.0 * gb * (gb + ga));
}

}  // namespace

double mean_b(const SystemParams& params, double rel_tol) {
  return params.burst.mean() * sigma0(params, rel_tol) / params.decay_b;
}

double variance_bound(const SystemParams& params, double rel_tol) {
  return bound_from_sigmas(params, sigma0(params, rel_tol), sigma1(params, rel_tol));
}

SeriesVariance variance_series_report(const SystemParams& params, int order, double rel_tol) {
  if (order < 1) throw InvalidParam("variance_series: order must be >= 1");
  if (order > kMaxExpansionOrder)
    throw InvalidParam("variance_series: order outside validated range 1..30");

  const double eq = params.burst.mean();
  const double eq2 = params.burst.second_moment();
  const double ga = params.decay_a;
  const double gb = params.decay_b;
  const double lam = params.lambda();
  const PoissonMean mean = params.poisson_mean();

  const double s0 = sigma0(params, rel_tol);

  // var(B) = [ (E[Q^2]-E[Q]) sigma_0
  //            + (2 E[Q]^2 / gB) sum_{n>=1} gB sigma_n^2 n! lambda^n / (n gA + gB) ]
  //          / (2 gB)  +  E[Q] sigma_0 / gB
  long double series = 0.0L;
  double last_term = 0.0;
  double log_weight = 0.0;  // log(n! lambda^n)
  for (int n = 1; n <= order; ++n) {
    log_weight += std::log(static_cast<double>(n) * lam);
    const double sn = sigma_by_projection(params.rate, n, mean, rel_tol);
    const double term =
        gb * sn * sn * std::exp(log_weight) / (static_cast<double>(n) * ga + gb);
    series += static_cast<long double>(term);
    last_term = term;
  }

  SeriesVariance out;
  out.order = order;
  const long double inner =
      static_cast<long double>((eq2 - eq) * s0) +
      static_cast<long double>(2.0 * eq * eq / gb) * series;
  out.value = static_cast<double>(inner / (2.0L * static_cast<long double>(gb)) +
                                  static_cast<long double>(eq * s0 / gb));
  // Report the last term as it enters the variance expression.
  out.last_term = 2.0 * eq * eq / gb * last_term / (2.0 * gb);
  return out;
}

double variance_series(const SystemParams& params, int order, double rel_tol) {
  return variance_series_report(params, order, rel_tol).value;
}

double covariance_ab(const SystemParams& params, double rel_tol) {
  return params.burst.mean() * sigma1(params, rel_tol) * params.lambda() /
         (params.decay_a + params.decay_b);
}

double correlation_lower_bound(const SystemParams& params, double rel_tol) {
  const double s0 = sigma0(params, rel_tol);
  const double s1 = sigma1(params, rel_tol);
  const double bound = bound_from_sigmas(params, s0, s1);
  if (!(bound > 0.0))
    throw DegenerateVariance("correlation_lower_bound: variance bound is zero");
  const double cov =
      params.burst.mean() * s1 * params.lambda() / (params.decay_a + params.decay_b);
  return cov / (std::sqrt(params.lambda()) * std::sqrt(bound));
}

double variance_linear_exact(const SystemParams& params) {
  if (params.rate.kind() != RateFunction::Kind::Linear)
    throw WrongRateKind("variance_linear_exact: rate must be linear");
  const double rc = params.rate.slope();
  const double eq = params.burst.mean();
  const double eq2 = params.burst.second_moment();
  const double ga = params.decay_a;
  const double gb = params.decay_b;
  const double lam = params.lambda();
  return rc * lam * ((ga + gb) * (eq2 + eq) + 2.0 * rc * eq * eq) / (2.0 * gb * (ga + gb));
}

MomentReport moment_report(const SystemParams& params, int max_order, double rel_tol) {
  MomentReport report;
  report.rel_tol = rel_tol;
  report.mean_a = params.lambda();
  report.var_a = params.lambda();
  report.rate = params.rate.describe();
  report.burst = params.burst.describe();

  const CharlierExpansion expansion =
      build_expansion(params.rate, params.poisson_mean(), max_order, rel_tol);
  report.sigma0 = expansion.coeffs[0];
  report.sigma1 = expansion.coeffs.size() > 1 ? expansion.coeffs[1] : 0.0;
  report.sigma1_sign = (report.sigma1 > 0.0) - (report.sigma1 < 0.0);

  report.mean_b = params.burst.mean() * report.sigma0 / params.decay_b;
  report.var_bound = bound_from_sigmas(params, report.sigma0, report.sigma1);

  const int order = std::max(expansion.order(), 1);
  const SeriesVariance series = variance_series_report(params, order, rel_tol);
  report.var_series = series.value;
  report.series_order = series.order;
  report.series_tail_estimate = expansion.tail_estimate;

  report.cov_ab = covariance_ab(params, rel_tol);
  if (report.var_bound > 0.0) {
    report.corr_lower_bound =
        report.cov_ab / (std::sqrt(params.lambda()) * std::sqrt(report.var_bound));
  }
  if (params.rate.kind() == RateFunction::Kind::Linear)
    report.var_linear_exact = variance_linear_exact(params);
  if (params.rate.differentiable()) report.lna_var_b = lna_variance_b(params);
  return report;
}

void to_json(nlohmann::json& j, const MomentReport& r) {
  j = nlohmann::json{{"mean_a", r.mean_a},
                     {"var_a", r.var_a},
                     {"mean_b", r.mean_b},
                     {"var_bound", r.var_bound},
                     {"var_series", r.var_series},
                     {"series_order", r.series_order},
                     {"series_tail_estimate", r.series_tail_estimate},
                     {"cov_ab", r.cov_ab},
                     {"corr_lower_bound", r.corr_lower_bound},
                     {"lna_var_b", r.lna_var_b},
                     {"sigma0", r.sigma0},
                     {"sigma1", r.sigma1},
                     {"sigma1_sign", r.sigma1_sign},
                     {"rel_tol", r.rel_tol},
                     {"rate", r.rate},
                     {"burst", r.burst}};
  if (r.var_linear_exact) j["var_linear_exact"] = *r.var_linear_exact;
}

}  // namespace bursty
