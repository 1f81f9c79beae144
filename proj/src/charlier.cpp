#include "bursty/charlier.hpp"

#include <cmath>

namespace bursty {

GrowthClass psi_growth(int n, double r) {
  if (n == 0) return GrowthClass::bounded(1.0);
  return GrowthClass::polynomial(n, std::pow(1.0 + r, n));
}

DifferenceSigma sigma_by_difference_report(const RateFunction& f, int n, double r, int k_max) {
  if (n < 0 || n > kMaxExpansionOrder)
    throw InvalidParam("sigma_by_difference: order outside validated range 0..30");
  if (k_max < n) throw InvalidParam("sigma_by_difference: k_max must be >= n");
  if (!(r > 0.0)) throw InvalidParam("sigma_by_difference: r must be positive");

  long double sum = 0.0L;
  long double last_abs = 0.0L;
  long double prev_abs = 0.0L;
  long double max_abs = 0.0L;
  int growth_streak = 0;
  int k_used = n;

  // C(k,n)/k! = 1/(n! (k-n)!); keep the reciprocal factorial incrementally.
  long double inv_nfact = 1.0L;
  for (int i = 2; i <= n; ++i) inv_nfact /= static_cast<long double>(i);
  long double tail_factor = inv_nfact;  // r^{k-n} / (k-n)! at current k
  const long double rl = static_cast<long double>(r);

  for (int k = n; k <= k_max; ++k) {
    const long double delta = static_cast<long double>(forward_difference_at_zero(f, k));
    const long double term = delta * tail_factor;
    sum += term;
    k_used = k;

    const long double mag = std::fabs(term);
    last_abs = mag;
    max_abs = std::max(max_abs, mag);
    growth_streak = (mag > 0.0L && mag > prev_abs) ? growth_streak + 1 : 0;
    prev_abs = mag;
    tail_factor *= rl / static_cast<long double>(k - n + 1);
  }

  // Growth while r^k/k! ramps up is normal; the failure signatures are terms
  // still growing at k_max, or intermediate terms so large that alternating
  // cancellation destroyed the sum.
  if (growth_streak >= 5)
    throw Unstable("sigma_by_difference: terms still growing after 5 consecutive orders at k_max");
  if (max_abs > 1e12L * std::max(std::fabs(sum), 1e-300L) && max_abs > 1.0L)
    throw Unstable("sigma_by_difference: alternating cancellation lost the sum");

  DifferenceSigma out;
  out.value = static_cast<double>(sum);
  out.k_used = k_used;
  const long double denom = std::max(std::fabs(sum), 1e-300L);
  out.last_term_rel = static_cast<double>(last_abs / denom);
  return out;
}

double sigma_by_difference(const RateFunction& f, int n, double r, int k_max) {
  return sigma_by_difference_report(f, n, r, k_max).value;
}

double sigma_by_projection(const RateFunction& f, int n, PoissonMean mean, double rel_tol) {
  if (n < 0 || n > kMaxExpansionOrder)
    throw InvalidParam("sigma_by_projection: order outside validated range 0..30");
  const quad r = static_cast<quad>(mean.lambda);
  const auto integrand = [&f, n, r](std::int64_t a) -> quad {
    return psi_in<quad>(n, a, r) * f.value<quad>(a);
  };
  const GrowthClass growth = psi_growth(n, mean.lambda) * f.growth();
  const quad expectation = poisson_expectation_in<quad>(integrand, growth, mean.lambda, rel_tol);

  quad denom(1);  // n! lambda^n
  for (int i = 1; i <= n; ++i) denom *= static_cast<quad>(i) * r;
  return static_cast<double>(expectation / denom);
}

CharlierExpansion build_expansion(const RateFunction& f, PoissonMean mean, int max_order,
                                  double rel_tol, bool early_stop) {
  if (max_order < 0 || max_order > kMaxExpansionOrder)
    throw InvalidParam("build_expansion: order outside validated range 0..30");

  CharlierExpansion expansion;
  expansion.r = mean.lambda;
  expansion.route = SigmaRoute::PoissonProjection;

  double weight_sum = 0.0;
  double log_weight = 0.0;  // log(n! lambda^n)
  int below_count = 0;
  double last_weight = 0.0;

  for (int n = 0; n <= max_order; ++n) {
    if (n >= 1) log_weight += std::log(static_cast<double>(n) * mean.lambda);
    const double sigma_n = sigma_by_projection(f, n, mean, rel_tol);
    expansion.coeffs.push_back(sigma_n);

    const double weight = sigma_n * sigma_n * std::exp(log_weight);
    weight_sum += weight;
    last_weight = weight;

    if (early_stop && n >= 2) {
      below_count = (weight < rel_tol * weight_sum) ? below_count + 1 : 0;
      if (below_count >= 2) break;
    }
  }
  expansion.tail_estimate = weight_sum > 0.0 ? last_weight / weight_sum : 0.0;
  return expansion;
}

double reconstruct(const CharlierExpansion& expansion, std::int64_t a) {
  long double sum = 0.0L;
  for (int n = 0; n < static_cast<int>(expansion.coeffs.size()); ++n) {
    sum += static_cast<long double>(expansion.coeffs[static_cast<size_t>(n)]) *
           static_cast<long double>(psi_in<long double>(n, a, static_cast<long double>(expansion.r)));
  }
  return static_cast<double>(sum);
}

}  // namespace bursty
