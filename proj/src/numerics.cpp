#include "bursty/numerics.hpp"

namespace bursty {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 62) throw Overflow("binomial: n above exactly representable range");
  k = std::min(k, n - k);
  std::uint64_t value = 1;
  for (int i = 1; i <= k; ++i) {
    // Multiply-then-divide stays integral at every step.
    value = value * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return value;
}

double forward_difference_at_zero(const RateFunction& f, int k) {
  if (k < 0) throw InvalidParam("forward_difference_at_zero: negative order");
  if (k > 60) throw Overflow("forward_difference_at_zero: binomial weights overflow for k > 60");
  long double sum = 0.0L;
  for (int j = 0; j <= k; ++j) {
    const long double weight = static_cast<long double>(binomial(k, j));
    const long double value = static_cast<long double>(f(j));
    sum += (((k - j) % 2) ? -weight : weight) * value;
  }
  return static_cast<double>(sum);
}

double poisson_expectation(const RateFunction& f, PoissonMean mean, double rel_tol,
                           std::int64_t* a_max_used) {
  const auto integrand = [&f](std::int64_t a) -> long double {
    return static_cast<long double>(f(a));
  };
  return static_cast<double>(
      poisson_expectation_in<long double>(integrand, f.growth(), mean.lambda, rel_tol, a_max_used));
}

}  // namespace bursty
