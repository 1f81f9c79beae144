#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "bursty/errors.hpp"
#include "bursty/rate_function.hpp"
#include "bursty/scalar.hpp"

namespace bursty {

// Mean of the Poisson law of the upstream species, lambda = F / gamma_A.
struct PoissonMean {
  double lambda;
  explicit PoissonMean(double l) : lambda(l) {
    if (!(l > 0.0)) throw InvalidParam("PoissonMean: lambda must be positive");
  }
};

// (a)_k = a (a-1) ... (a-k+1); 1 for k = 0, 0 whenever 0 <= a < k.
template <class Scalar = double>
Scalar falling_factorial(std::int64_t a, std::int64_t k) {
  if (k < 0 || a < 0) throw InvalidParam("falling_factorial: negative argument");
  Scalar prod(1);
  for (std::int64_t n = 0; n < k; ++n) prod *= static_cast<Scalar>(a - n);
  return prod;
}

// Exact binomial coefficient; exact in uint64 for n <= 62.
std::uint64_t binomial(int n, int k);

// k-th forward difference at zero: sum_j (-1)^(k-j) C(k,j) f(j).
// Throws Overflow for k > 60 where the binomial weights leave the exactly
// representable range.
double forward_difference_at_zero(const RateFunction& f, int k);

inline constexpr std::int64_t kMaxPoissonTerms = 10'000'000;

// Expectation of f under Poisson(lambda), truncated once a Chernoff-style
// tail bound certifies the discarded mass cannot move the result by more
// than rel_tol (or by more than the accumulation roundoff floor, whichever
// is larger). The truncation point a_max = ceil(lambda + c sqrt(lambda) + c^2)
// grows with c until the bound holds. Probabilities follow the forward
// recurrence p_{a+1} = p_a lambda / (a+1) from p_0 = e^{-lambda} in the
// accumulation scalar.
template <class Scalar, class F>
Scalar poisson_expectation_in(F&& f, const GrowthClass& growth, double lambda,
                              double rel_tol, std::int64_t* a_max_used = nullptr) {
  if (!(lambda > 0.0)) throw InvalidParam("poisson_expectation: lambda must be positive");
  if (!(rel_tol > 0.0)) throw InvalidParam("poisson_expectation: rel_tol must be positive");
  if (growth.is_unknown())
    throw NonConvergent("poisson_expectation: Unknown growth class admits no tail bound");

  const Scalar lam = static_cast<Scalar>(lambda);
  Scalar prob = fp::exp(-lam);
  Scalar sum(0);
  Scalar abs_sum(0);
  std::int64_t a = 0;
  const double sqrt_lambda = std::sqrt(lambda);

  for (int c = 1; c <= 4096; ++c) {
    const double target = lambda + c * sqrt_lambda + double(c) * double(c);
    const auto a_max = static_cast<std::int64_t>(std::ceil(target));
    if (a_max > kMaxPoissonTerms)
      throw NonConvergent("poisson_expectation: truncation point exceeds term cap");

    for (; a <= a_max; ++a) {
      const Scalar term = f(a) * prob;
      sum += term;
      abs_sum += fp::abs(term);
      prob *= lam / static_cast<Scalar>(a + 1);
    }

    // Tail sum_{j > a_max} envelope(j) p_j <= envelope(a') p_a' / (1 - q)
    // at a' = a_max + 1, with p_a' <= e^{-lambda} (e lambda / a')^{a'} and
    // term ratio q = (lambda / a') e^{degree / a'} < 1/2 required.
    const double ap = static_cast<double>(a_max + 1);
    const double ratio = lambda / ap * std::exp(growth.degree / ap);
    if (ratio >= 0.5) continue;
    const double log_bound = -lambda + ap * (1.0 + std::log(lambda) - std::log(ap)) +
                             growth.log_envelope(ap) - std::log1p(-ratio);

    const double floor_rel = rel_tol * std::fabs(static_cast<double>(sum));
    const double floor_round =
        static_cast<double>(fp::epsilon<Scalar>()) * static_cast<double>(abs_sum);
    const double floor_total = std::max(floor_rel, floor_round);

    const bool certified =
        floor_total > 0.0 ? log_bound <= std::log(floor_total)
                          : log_bound < std::log(std::numeric_limits<double>::denorm_min());
    if (certified) {
      if (a_max_used) *a_max_used = a_max;
      return sum;
    }
  }
  throw NonConvergent("poisson_expectation: tail bound did not certify");
}

// Double-precision surface: long double accumulation internally.
double poisson_expectation(const RateFunction& f, PoissonMean mean,
                           double rel_tol = 1e-12, std::int64_t* a_max_used = nullptr);

}  // namespace bursty
