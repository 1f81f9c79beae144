#pragma once

#include <cstdint>
#include <vector>

#include "bursty/numerics.hpp"
#include "bursty/rate_function.hpp"

namespace bursty {

inline constexpr int kMaxExpansionOrder = 30;

// psi_n(a) = sum_{k=0}^{n} C(n,k) (-r)^k (a)_{n-k}, the shifted-Charlier
// basis orthogonal under Poisson(r) when r is the Poisson mean:
// E[psi_n psi_m] = n! r^n delta_{nm}. Binomial sum with exact binomials;
// orders above kMaxExpansionOrder are outside the validated range.
template <class Scalar>
Scalar psi_in(int n, std::int64_t a, Scalar r) {
  if (n < 0 || n > kMaxExpansionOrder)
    throw InvalidParam("psi: order outside validated range 0..30");
  // Falling factorials (a)_0..(a)_n by the incremental product.
  Scalar ff[kMaxExpansionOrder + 1];
  ff[0] = Scalar(1);
  for (int j = 1; j <= n; ++j) ff[j] = ff[j - 1] * static_cast<Scalar>(a - (j - 1));
  Scalar sum(0);
  Scalar rk(1);  // (-r)^k
  for (int k = 0; k <= n; ++k) {
    sum += static_cast<Scalar>(binomial(n, k)) * rk * ff[n - k];
    rk *= -r;
  }
  return sum;
}

inline double psi(int n, std::int64_t a, double r) { return psi_in<double>(n, a, r); }

// |psi_n(a)| <= (a + r)^n <= (1+r)^n (1+a)^n.
GrowthClass psi_growth(int n, double r);

enum class SigmaRoute { ForwardDifference, PoissonProjection };

struct DifferenceSigma {
  double value = 0.0;
  // |last nonzero term| relative to |partial sum|; 0 when the series
  // terminated exactly (polynomial rates).
  double last_term_rel = 0.0;
  int k_used = 0;
};

// sigma_n by the Newton-series route:
// sigma_n = sum_{k>=n} C(k,n) Delta^k[R](0) / k! * r^{k-n}, summed to k_max.
// Throws Unstable after five consecutive growing terms (alternating
// forward differences blow up for non-polynomial rates).
DifferenceSigma sigma_by_difference_report(const RateFunction& f, int n, double r, int k_max);
double sigma_by_difference(const RateFunction& f, int n, double r, int k_max);

// sigma_n by the orthogonal projection route:
// sigma_n = E_P[psi_n(A) R(A)] / (n! lambda^n), evaluated with quad
// accumulation so the alternating psi sums keep full double accuracy.
double sigma_by_projection(const RateFunction& f, int n, PoissonMean mean,
                           double rel_tol = 1e-12);

// Truncated expansion R(a) ~= sum_n coeffs[n] psi_n(a) about r = E_P[A].
struct CharlierExpansion {
  double r = 0.0;
  std::vector<double> coeffs;
  SigmaRoute route = SigmaRoute::PoissonProjection;
  // Weight sigma_N^2 N! r^N of the last computed term relative to the
  // accumulated weight sum; the series-variance tail estimate.
  double tail_estimate = 0.0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Projection-route expansion up to max_order with early stop: once
// sigma_n^2 n! lambda^n stays below rel_tol times the accumulated weight
// for two consecutive orders the series is considered resolved.
CharlierExpansion build_expansion(const RateFunction& f, PoissonMean mean, int max_order = 20,
                                  double rel_tol = 1e-12, bool early_stop = true);

double reconstruct(const CharlierExpansion& expansion, std::int64_t a);

}  // namespace bursty
