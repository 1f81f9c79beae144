#pragma once

#include "bursty/burst.hpp"
#include "bursty/numerics.hpp"
#include "bursty/rate_function.hpp"

namespace bursty {

// Full model of the two-species network: A born at constant rate and
// degraded linearly, B born in bursts of size Q at rate R(A) and degraded
// linearly. The Poisson mean of A is always derived as birth_rate/decay_a.
struct SystemParams {
  double birth_rate;  // production rate of A (1/time)
  double decay_a;     // per-molecule death rate of A (1/time)
  double decay_b;     // per-molecule death rate of B (1/time)
  RateFunction rate;
  BurstDistribution burst;

  SystemParams(double birth_rate_, double decay_a_, double decay_b_, RateFunction rate_,
               BurstDistribution burst_);

  double lambda() const { return birth_rate / decay_a; }
  PoissonMean poisson_mean() const { return PoissonMean(lambda()); }
};

}  // namespace bursty
