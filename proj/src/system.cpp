#include "bursty/system.hpp"

#include <cmath>

namespace bursty {

SystemParams::SystemParams(double birth_rate_, double decay_a_, double decay_b_,
                           RateFunction rate_, BurstDistribution burst_)
    : birth_rate(birth_rate_),
      decay_a(decay_a_),
      decay_b(decay_b_),
      rate(std::move(rate_)),
      burst(std::move(burst_)) {
  if (!(birth_rate > 0.0)) throw InvalidParam("SystemParams: birth rate must be positive");
  if (!(decay_a > 0.0)) throw InvalidParam("SystemParams: decay_a must be positive");
  if (!(decay_b > 0.0)) throw InvalidParam("SystemParams: decay_b must be positive");

  // Nonnegativity over the range the Poisson truncation will visit.
  const double lam = lambda();
  const auto a_probe =
      static_cast<std::int64_t>(std::ceil(lam + 40.0 * std::sqrt(lam) + 1600.0)) + 1;
  for (std::int64_t a = 0; a <= a_probe; ++a) {
    if (!(rate(a) >= 0.0))
      throw InvalidParam("SystemParams: rate function negative at a = " + std::to_string(a));
  }
}

}  // namespace bursty
