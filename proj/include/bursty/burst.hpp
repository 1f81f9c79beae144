#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Core>

#include "bursty/errors.hpp"

namespace bursty {

// Law of the burst size Q on a finite support of positive integers, with
// first and second moments computed from the stored pmf so analytics, SSA
// and the master-equation oracle all consume identical values.
class BurstDistribution {
 public:
  enum class Kind { Deterministic, Uniform, TruncShiftPoisson, TruncGeometric, ShiftedBinomial };

  static BurstDistribution deterministic(std::int64_t q0);
  static BurstDistribution uniform(std::int64_t lo, std::int64_t hi);
  // Mass proportional to lambda^{q-1} e^{-lambda} / (q-1)! on q in 1..m_n.
  static BurstDistribution trunc_shift_poisson(double lambda, std::int64_t m_n);
  // Mass proportional to p (1-p)^{q-1} on q in 1..m_n.
  static BurstDistribution trunc_geometric(double p, std::int64_t m_n);
  // q = 1 + Binomial(n, p), shifting the support into the positive integers.
  static BurstDistribution shifted_binomial(std::int64_t n, double p);

  Kind kind() const { return kind_; }
  std::int64_t q_min() const { return q_min_; }
  std::int64_t q_max() const { return q_min_ + pmf_.size() - 1; }

  const Eigen::VectorXd& pmf() const { return pmf_; }
  double probability(std::int64_t q) const;

  double mean() const { return mean_; }
  double second_moment() const { return second_moment_; }

  // CDF inversion: smallest q with CDF(q) > u.
  std::int64_t quantile(double u) const;

  std::string describe() const;

 private:
  BurstDistribution(Kind kind, std::int64_t q_min, Eigen::VectorXd pmf);

  Kind kind_;
  std::int64_t q_min_;
  Eigen::VectorXd pmf_;
  Eigen::VectorXd cdf_;
  double mean_ = 0.0;
  double second_moment_ = 0.0;
};

// Uniform double in [0, 1) with exactly 53 random bits; keeps sampling
// byte-reproducible independent of library distribution internals.
inline double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int64_t sample_burst(const BurstDistribution& dist, std::mt19937_64& rng) {
  return dist.quantile(canonical_uniform(rng));
}

}  // namespace bursty
