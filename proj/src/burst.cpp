#include "bursty/burst.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bursty {

BurstDistribution::BurstDistribution(Kind kind, std::int64_t q_min, Eigen::VectorXd pmf)
    : kind_(kind), q_min_(q_min), pmf_(std::move(pmf)) {
  if (q_min_ < 1) throw InvalidParam("BurstDistribution: support must lie in positive integers");
  const double total = pmf_.sum();
  if (!(total > 0.0)) throw InvalidParam("BurstDistribution: pmf has no mass");
  pmf_ /= total;

  cdf_.resize(pmf_.size());
  long double run = 0.0L, m1 = 0.0L, m2 = 0.0L;
  for (Eigen::Index i = 0; i < pmf_.size(); ++i) {
    const long double p = static_cast<long double>(pmf_[i]);
    const long double q = static_cast<long double>(q_min_ + i);
    run += p;
    m1 += q * p;
    m2 += q * q * p;
    cdf_[i] = static_cast<double>(run);
  }
  cdf_[cdf_.size() - 1] = 1.0;
  mean_ = static_cast<double>(m1);
  second_moment_ = static_cast<double>(m2);
}

BurstDistribution BurstDistribution::deterministic(std::int64_t q0) {
  if (q0 < 1) throw InvalidParam("BurstDistribution: q0 must be >= 1");
  Eigen::VectorXd pmf = Eigen::VectorXd::Ones(1);
  return {Kind::Deterministic, q0, std::move(pmf)};
}

BurstDistribution BurstDistribution::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo < 1) throw InvalidParam("BurstDistribution: uniform lo must be >= 1");
  if (hi < lo) throw InvalidParam("BurstDistribution: uniform hi must be >= lo");
  Eigen::VectorXd pmf = Eigen::VectorXd::Constant(hi - lo + 1, 1.0);
  return {Kind::Uniform, lo, std::move(pmf)};
}

BurstDistribution BurstDistribution::trunc_shift_poisson(double lambda, std::int64_t m_n) {
  if (!(lambda > 0.0)) throw InvalidParam("BurstDistribution: lambda must be positive");
  if (m_n < 1) throw InvalidParam("BurstDistribution: m_n must be >= 1");
  Eigen::VectorXd pmf(m_n);
  long double mass = std::exp(static_cast<long double>(-lambda));  // q = 1 term
  for (std::int64_t q = 1; q <= m_n; ++q) {
    pmf[q - 1] = static_cast<double>(mass);
    mass *= static_cast<long double>(lambda) / static_cast<long double>(q);
  }
  return {Kind::TruncShiftPoisson, 1, std::move(pmf)};
}

BurstDistribution BurstDistribution::trunc_geometric(double p, std::int64_t m_n) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidParam("BurstDistribution: p must be in (0, 1]");
  if (m_n < 1) throw InvalidParam("BurstDistribution: m_n must be >= 1");
  Eigen::VectorXd pmf(m_n);
  long double mass = static_cast<long double>(p);
  for (std::int64_t q = 1; q <= m_n; ++q) {
    pmf[q - 1] = static_cast<double>(mass);
    mass *= static_cast<long double>(1.0 - p);
  }
  return {Kind::TruncGeometric, 1, std::move(pmf)};
}

BurstDistribution BurstDistribution::shifted_binomial(std::int64_t n, double p) {
  if (n < 1) throw InvalidParam("BurstDistribution: binomial n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParam("BurstDistribution: p must be in [0, 1]");
  Eigen::VectorXd pmf(n + 1);
  // C(n,j) p^j (1-p)^{n-j} via the multiplicative recurrence.
  long double mass = std::pow(static_cast<long double>(1.0 - p), static_cast<long double>(n));
  for (std::int64_t j = 0; j <= n; ++j) {
    pmf[j] = static_cast<double>(mass);
    if (j < n) {
      if (p >= 1.0) {
        mass = (j + 1 == n) ? 1.0L : 0.0L;
      } else {
        mass *= static_cast<long double>(n - j) / static_cast<long double>(j + 1) *
                static_cast<long double>(p) / static_cast<long double>(1.0 - p);
      }
    }
  }
  return {Kind::ShiftedBinomial, 1, std::move(pmf)};
}

double BurstDistribution::probability(std::int64_t q) const {
  if (q < q_min_ || q > q_max()) return 0.0;
  return pmf_[q - q_min_];
}

std::int64_t BurstDistribution::quantile(double u) const {
  const double* begin = cdf_.data();
  const double* end = begin + cdf_.size();
  const double* it = std::upper_bound(begin, end, u);
  if (it == end) --it;
  return q_min_ + (it - begin);
}

std::string BurstDistribution::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Deterministic:
      os << "deterministic(" << q_min_ << ")";
      break;
    case Kind::Uniform:
      os << "uniform{" << q_min_ << ".." << q_max() << "}";
      break;
    case Kind::TruncShiftPoisson:
      os << "trunc_shift_poisson(m_n=" << q_max() << ")";
      break;
    case Kind::TruncGeometric:
      os << "trunc_geometric(m_n=" << q_max() << ")";
      break;
    case Kind::ShiftedBinomial:
      os << "shifted_binomial(n=" << pmf_.size() - 1 << ")";
      break;
  }
  return os.str();
}

}  // namespace bursty
