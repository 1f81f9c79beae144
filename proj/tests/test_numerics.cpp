#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bursty/numerics.hpp"

using namespace bursty;

namespace {

// Independent oracle: direct Poisson summation with a fixed hard cutoff,
// no tail-bound machinery shared with the implementation.
double brute_force_expectation(const RateFunction& f, double lambda, std::int64_t cutoff) {
  long double p = std::exp(static_cast<long double>(-lambda));
  long double sum = 0.0L;
  for (std::int64_t a = 0; a <= cutoff; ++a) {
    sum += static_cast<long double>(f(a)) * p;
    p *= static_cast<long double>(lambda) / static_cast<long double>(a + 1);
  }
  return static_cast<double>(sum);
}

RateFunction polynomial_rate(const std::vector<double>& coeffs, std::int64_t table_size) {
  std::vector<double> values;
  values.reserve(static_cast<size_t>(table_size) + 1);
  for (std::int64_t a = 0; a <= table_size; ++a) {
    double v = 0.0;
    for (size_t d = coeffs.size(); d-- > 0;) v = v * static_cast<double>(a) + coeffs[d];
    values.push_back(v);
  }
  const double tail = values.back();
  return RateFunction::tabulated(std::move(values), tail);
}

}  // namespace

TEST_CASE("falling factorial basics") {
  CHECK(falling_factorial(5, 2) == 20.0);
  CHECK(falling_factorial(7, 0) == 1.0);
  CHECK(falling_factorial(3, 4) == 0.0);
  CHECK(falling_factorial(0, 0) == 1.0);
}

TEST_CASE("falling factorial vanishes exactly on 0 <= a < k") {
  for (std::int64_t k = 1; k <= 25; ++k)
    for (std::int64_t a = 0; a < k; ++a) CHECK(falling_factorial(a, k) == 0.0);
  for (std::int64_t k = 0; k <= 12; ++k)
    for (std::int64_t a = k; a <= k + 6; ++a) CHECK(falling_factorial(a, k) > 0.0);
}

TEST_CASE("forward differences of polynomials") {
  const RateFunction identity = RateFunction::linear(1.0);
  CHECK(forward_difference_at_zero(identity, 1) == doctest::Approx(1.0));
  CHECK(forward_difference_at_zero(identity, 2) == doctest::Approx(0.0));

  const RateFunction square = polynomial_rate({0.0, 0.0, 1.0}, 80);
  // f(2) - 2 f(1) + f(0) = 4 - 2 + 0
  CHECK(forward_difference_at_zero(square, 2) == doctest::Approx(2.0));

  // Differences of any degree-d polynomial vanish for k > d.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coeff(0.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> coeffs;
    const int degree = trial % 5;
    for (int d = 0; d <= degree; ++d) coeffs.push_back(coeff(rng));
    const RateFunction f = polynomial_rate(coeffs, 80);
    for (int k = degree + 1; k <= degree + 4; ++k)
      CHECK(std::fabs(forward_difference_at_zero(f, k)) < 1e-9);
  }
}

TEST_CASE("forward difference overflow guard") {
  const RateFunction f = RateFunction::constant(1.0);
  CHECK(forward_difference_at_zero(f, 60) == doctest::Approx(0.0));
  CHECK_THROWS_AS(forward_difference_at_zero(f, 61), Overflow);
}

TEST_CASE("poisson expectation of the identity is the mean") {
  const RateFunction identity = RateFunction::linear(1.0);
  CHECK(poisson_expectation(identity, PoissonMean(3.0)) == doctest::Approx(3.0));
}

TEST_CASE("poisson expectation of falling factorials is lambda^k") {
  for (const double lambda : {0.5, 2.0, 10.0, 100.0}) {
    for (int k = 0; k <= 20; ++k) {
      const auto integrand = [k](std::int64_t a) -> long double {
        return falling_factorial<long double>(a, k);
      };
      const GrowthClass growth = GrowthClass::polynomial(k, 1.0);
      const double value = static_cast<double>(
          poisson_expectation_in<long double>(integrand, growth, lambda, 1e-12));
      const double expected = std::pow(lambda, k);
      CHECK(value == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("second falling moment at lambda = 3") {
  const auto integrand = [](std::int64_t a) -> long double {
    return falling_factorial<long double>(a, 2);
  };
  const double value = static_cast<double>(
      poisson_expectation_in<long double>(integrand, GrowthClass::polynomial(2, 1.0), 3.0, 1e-12));
  CHECK(value == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("steep Hill expectation matches brute-force summation") {
  const RateFunction hill = RateFunction::hill(9.0, 100.0);
  const double oracle = brute_force_expectation(hill, 100.0, 2000);
  std::int64_t a_max = 0;
  const double value = poisson_expectation(hill, PoissonMean(100.0), 1e-12, &a_max);
  CHECK(value == doctest::Approx(oracle).epsilon(1e-11));
  CHECK(a_max > 100);
}

TEST_CASE("tabulated rates integrate like their table") {
  const RateFunction f = polynomial_rate({1.0, 0.5}, 400);
  const double oracle = brute_force_expectation(f, 7.0, 400);
  CHECK(poisson_expectation(f, PoissonMean(7.0)) == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("unknown growth class refuses to run") {
  const auto integrand = [](std::int64_t) -> long double { return 1.0L; };
  CHECK_THROWS_AS(poisson_expectation_in<long double>(integrand, GrowthClass::unknown(), 1.0, 1e-12),
                  NonConvergent);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(PoissonMean(0.0), InvalidParam);
  CHECK_THROWS_AS(PoissonMean(-1.0), InvalidParam);
  const RateFunction f = RateFunction::constant(1.0);
  CHECK_THROWS_AS(poisson_expectation(f, PoissonMean(1.0), 0.0), InvalidParam);
}

TEST_CASE("truncation point grows with rel_tol") {
  const RateFunction f = RateFunction::constant(1.0);
  std::int64_t loose = 0, tight = 0;
  poisson_expectation(f, PoissonMean(10.0), 1e-4, &loose);
  poisson_expectation(f, PoissonMean(10.0), 1e-14, &tight);
  CHECK(tight > loose);
  CHECK(poisson_expectation(f, PoissonMean(10.0), 1e-14) == doctest::Approx(1.0).epsilon(1e-13));
}
