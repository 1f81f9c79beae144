#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bursty/charlier.hpp"

using namespace bursty;

namespace {

RateFunction polynomial_rate(const std::vector<double>& coeffs, std::int64_t table_size) {
  std::vector<double> values;
  for (std::int64_t a = 0; a <= table_size; ++a) {
    double v = 0.0;
    for (size_t d = coeffs.size(); d-- > 0;) v = v * static_cast<double>(a) + coeffs[d];
    values.push_back(v);
  }
  const double tail = values.back();
  return RateFunction::tabulated(std::move(values), tail);
}

double poly_eval(const std::vector<double>& coeffs, double a) {
  double v = 0.0;
  for (size_t d = coeffs.size(); d-- > 0;) v = v * a + coeffs[d];
  return v;
}

double orthogonality_sum(int n, int m, double lambda) {
  const quad r = static_cast<quad>(lambda);
  const auto integrand = [&](std::int64_t a) -> quad {
    return psi_in<quad>(n, a, r) * psi_in<quad>(m, a, r);
  };
  const GrowthClass growth = psi_growth(n, lambda) * psi_growth(m, lambda);
  return static_cast<double>(poisson_expectation_in<quad>(integrand, growth, lambda, 1e-12));
}

}  // namespace

TEST_CASE("psi point values") {
  CHECK(psi(0, 0, 1.0) == 1.0);
  CHECK(psi(0, 17, 3.5) == 1.0);
  CHECK(psi(1, 7, 3.0) == doctest::Approx(4.0));
  CHECK(psi(2, 3, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("psi order outside validated range") {
  CHECK_THROWS_AS(psi(31, 1, 1.0), InvalidParam);
  CHECK_THROWS_AS(psi(-1, 1, 1.0), InvalidParam);
}

TEST_CASE("orthogonality under the Poisson weight") {
  for (const double lambda : {0.5, 2.0, 10.0}) {
    for (int n = 0; n <= 8; ++n) {
      for (int m = 0; m <= 8; ++m) {
        const double value = orthogonality_sum(n, m, lambda);
        if (n == m) {
          double expected = 1.0;
          for (int i = 1; i <= n; ++i) expected *= i * lambda;
          CHECK(value == doctest::Approx(expected).epsilon(1e-8));
        } else {
          CHECK(std::fabs(value) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("first moment of psi_n is delta_n0") {
  for (const double lambda : {0.5, 2.0, 10.0}) {
    for (int n = 0; n <= 8; ++n) {
      const quad r = static_cast<quad>(lambda);
      const auto integrand = [&](std::int64_t a) -> quad { return psi_in<quad>(n, a, r); };
      const double value = static_cast<double>(
          poisson_expectation_in<quad>(integrand, psi_growth(n, lambda), lambda, 1e-12));
      if (n == 0)
        CHECK(value == doctest::Approx(1.0).epsilon(1e-12));
      else
        CHECK(std::fabs(value) < 1e-10);
    }
  }
}

TEST_CASE("falling factorial expands in the psi basis") {
  // (a)_k = sum_n C(k,n) r^{k-n} psi_n(a)
  for (const double r : {1.0, 3.5}) {
    for (int k = 0; k <= 8; ++k) {
      for (std::int64_t a = 0; a <= 30; a += 3) {
        long double sum = 0.0L;
        for (int n = 0; n <= k; ++n) {
          sum += static_cast<long double>(binomial(k, n)) *
                 std::pow(static_cast<long double>(r), k - n) * psi_in<long double>(n, a, (long double)r);
        }
        const double expected = falling_factorial(a, k);
        CHECK(static_cast<double>(sum) ==
              doctest::Approx(expected).epsilon(1e-10).scale(std::max(std::fabs(expected), 1.0)));
      }
    }
  }
}

TEST_CASE("sigma by difference on simple rates") {
  // Linear rate: sigma_1 = slope, sigma_n = 0 for n >= 2.
  const RateFunction linear = RateFunction::linear(2.5);
  CHECK(sigma_by_difference(linear, 1, 3.0, 10) == doctest::Approx(2.5));
  CHECK(sigma_by_difference(linear, 2, 3.0, 10) == doctest::Approx(0.0));

  const RateFunction constant = RateFunction::constant(4.0);
  CHECK(sigma_by_difference(constant, 0, 1.0, 10) == doctest::Approx(4.0));
  CHECK(sigma_by_difference(constant, 1, 1.0, 10) == doctest::Approx(0.0));
  CHECK(sigma_by_difference(constant, 3, 2.0, 10) == doctest::Approx(0.0));

  const RateFunction square = polynomial_rate({0.0, 0.0, 1.0}, 100);
  CHECK(sigma_by_difference(square, 2, 1.0, 10) == doctest::Approx(1.0));
}

TEST_CASE("difference route reports exact termination for polynomials") {
  const RateFunction square = polynomial_rate({0.0, 0.0, 1.0}, 100);
  const DifferenceSigma report = sigma_by_difference_report(square, 0, 4.0, 30);
  CHECK(report.last_term_rel < 1e-12);
}

TEST_CASE("difference route detects the steep-Hill blow-up") {
  const RateFunction hill = RateFunction::hill(9.0, 100.0);
  CHECK_THROWS_AS(sigma_by_difference(hill, 0, 100.0, 60), Unstable);
}

TEST_CASE("sigma by projection on simple rates") {
  const RateFunction linear = RateFunction::linear(2.0);
  for (const double lambda : {1.0, 4.0, 9.0}) {
    CHECK(sigma_by_projection(linear, 0, PoissonMean(lambda)) ==
          doctest::Approx(2.0 * lambda).epsilon(1e-11));
    CHECK(sigma_by_projection(linear, 1, PoissonMean(lambda)) ==
          doctest::Approx(2.0).epsilon(1e-11));
  }
  const RateFunction one = RateFunction::constant(1.0);
  CHECK(std::fabs(sigma_by_projection(one, 1, PoissonMean(5.0))) < 1e-12);
}

TEST_CASE("sigma_0 is the plain Poisson expectation") {
  const RateFunction hill = RateFunction::hill(2.0, 5.0);
  const double direct = poisson_expectation(hill, PoissonMean(5.0), 1e-12);
  CHECK(sigma_by_projection(hill, 0, PoissonMean(5.0)) ==
        doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("routes agree on random polynomial rates") {
  std::mt19937_64 rng(20240915);
  std::uniform_real_distribution<double> coeff(0.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> coeffs;
    for (int d = 0; d <= 5; ++d) coeffs.push_back(coeff(rng));
    const RateFunction f = polynomial_rate(coeffs, 400);
    for (const double lambda : {1.0, 5.0}) {
      for (int n = 0; n <= 5; ++n) {
        const double diff = sigma_by_difference(f, n, lambda, 30);
        const double proj = sigma_by_projection(f, n, PoissonMean(lambda), 1e-12);
        CHECK(std::fabs(diff - proj) <=
              1e-8 * std::max(std::fabs(diff), std::fabs(proj)) + 1e-12);
      }
    }
  }
}

TEST_CASE("both routes vanish above the polynomial degree") {
  const RateFunction quadratic = polynomial_rate({0.4, 1.1, 0.7}, 400);
  for (int n = 3; n <= 5; ++n) {
    CHECK(std::fabs(sigma_by_difference(quadratic, n, 5.0, 30)) < 1e-8);
    CHECK(std::fabs(sigma_by_projection(quadratic, n, PoissonMean(5.0), 1e-12)) < 1e-8);
  }
}

TEST_CASE("expansion reconstructs polynomials exactly") {
  // f(a) = 3a with r = 2: sigma_0 = 6, sigma_1 = 3.
  const RateFunction linear3 = RateFunction::linear(3.0);
  const CharlierExpansion e1 = build_expansion(linear3, PoissonMean(2.0), 1, 1e-12, false);
  CHECK(e1.coeffs[0] == doctest::Approx(6.0).epsilon(1e-11));
  CHECK(e1.coeffs[1] == doctest::Approx(3.0).epsilon(1e-11));
  CHECK(reconstruct(e1, 4) == doctest::Approx(12.0).epsilon(1e-10));

  const RateFunction constant5 = RateFunction::constant(5.0);
  const CharlierExpansion e2 = build_expansion(constant5, PoissonMean(3.0), 4, 1e-12, false);
  for (std::int64_t a = 0; a <= 20; a += 5)
    CHECK(reconstruct(e2, a) == doctest::Approx(5.0).epsilon(1e-10));

  const RateFunction square = polynomial_rate({0.0, 0.0, 1.0}, 200);
  const CharlierExpansion e3 = build_expansion(square, PoissonMean(1.0), 2, 1e-12, false);
  CHECK(reconstruct(e3, 3) == doctest::Approx(9.0).epsilon(1e-9));
}

TEST_CASE("reconstruction reproduces random polynomials at N = degree") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> coeff(0.0, 2.0);
  for (int degree = 0; degree <= 5; ++degree) {
    std::vector<double> coeffs;
    for (int d = 0; d <= degree; ++d) coeffs.push_back(coeff(rng));
    const RateFunction f = polynomial_rate(coeffs, 600);
    const CharlierExpansion e =
        build_expansion(f, PoissonMean(4.0), degree == 0 ? 1 : degree, 1e-12, false);
    for (std::int64_t a = 0; a <= 50; a += 7) {
      const double expected = poly_eval(coeffs, static_cast<double>(a));
      CHECK(reconstruct(e, a) ==
            doctest::Approx(expected).epsilon(1e-9).scale(std::max(std::fabs(expected), 1.0)));
    }
  }
}

TEST_CASE("early stop keeps linear expansions short") {
  const RateFunction linear = RateFunction::linear(1.0);
  const CharlierExpansion e = build_expansion(linear, PoissonMean(4.0), 20, 1e-12, true);
  CHECK(e.order() <= 5);
  for (int n = 2; n <= e.order(); ++n) CHECK(std::fabs(e.coeffs[static_cast<size_t>(n)]) < 1e-10);
}
