#include "bursty/cme.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "bursty/analytics.hpp"

namespace bursty {

CmeGrid default_grid(const SystemParams& params, double rel_tol) {
  const double lam = params.lambda();
  CmeGrid grid;
  grid.a_max = static_cast<std::int64_t>(std::ceil(lam + 10.0 * std::sqrt(lam) + 10.0));
  const double mb = mean_b(params, rel_tol);
  const double bound = variance_bound(params, rel_tol);
  grid.b_max = static_cast<std::int64_t>(std::ceil(mb + 12.0 * std::sqrt(std::max(bound, 0.0))));
  grid.b_max = std::max<std::int64_t>(grid.b_max, params.burst.q_max() + 1);
  return grid;
}

TruncatedCme solve_stationary(const SystemParams& params, std::int64_t a_max,
                              std::int64_t b_max, double b_mass_tol) {
  if (a_max < 1 || b_max < 1) throw InvalidParam("solve_stationary: grid must be nonempty");
  const std::int64_t n_states = (a_max + 1) * (b_max + 1);
  if (n_states > kMaxCmeStates)
    throw InvalidParam("solve_stationary: grid above the state cap");

  // Poisson mass of A beyond a_max must be negligible before solving.
  {
    long double p = std::exp(static_cast<long double>(-params.lambda()));
    long double kept = 0.0L;
    for (std::int64_t a = 0; a <= a_max; ++a) {
      kept += p;
      p *= static_cast<long double>(params.lambda()) / static_cast<long double>(a + 1);
    }
    if (static_cast<double>(1.0L - kept) > 1e-10)
      throw GridTooSmall("solve_stationary: Poisson mass of A beyond a_max exceeds 1e-10");
  }

  const std::int64_t width_b = b_max + 1;
  const auto idx = [width_b](std::int64_t a, std::int64_t b) { return a * width_b + b; };

  std::vector<std::pair<std::int64_t, double>> bursts;
  for (std::int64_t q = params.burst.q_min(); q <= params.burst.q_max(); ++q) {
    const double p = params.burst.probability(q);
    if (p > 0.0) bursts.emplace_back(q, p);
  }

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(n_states) * (4 + bursts.size()));

  // Generator G with G(j, i) = rate i -> j; the normalization replaces the
  // balance row of state 0, so its entries go straight into that row.
  const auto add = [&](std::int64_t from, std::int64_t to, double rate) {
    if (to != 0) triplets.emplace_back(static_cast<int>(to), static_cast<int>(from), rate);
    if (from != 0) triplets.emplace_back(static_cast<int>(from), static_cast<int>(from), -rate);
  };

  for (std::int64_t a = 0; a <= a_max; ++a) {
    const double r_a = params.rate(a);
    for (std::int64_t b = 0; b <= b_max; ++b) {
      const std::int64_t i = idx(a, b);
      if (a < a_max) add(i, idx(a + 1, b), params.birth_rate);
      if (a > 0) add(i, idx(a - 1, b), params.decay_a * static_cast<double>(a));
      if (b > 0) add(i, idx(a, b - 1), params.decay_b * static_cast<double>(b));
      if (r_a > 0.0) {
        for (const auto& [q, p] : bursts) {
          if (b + q > b_max) break;  // deleted at the boundary
          add(i, idx(a, b + q), r_a * p);
        }
      }
    }
  }
  for (std::int64_t j = 0; j < n_states; ++j)
    triplets.emplace_back(0, static_cast<int>(j), 1.0);

  Eigen::SparseMatrix<double> system(static_cast<int>(n_states), static_cast<int>(n_states));
  system.setFromTriplets(triplets.begin(), triplets.end());
  system.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(system);
  if (solver.info() != Eigen::Success)
    throw NonConverged("solve_stationary: sparse factorization failed");

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_states);
  rhs[0] = 1.0;
  Eigen::VectorXd pi = solver.solve(rhs);
  // One step of iterative refinement keeps the balance residual near the
  // roundoff floor of the rate scale.
  pi += solver.solve(rhs - system * pi);

  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();

  TruncatedCme out;
  out.a_max = a_max;
  out.b_max = b_max;

  // Residual of the full balance equations (including the replaced row)
  // relative to the largest outflow rate.
  double max_rate = 0.0;
  double max_residual = 0.0;
  {
    Eigen::VectorXd balance = Eigen::VectorXd::Zero(n_states);
    double defect_flux = 0.0;
    double total_flux = 0.0;
    for (std::int64_t a = 0; a <= a_max; ++a) {
      const double r_a = params.rate(a);
      for (std::int64_t b = 0; b <= b_max; ++b) {
        const std::int64_t i = idx(a, b);
        const double p_i = pi[i];
        double out_rate = 0.0;
        const auto flow = [&](std::int64_t to, double rate) {
          balance[to] += rate * p_i;
          out_rate += rate;
        };
        if (a < a_max) flow(idx(a + 1, b), params.birth_rate);
        if (a > 0) flow(idx(a - 1, b), params.decay_a * static_cast<double>(a));
        if (b > 0) flow(idx(a, b - 1), params.decay_b * static_cast<double>(b));
        double cut = (a == a_max) ? params.birth_rate : 0.0;
        if (r_a > 0.0) {
          for (const auto& [q, p] : bursts) {
            if (b + q > b_max)
              cut += r_a * p;
            else
              flow(idx(a, b + q), r_a * p);
          }
        }
        balance[i] -= out_rate * p_i;
        defect_flux += cut * p_i;
        total_flux += (out_rate + cut) * p_i;
        max_rate = std::max(max_rate, out_rate);
      }
    }
    max_residual = balance.cwiseAbs().maxCoeff();
    out.mass_defect = total_flux > 0.0 ? defect_flux / total_flux : 0.0;
  }
  out.residual = max_residual / std::max(max_rate, 1.0);
  if (out.residual > 1e-12)
    throw NonConverged("solve_stationary: balance residual above 1e-12");

  // Mass near the top of the B range signals a truncated B tail.
  double band_mass = 0.0;
  const std::int64_t band_lo = std::max<std::int64_t>(b_max - params.burst.q_max() + 1, 0);
  for (std::int64_t a = 0; a <= a_max; ++a)
    for (std::int64_t b = band_lo; b <= b_max; ++b) band_mass += pi[idx(a, b)];
  if (band_mass > b_mass_tol)
    throw GridTooSmall("solve_stationary: estimated B mass beyond b_max exceeds tolerance");

  out.stationary = std::move(pi);
  return out;
}

CmeMoments moments(const TruncatedCme& cme) {
  long double ma = 0.0L, mb = 0.0L, maa = 0.0L, mbb = 0.0L, mab = 0.0L;
  for (std::int64_t a = 0; a <= cme.a_max; ++a) {
    for (std::int64_t b = 0; b <= cme.b_max; ++b) {
      const auto p = static_cast<long double>(cme.probability(a, b));
      if (p == 0.0L) continue;
      const auto da = static_cast<long double>(a);
      const auto db = static_cast<long double>(b);
      ma += da * p;
      mb += db * p;
      maa += da * da * p;
      mbb += db * db * p;
      mab += da * db * p;
    }
  }
  CmeMoments out;
  out.mean_a = static_cast<double>(ma);
  out.mean_b = static_cast<double>(mb);
  out.var_a = static_cast<double>(maa - ma * ma);
  out.var_b = static_cast<double>(mbb - mb * mb);
  out.cov_ab = static_cast<double>(mab - ma * mb);
  return out;
}

void dump_stationary(const TruncatedCme& cme, std::ostream& os) {
  os << "a,b,probability\n";
  char line[96];
  for (std::int64_t a = 0; a <= cme.a_max; ++a) {
    for (std::int64_t b = 0; b <= cme.b_max; ++b) {
      const double p = cme.probability(a, b);
      if (p == 0.0) continue;
      std::snprintf(line, sizeof line, "%lld,%lld,%.17g\n", static_cast<long long>(a),
                    static_cast<long long>(b), p);
      os << line;
    }
  }
}

}  // namespace bursty
