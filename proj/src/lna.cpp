#include "bursty/lna.hpp"

#include <cmath>

namespace bursty {

LnaSystem lna_build(const SystemParams& params) {
  if (!params.rate.differentiable())
    throw NotDifferentiable("lna_build: tabulated rates cannot be linearized");

  const double a_star = params.lambda();
  const double r_star = params.rate.real_value(a_star);
  const double r_slope = params.rate.real_derivative(a_star);
  const double eq = params.burst.mean();
  const double eq2 = params.burst.second_moment();
  const double b_star = eq * r_star / params.decay_b;

  LnaSystem sys;
  sys.fixed_point << a_star, b_star;
  sys.drift << -params.decay_a, 0.0, eq * r_slope, -params.decay_b;
  sys.diffusion << params.birth_rate + params.decay_a * a_star, 0.0, 0.0,
      eq2 * r_star + params.decay_b * b_star;
  return sys;
}

Eigen::Matrix2d lyapunov_solve_2x2(const LnaSystem& sys) {
  const Eigen::Matrix2d& p = sys.drift;
  const Eigen::Matrix2d& d = sys.diffusion;
  if (!(p(0, 0) < 0.0 && p(1, 1) < 0.0) || p(0, 1) != 0.0)
    throw NotHurwitz("lyapunov_solve_2x2: drift must be lower triangular with negative diagonal");

  Eigen::Matrix2d sigma;
  sigma(0, 0) = d(0, 0) / (-2.0 * p(0, 0));
  sigma(0, 1) = p(1, 0) * sigma(0, 0) / (-(p(0, 0) + p(1, 1)));
  sigma(1, 0) = sigma(0, 1);
  sigma(1, 1) = (d(1, 1) + 2.0 * p(1, 0) * sigma(0, 1)) / (-2.0 * p(1, 1));

  const Eigen::Matrix2d residual = p * sigma + sigma * p.transpose() + d;
  const double scale = d.cwiseAbs().maxCoeff();
  if (residual.cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw NonConverged("lyapunov_solve_2x2: residual above tolerance");
  return sigma;
}

double lna_variance_b(const SystemParams& params) {
  return lyapunov_solve_2x2(lna_build(params))(1, 1);
}

}  // namespace bursty
