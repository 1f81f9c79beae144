#pragma once

#include <Eigen/Core>

#include "bursty/system.hpp"

namespace bursty {

// Linear-noise baseline: fluctuations about the deterministic fixed point
// solve the stationary Lyapunov equation P Sigma + Sigma P^T + D = 0.
struct LnaSystem {
  Eigen::Matrix2d drift;       // P, lower triangular here
  Eigen::Matrix2d diffusion;   // D, diagonal
  Eigen::Vector2d fixed_point; // (a*, b*)
};

// Linearization about a* = F/gamma_A (the A dynamics are autonomous):
//   P = [[-gamma_A, 0], [E[Q] R'(a*), -gamma_B]]
//   D = diag(F + gamma_A a*, E[Q^2] R(a*) + gamma_B b*)
// with b* = E[Q] R(a*) / gamma_B. Requires a differentiable rate.
LnaSystem lna_build(const SystemParams& params);

// Closed-form solve for lower-triangular drift; verifies the residual
// against 1e-12 * max|D|.
Eigen::Matrix2d lyapunov_solve_2x2(const LnaSystem& sys);

double lna_variance_b(const SystemParams& params);

}  // namespace bursty
