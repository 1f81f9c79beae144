#pragma once

#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

#include "bursty/system.hpp"

namespace bursty {

// Stationary solve of the master equation truncated to the grid
// {0..a_max} x {0..b_max}. Transitions leaving the grid are deleted
// (A births at a = a_max, burst arrivals past b_max), so the truncated
// generator conserves probability; the error this induces is tracked as
// the fraction of stationary flux hitting the cut transitions.
struct TruncatedCme {
  std::int64_t a_max = 0;
  std::int64_t b_max = 0;
  Eigen::VectorXd stationary;  // index a * (b_max + 1) + b
  double mass_defect = 0.0;    // cut flux / total flux under the solution
  double residual = 0.0;       // max |G pi| / max outflow rate

  std::int64_t index(std::int64_t a, std::int64_t b) const { return a * (b_max + 1) + b; }
  double probability(std::int64_t a, std::int64_t b) const {
    return stationary[index(a, b)];
  }
};

struct CmeGrid {
  std::int64_t a_max = 0;
  std::int64_t b_max = 0;
};

// a_max from the Poisson law of A, b_max sized from the analytics the
// oracle is meant to check (mean + 12 standard deviations of the bound).
CmeGrid default_grid(const SystemParams& params, double rel_tol = 1e-12);

inline constexpr std::int64_t kMaxCmeStates = 4'000'000;

TruncatedCme solve_stationary(const SystemParams& params, std::int64_t a_max,
                              std::int64_t b_max, double b_mass_tol = 1e-8);

struct CmeMoments {
  double mean_a = 0.0, var_a = 0.0;
  double mean_b = 0.0, var_b = 0.0;
  double cov_ab = 0.0;
};

CmeMoments moments(const TruncatedCme& cme);

// CSV dump a,b,probability (zero entries skipped).
void dump_stationary(const TruncatedCme& cme, std::ostream& os);

}  // namespace bursty
