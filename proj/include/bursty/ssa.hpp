#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include "bursty/system.hpp"

namespace bursty {

// State of one exact-simulation trajectory. The generator is owned by the
// trajectory; there is no global random state anywhere in the library.
struct TrajectoryState {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double t = 0.0;
  std::mt19937_64 rng;
};

// One Gillespie direct-method event: exponential waiting time with rate
// F + gamma_A a + R(a) + gamma_B b, channel chosen proportionally; the
// burst channel increments b by a draw from Q.
void advance(TrajectoryState& state, const SystemParams& params);

inline TrajectoryState step(TrajectoryState state, const SystemParams& params) {
  advance(state, params);
  return state;
}

struct EnsembleStats {
  int n_traj = 0;
  std::int64_t n_samples = 0;  // pooled across trajectories
  double mean_a = 0.0, var_a = 0.0;
  double mean_b = 0.0, var_b = 0.0;
  double cov_ab = 0.0, corr_ab = 0.0;
  double se_mean_a = 0.0, se_var_a = 0.0;
  double se_mean_b = 0.0, se_var_b = 0.0;
  double se_cov_ab = 0.0, se_corr_ab = 0.0;
};

struct SsaConfig {
  int n_traj = 100;
  double t_burn = 0.0;
  double t_sample = 0.0;
  double sample_dt = 0.0;
  std::uint64_t seed = 0;
  int n_threads = 0;  // 0: hardware concurrency

  // Burn-in 10x the slowest relaxation time, time-grid sampling at half
  // the fastest relaxation rate.
  static SsaConfig with_defaults(const SystemParams& params, int n_traj, double t_sample,
                                 std::uint64_t seed);
};

// Runs n_traj independent trajectories (per-trajectory substreams derived
// from the seed by a counter hash, so thread count cannot change results),
// discards [0, t_burn), samples every sample_dt, and reports pooled moments
// with batch-means standard errors where each trajectory is one batch.
EnsembleStats estimate_stationary(const SystemParams& params, const SsaConfig& config);

// CSV dump t,a,b of a single trajectory sampled on the same time grid.
void dump_trajectory(const SystemParams& params, const SsaConfig& config, std::ostream& os);

// Counter-based substream derivation (splitmix-style finalizer).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

}  // namespace bursty
