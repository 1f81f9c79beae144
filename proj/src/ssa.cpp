#include "bursty/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <thread>
#include <vector>

namespace bursty {

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void advance(TrajectoryState& state, const SystemParams& params) {
  const double w_birth_a = params.birth_rate;
  const double w_death_a = params.decay_a * static_cast<double>(state.a);
  const double w_birth_b = params.rate(state.a);
  const double w_death_b = params.decay_b * static_cast<double>(state.b);
  const double total = w_birth_a + w_death_a + w_birth_b + w_death_b;

  const double u_time = canonical_uniform(state.rng);
  state.t += -std::log1p(-u_time) / total;

  const double pick = canonical_uniform(state.rng) * total;
  if (pick < w_birth_a) {
    ++state.a;
  } else if (pick < w_birth_a + w_death_a) {
    --state.a;
  } else if (pick < w_birth_a + w_death_a + w_birth_b) {
    state.b += sample_burst(params.burst, state.rng);
  } else {
    --state.b;
  }
}

SsaConfig SsaConfig::with_defaults(const SystemParams& params, int n_traj, double t_sample,
                                   std::uint64_t seed) {
  SsaConfig cfg;
  cfg.n_traj = n_traj;
  cfg.t_sample = t_sample;
  cfg.t_burn = 10.0 * std::max(1.0 / params.decay_a, 1.0 / params.decay_b);
  cfg.sample_dt = 0.5 / std::max(params.decay_a, params.decay_b);
  cfg.seed = seed;
  return cfg;
}

namespace {

struct RawSums {
  std::int64_t n = 0;
  long double sum_a = 0.0L, sum_b = 0.0L;
  long double sum_aa = 0.0L, sum_bb = 0.0L, sum_ab = 0.0L;
};

RawSums run_trajectory(const SystemParams& params, const SsaConfig& cfg, std::uint64_t seed) {
  TrajectoryState state;
  state.rng.seed(seed);
  state.a = std::llround(params.lambda());
  state.b = 0;

  const auto n_samples = static_cast<std::int64_t>(
      std::max(1.0, std::floor(cfg.t_sample / cfg.sample_dt)));
  double next_sample = cfg.t_burn;
  std::int64_t remaining = n_samples;

  RawSums sums;
  while (remaining > 0) {
    const std::int64_t a = state.a;
    const std::int64_t b = state.b;
    advance(state, params);
    while (remaining > 0 && next_sample < state.t) {
      const auto da = static_cast<long double>(a);
      const auto db = static_cast<long double>(b);
      sums.n += 1;
      sums.sum_a += da;
      sums.sum_b += db;
      sums.sum_aa += da * da;
      sums.sum_bb += db * db;
      sums.sum_ab += da * db;
      next_sample += cfg.sample_dt;
      --remaining;
    }
  }
  return sums;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  long double sum = 0.0L;
  for (double v : values) sum += static_cast<long double>(v);
  const double mean = static_cast<double>(sum / n);
  if (values.size() < 2) return {mean, 0.0};
  long double ss = 0.0L;
  for (double v : values) {
    const long double d = static_cast<long double>(v) - static_cast<long double>(mean);
    ss += d * d;
  }
  const double sd = std::sqrt(static_cast<double>(ss) / (n - 1.0));
  return {mean, sd / std::sqrt(n)};
}

}  // namespace

EnsembleStats estimate_stationary(const SystemParams& params, const SsaConfig& cfg) {
  if (!(cfg.t_burn >= 0.0) || !(cfg.t_sample > 0.0) || !(cfg.sample_dt > 0.0))
    throw InvalidParam("estimate_stationary: times must be positive");
  if (cfg.n_traj < 2) throw InvalidParam("estimate_stationary: need at least 2 trajectories");

  std::vector<RawSums> sums(static_cast<size_t>(cfg.n_traj));
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, cfg.n_threads > 0 ? cfg.n_threads : hw);

  std::vector<std::future<void>> futures;
  futures.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (int i = w; i < cfg.n_traj; i += workers)
        sums[static_cast<size_t>(i)] =
            run_trajectory(params, cfg, substream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    }));
  }
  for (auto& f : futures) f.get();

  // Pooled means first; per-trajectory second moments about the pooled
  // means avoid the short-window bias of batch-local centering.
  long double total_n = 0.0L, total_a = 0.0L, total_b = 0.0L;
  for (const RawSums& s : sums) {
    total_n += static_cast<long double>(s.n);
    total_a += s.sum_a;
    total_b += s.sum_b;
  }
  const long double mu_a = total_a / total_n;
  const long double mu_b = total_b / total_n;

  std::vector<double> means_a, means_b, vars_a, vars_b, covs, corrs;
  for (const RawSums& s : sums) {
    const auto n = static_cast<long double>(s.n);
    means_a.push_back(static_cast<double>(s.sum_a / n));
    means_b.push_back(static_cast<double>(s.sum_b / n));
    const long double va = (s.sum_aa - 2.0L * mu_a * s.sum_a + n * mu_a * mu_a) / n;
    const long double vb = (s.sum_bb - 2.0L * mu_b * s.sum_b + n * mu_b * mu_b) / n;
    const long double cab = (s.sum_ab - mu_a * s.sum_b - mu_b * s.sum_a + n * mu_a * mu_b) / n;
    vars_a.push_back(static_cast<double>(va));
    vars_b.push_back(static_cast<double>(vb));
    covs.push_back(static_cast<double>(cab));
    corrs.push_back(va > 0.0L && vb > 0.0L
                        ? static_cast<double>(cab / std::sqrt(static_cast<double>(va * vb)))
                        : 0.0);
  }

  EnsembleStats stats;
  stats.n_traj = cfg.n_traj;
  stats.n_samples = static_cast<std::int64_t>(total_n);
  const MeanSe ma = mean_and_se(means_a), mb = mean_and_se(means_b);
  const MeanSe va = mean_and_se(vars_a), vb = mean_and_se(vars_b);
  const MeanSe cab = mean_and_se(covs), rab = mean_and_se(corrs);
  stats.mean_a = ma.mean;
  stats.se_mean_a = ma.se;
  stats.mean_b = mb.mean;
  stats.se_mean_b = mb.se;
  stats.var_a = va.mean;
  stats.se_var_a = va.se;
  stats.var_b = vb.mean;
  stats.se_var_b = vb.se;
  stats.cov_ab = cab.mean;
  stats.se_cov_ab = cab.se;
  stats.corr_ab = (va.mean > 0.0 && vb.mean > 0.0)
                      ? cab.mean / std::sqrt(va.mean * vb.mean)
                      : 0.0;
  stats.se_corr_ab = rab.se;
  return stats;
}

void dump_trajectory(const SystemParams& params, const SsaConfig& cfg, std::ostream& os) {
  TrajectoryState state;
  state.rng.seed(substream_seed(cfg.seed, 0));
  state.a = std::llround(params.lambda());
  state.b = 0;

  const auto n_samples = static_cast<std::int64_t>(
      std::max(1.0, std::floor(cfg.t_sample / cfg.sample_dt)));
  double next_sample = cfg.t_burn;
  std::int64_t remaining = n_samples;

  os << "t,a,b\n";
  char line[96];
  while (remaining > 0) {
    const std::int64_t a = state.a;
    const std::int64_t b = state.b;
    advance(state, params);
    while (remaining > 0 && next_sample < state.t) {
      std::snprintf(line, sizeof line, "%.6f,%lld,%lld\n", next_sample,
                    static_cast<long long>(a), static_cast<long long>(b));
      os << line;
      next_sample += cfg.sample_dt;
      --remaining;
    }
  }
}

}  // namespace bursty
