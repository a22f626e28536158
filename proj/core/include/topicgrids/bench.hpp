#pragma once

#include "topicgrids/samplers.hpp"
#include "topicgrids/types.hpp"

#include <cstdint>

namespace topicgrids {

// Error ratios of one Monte Carlo trial.
struct TrialResult {
  int trial = 0;
  double err1 = 0, err2 = 0;
  std::vector<double> err1_dim, err2_dim;
};

struct Aggregate {
  double mean = 0;
  double stddev = 0;   // sample standard deviation (n-1), 0 for a single trial
  double stderr_ = 0;  // stddev / sqrt(trials)
};

struct AggregateStats {
  int trials = 0;
  Aggregate err1, err2;
  std::vector<Aggregate> err1_dim, err2_dim;
};

// One output row of the harness: a (layout, sampler, strategy) cell with its
// aggregated stats.  Swept parameter values are visible in the sampling
// string (e.g. "uniform:rho=0.25"), so no separate value column exists.
struct BenchRow {
  LayoutShape layout;
  std::string sampling;
  std::string strategy;
  std::int64_t constraints = 0;  // C(n,2) * k
  int trials = 0;
  AggregateStats stats;
};

// Trial t draws its points from stream_seed(master_seed, t), regardless of
// sampler parameters or strategy.  Runs that share a master seed therefore
// share their clouds trial-for-trial: strategy comparisons and parameter
// sweeps are paired by construction (common random numbers).
std::vector<TrialResult> run_trial_series(const LayoutShape& layout,
                                          const SamplerSpec& spec,
                                          const SplitStrategy& strategy,
                                          int trials,
                                          std::uint64_t master_seed,
                                          int threads = 1);

AggregateStats aggregate(const std::vector<TrialResult>& results);

AggregateStats run_trials(const LayoutShape& layout, const SamplerSpec& spec,
                          const SplitStrategy& strategy, int trials,
                          std::uint64_t master_seed, int threads = 1);

std::int64_t constraint_count(const LayoutShape& layout);

// The five square layouts 4x4 .. 64x64, each under uniform rho=1 and the
// Gaussian scheme at both readings of its angle (4/pi and pi/4), greedy
// splitting with the default last-dimension tie-break.  15 rows.
std::vector<BenchRow> table1(int trials, std::uint64_t master_seed,
                             int threads = 1);

enum class SweepParam { rho, theta, phi };

// For each value (outer) and each strategy (inner), runs `trials` paired
// trials with the base spec's swept parameter replaced by the value.
std::vector<BenchRow> sweep(SweepParam param, const std::vector<double>& values,
                            const SamplerSpec& base, const LayoutShape& layout,
                            const std::vector<SplitStrategy>& strategies,
                            int trials, std::uint64_t master_seed,
                            int threads = 1);

// Default sweep grids: 64 evenly spaced angles over [0, pi) (pi/4 is grid
// point 16) and 32 log-spaced magnitudes over [1/8, 8].
std::vector<double> theta_grid();
std::vector<double> log_grid();

}  // namespace topicgrids
