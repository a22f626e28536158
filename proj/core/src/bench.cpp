#include "topicgrids/bench.hpp"

#include "topicgrids/metrics.hpp"
#include "topicgrids/rng.hpp"
#include "topicgrids/split_diffuse.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace topicgrids {

namespace {

TrialResult one_trial(const LayoutShape& layout, const SamplerSpec& spec,
                      const SplitStrategy& strategy, int trial,
                      std::uint64_t master_seed) {
  const std::size_t n = static_cast<std::size_t>(layout.cell_count());
  const PointCloud cloud = sample(spec, n, stream_seed(master_seed, trial));
  const GridAssignment asg = split_diffuse(cloud, layout, strategy);
  const ErrorReport rep = evaluate(cloud, asg);

  TrialResult r;
  r.trial = trial;
  r.err1 = rep.err1();
  r.err2 = rep.err2();
  r.err1_dim.resize(rep.dims);
  r.err2_dim.resize(rep.dims);
  for (int d = 0; d < rep.dims; ++d) {
    r.err1_dim[d] = rep.err1_dim(d);
    r.err2_dim[d] = rep.err2_dim(d);
  }
  return r;
}

Aggregate aggregate_values(const std::vector<double>& xs) {
  Aggregate a;
  const std::size_t n = xs.size();
  if (n == 0) return a;
  double sum = 0;
  for (double x : xs) sum += x;
  a.mean = sum / n;
  if (n > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stddev = std::sqrt(ss / (n - 1));
    a.stderr_ = a.stddev / std::sqrt(static_cast<double>(n));
  }
  return a;
}

}  // namespace

std::vector<TrialResult> run_trial_series(const LayoutShape& layout,
                                          const SamplerSpec& spec,
                                          const SplitStrategy& strategy,
                                          int trials,
                                          std::uint64_t master_seed,
                                          int threads) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  std::vector<TrialResult> results(trials);

  auto run_range = [&](int lo, int hi, std::exception_ptr& err) {
    for (int t = lo; t < hi; ++t) {
      try {
        results[t] = one_trial(layout, spec, strategy, t, master_seed);
      } catch (const std::exception& e) {
        err = std::make_exception_ptr(
            ValidationError("trial " + std::to_string(t) + ": " + e.what()));
        return;
      }
    }
  };

  if (threads <= 1 || trials == 1) {
    std::exception_ptr err;
    run_range(0, trials, err);
    if (err) std::rethrow_exception(err);
    return results;
  }

  // Results land in per-trial slots, so worker scheduling cannot affect the
  // aggregate: reduction order is fixed by trial index.
  const int workers = std::min(threads, trials);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(workers);
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(trials) * w / workers);
    const int hi = static_cast<int>(static_cast<std::int64_t>(trials) * (w + 1) / workers);
    pool.emplace_back(run_range, lo, hi, std::ref(errs[w]));
  }
  for (auto& th : pool) th.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
  return results;
}

AggregateStats aggregate(const std::vector<TrialResult>& results) {
  AggregateStats stats;
  stats.trials = static_cast<int>(results.size());
  if (results.empty()) return stats;
  const std::size_t dims = results.front().err1_dim.size();

  std::vector<double> xs(results.size());
  auto collect = [&](auto&& get) {
    for (std::size_t t = 0; t < results.size(); ++t) xs[t] = get(results[t]);
    return aggregate_values(xs);
  };

  stats.err1 = collect([](const TrialResult& r) { return r.err1; });
  stats.err2 = collect([](const TrialResult& r) { return r.err2; });
  stats.err1_dim.resize(dims);
  stats.err2_dim.resize(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    stats.err1_dim[d] = collect([d](const TrialResult& r) { return r.err1_dim[d]; });
    stats.err2_dim[d] = collect([d](const TrialResult& r) { return r.err2_dim[d]; });
  }
  return stats;
}

AggregateStats run_trials(const LayoutShape& layout, const SamplerSpec& spec,
                          const SplitStrategy& strategy, int trials,
                          std::uint64_t master_seed, int threads) {
  return aggregate(run_trial_series(layout, spec, strategy, trials,
                                    master_seed, threads));
}

std::int64_t constraint_count(const LayoutShape& layout) {
  const std::int64_t n = layout.cell_count();
  return n * (n - 1) / 2 * layout.dims();
}

std::vector<BenchRow> table1(int trials, std::uint64_t master_seed,
                             int threads) {
  const SamplerSpec uniform1 = SamplerSpec::parse("uniform:rho=1");
  SamplerSpec gauss_4_over_pi;
  gauss_4_over_pi.family = SamplerSpec::Family::gaussian;
  gauss_4_over_pi.theta = 4.0 / std::numbers::pi;
  gauss_4_over_pi.phi = 2.0;
  SamplerSpec gauss_pi_over_4 = gauss_4_over_pi;
  gauss_pi_over_4.theta = std::numbers::pi / 4.0;

  const SplitStrategy greedy;  // defaults: greedy, last-dimension tie-break
  std::vector<BenchRow> rows;
  for (int g : {4, 8, 16, 32, 64}) {
    const LayoutShape layout{{g, g}};
    for (const SamplerSpec& spec :
         {uniform1, gauss_4_over_pi, gauss_pi_over_4}) {
      BenchRow row;
      row.layout = layout;
      row.sampling = spec.str();
      row.strategy = greedy.str();
      row.constraints = constraint_count(layout);
      row.trials = trials;
      row.stats = run_trials(layout, spec, greedy, trials, master_seed, threads);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<BenchRow> sweep(SweepParam param, const std::vector<double>& values,
                            const SamplerSpec& base, const LayoutShape& layout,
                            const std::vector<SplitStrategy>& strategies,
                            int trials, std::uint64_t master_seed,
                            int threads) {
  if (values.empty()) throw ValidationError("sweep needs a non-empty value grid");
  if (strategies.empty()) throw ValidationError("sweep needs at least one strategy");
  const bool uniform = base.family == SamplerSpec::Family::uniform;
  if ((param == SweepParam::rho) != uniform)
    throw ValidationError("swept parameter does not belong to the sampler family");

  std::vector<BenchRow> rows;
  for (double v : values) {
    SamplerSpec spec = base;
    switch (param) {
      case SweepParam::rho: spec.rho = v; break;
      case SweepParam::theta: spec.theta = v; break;
      case SweepParam::phi: spec.phi = v; break;
    }
    for (const SplitStrategy& strategy : strategies) {
      BenchRow row;
      row.layout = layout;
      row.sampling = spec.str();
      row.strategy = strategy.str();
      row.constraints = constraint_count(layout);
      row.trials = trials;
      row.stats = run_trials(layout, spec, strategy, trials, master_seed, threads);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<double> theta_grid() {
  std::vector<double> grid(64);
  for (int i = 0; i < 64; ++i) grid[i] = std::numbers::pi * i / 64.0;
  return grid;
}

std::vector<double> log_grid() {
  std::vector<double> grid(32);
  for (int i = 0; i < 32; ++i)
    grid[i] = std::exp2(-3.0 + 6.0 * i / 31.0);
  return grid;
}

}  // namespace topicgrids
