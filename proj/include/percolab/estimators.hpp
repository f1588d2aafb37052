#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "percolab/clusters.hpp"
#include "percolab/events.hpp"

namespace percolab {

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval; behaves correctly for p near 0.
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

/// Half-open range of per-trial stream indices.
struct StreamRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

// A seeded, mergeable Monte Carlo estimate. All estimated events are
// increasing in the configuration, so simulating on a truncated sample can
// only bias the estimate down: the truth lies in
// [ci_low, ci_high + trunc_bias_bound] up to the interval's coverage level.
struct Estimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t master_seed = 0;
  double censored_fraction = 0.0;   // share of trials with boundary_hit
  double trunc_bias_bound = 0.0;    // one-sided additive bias per trial
  std::string estimand;             // canonical metadata key for merging
  std::vector<StreamRange> streams;
};

struct EstimateOptions {
  double r_cut = 1.0;
  double trunc_tol = 1e-4;          // required certificate level
  bool allow_divergent = false;     // acknowledge an uncertifiable regime
  double window_half_width = 0.0;   // 0: auto-sized from the event kind
  int workers = 0;                  // 0: hardware concurrency
  std::uint64_t stream_offset = 0;  // first trial stream index
};

// n independent trials on derived seed streams. Windows default to 10a for
// crossing/far-ball, 100a for large-ball and 10x the threshold for the
// cluster events. Censored cluster trials count as successes only when the
// censored lower bound already clears the threshold; they are always
// reported in censored_fraction.
Estimate estimate_event(const ModelParams& params, const EventSpec& spec, std::uint64_t n,
                        std::uint64_t master_seed, const EstimateOptions& opts = {});

/// Pool two estimates of the same estimand over disjoint stream ranges.
Estimate merge(const Estimate& a, const Estimate& b);

struct ClusterSample {
  std::uint64_t seed = 0;
  ClusterSummary summary;
  double truncation_error = 0.0;
};

std::vector<ClusterSample> sample_cluster_statistics(const ModelParams& params, const Window& window,
                                                     double r_cut, std::uint64_t n,
                                                     std::uint64_t master_seed, int workers = 0);

struct TailFit {
  double exponent_hat = 0.0;
  double ci_half_width = 0.0;
  std::size_t k_order_stats = 0;
  std::size_t sample_size = 0;
};

/// Hill estimator on the top-k order statistics:
/// exponent = k / sum_{i=1..k} log(X_(n-i+1) / X_(n-k)).
/// k = 0 picks floor(sqrt(sample count)). Throws when fewer than k+1
/// samples are strictly positive or when the top block is degenerate.
TailFit fit_tail_exponent(std::vector<double> samples, std::size_t k = 0);

/// Static partition of [0,n) across workers; deterministic regardless of
/// scheduling. fn(worker_index, begin, end) must not share mutable state.
void parallel_for(std::uint64_t n, int workers,
                  const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);

}  // namespace percolab
