#include "percolab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

namespace percolab {

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void parallel_for(std::uint64_t n, int workers,
                  const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw ? static_cast<int>(hw) : 1;
  }
  const auto w = static_cast<std::uint64_t>(workers);
  if (w <= 1 || n < 2) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::uint64_t i = 0; i < w; ++i) {
    const std::uint64_t begin = n * i / w;
    const std::uint64_t end = n * (i + 1) / w;
    pool.emplace_back([&fn, i, begin, end] { fn(static_cast<int>(i), begin, end); });
  }
  for (auto& t : pool) t.join();
}

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double auto_window(const EventSpec& spec, int dim) {
  switch (spec.kind) {
    case EventKind::Crossing: {
      double sx = 0.0;
      for (int i = 0; i < dim; ++i) sx = std::max(sx, std::fabs(spec.x[i]));
      return sx + 10.0 * spec.alpha;
    }
    case EventKind::LargeBall: return 100.0 * spec.alpha;
    case EventKind::FarBall: return 10.0 * spec.alpha;
    case EventKind::ReachAtLeast:
    case EventKind::DiameterAtLeast: return 10.0 * spec.threshold;
  }
  return 0.0;
}

bool is_cluster_kind(EventKind k) {
  return k == EventKind::ReachAtLeast || k == EventKind::DiameterAtLeast;
}

// The crossing and large-ball deciders use only centers strictly inside the
// window, so truncation cannot change them.
bool truncation_free(EventKind k) {
  return k == EventKind::Crossing || k == EventKind::LargeBall;
}

std::string estimand_key(const ModelParams& params, const EventSpec& spec, double window,
                         double r_cut) {
  std::string s = event_kind_name(spec.kind);
  s += " alpha=" + num17(spec.alpha);
  s += " thr=" + num17(spec.threshold);
  if (spec.kind == EventKind::Crossing) {
    s += " x=";
    for (int i = 0; i < params.dimension; ++i) s += (i ? "," : "") + num17(spec.x[i]);
  }
  s += " d=" + std::to_string(params.dimension);
  s += " lambda=" + num17(params.intensity);
  s += " law=" + params.law.to_spec();
  s += " L=" + num17(window);
  s += " rcut=" + num17(r_cut);
  return s;
}

}  // namespace

Estimate estimate_event(const ModelParams& params, const EventSpec& spec, std::uint64_t n,
                        std::uint64_t master_seed, const EstimateOptions& opts) {
  if (!(spec.alpha > 0.0) && spec.kind != EventKind::DiameterAtLeast)
    throw std::invalid_argument("estimate_event: alpha must be > 0");

  const Window window{opts.window_half_width > 0.0 ? opts.window_half_width
                                                   : auto_window(spec, params.dimension)};
  const double r_cut = opts.r_cut;
  const double trunc = truncation_free(spec.kind)
                           ? 0.0
                           : truncation_error_bound(params, window, r_cut);
  if (trunc > opts.trunc_tol && !opts.allow_divergent) {
    if (params.law.tail_moment(params.dimension, 0.0) == kInf)
      throw std::domain_error(
          "estimate_event: E(R^d) is infinite, the truncation tolerance is unmeetable; "
          "pass the divergent-regime flag to proceed without a certificate");
    throw std::domain_error(
        "estimate_event: truncation bound " + num17(trunc) + " exceeds the tolerance " +
        num17(opts.trunc_tol) + "; increase r_cut or acknowledge the divergent regime");
  }

  struct WorkerTally {
    std::uint64_t successes = 0;
    std::uint64_t censored = 0;
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = opts.workers > 0 ? opts.workers : (hw ? static_cast<int>(hw) : 1);
  std::vector<WorkerTally> tallies(static_cast<std::size_t>(std::max(workers, 1)));

  parallel_for(n, workers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Realization real;
    ClusterAnalyzer analyzer;
    WorkerTally& tally = tallies[static_cast<std::size_t>(w)];
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t seed = Rng::stream_seed(master_seed, opts.stream_offset + i);
      sample_realization_into(params, window, r_cut, seed, real);
      bool success = false;
      switch (spec.kind) {
        case EventKind::Crossing: success = crossing_event(real, spec.x, spec.alpha); break;
        case EventKind::FarBall: success = far_ball_event(real, spec.alpha); break;
        case EventKind::LargeBall: success = large_ball_event(real, spec.alpha); break;
        case EventKind::ReachAtLeast:
        case EventKind::DiameterAtLeast: {
          const ClusterSummary s = analyzer.stats(real);
          const double value = spec.kind == EventKind::ReachAtLeast ? s.reach : s.diameter;
          success = value >= spec.threshold;
          if (s.boundary_hit) ++tally.censored;
          break;
        }
      }
      if (success) ++tally.successes;
    }
  });

  Estimate est;
  est.trials = n;
  est.master_seed = master_seed;
  est.trunc_bias_bound = trunc;
  est.estimand = estimand_key(params, spec, window.half_width, r_cut);
  est.streams = {{opts.stream_offset, opts.stream_offset + n}};
  for (const WorkerTally& t : tallies) {
    est.successes += t.successes;
    if (is_cluster_kind(spec.kind))
      est.censored_fraction += static_cast<double>(t.censored);
  }
  if (n > 0) est.censored_fraction /= static_cast<double>(n);
  est.p_hat = n ? static_cast<double>(est.successes) / static_cast<double>(n) : 0.0;
  const WilsonInterval ci = wilson95(est.successes, est.trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

Estimate merge(const Estimate& a, const Estimate& b) {
  if (a.estimand != b.estimand || a.master_seed != b.master_seed)
    throw std::invalid_argument("merge: estimand metadata mismatch");
  std::vector<StreamRange> ranges = a.streams;
  ranges.insert(ranges.end(), b.streams.begin(), b.streams.end());
  std::sort(ranges.begin(), ranges.end(),
            [](const StreamRange& x, const StreamRange& y) { return x.begin < y.begin; });
  std::vector<StreamRange> coalesced;
  for (const StreamRange& r : ranges) {
    if (r.begin == r.end) continue;
    if (!coalesced.empty() && r.begin < coalesced.back().end)
      throw std::invalid_argument("merge: overlapping stream ranges");
    if (!coalesced.empty() && r.begin == coalesced.back().end)
      coalesced.back().end = r.end;
    else
      coalesced.push_back(r);
  }

  Estimate out = a;
  out.streams = std::move(coalesced);
  out.trials = a.trials + b.trials;
  out.successes = a.successes + b.successes;
  out.censored_fraction =
      out.trials == 0
          ? 0.0
          : (a.censored_fraction * static_cast<double>(a.trials) +
             b.censored_fraction * static_cast<double>(b.trials)) / static_cast<double>(out.trials);
  out.trunc_bias_bound = std::max(a.trunc_bias_bound, b.trunc_bias_bound);
  out.p_hat = out.trials ? static_cast<double>(out.successes) / static_cast<double>(out.trials) : 0.0;
  const WilsonInterval ci = wilson95(out.successes, out.trials);
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  return out;
}

std::vector<ClusterSample> sample_cluster_statistics(const ModelParams& params, const Window& window,
                                                     double r_cut, std::uint64_t n,
                                                     std::uint64_t master_seed, int workers) {
  std::vector<ClusterSample> rows(n);
  parallel_for(n, workers, [&](int, std::uint64_t begin, std::uint64_t end) {
    Realization real;
    ClusterAnalyzer analyzer;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t seed = Rng::stream_seed(master_seed, i);
      sample_realization_into(params, window, r_cut, seed, real);
      rows[i] = {seed, analyzer.stats(real), real.truncation_error};
    }
  });
  return rows;
}

TailFit fit_tail_exponent(std::vector<double> samples, std::size_t k) {
  const std::size_t n = samples.size();
  if (k == 0) k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  if (k == 0) throw std::invalid_argument("fit_tail_exponent: need a positive order count");
  std::size_t positive = 0;
  for (double v : samples)
    if (v > 0.0) ++positive;
  if (positive < k + 1)
    throw std::domain_error("fit_tail_exponent: insufficient positive samples");

  std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(k + 1),
                    samples.end(), std::greater<double>());
  const double pivot = samples[k];  // X_(n-k), the (k+1)-th largest
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(samples[i] / pivot);
  if (!(sum > 0.0))
    throw std::domain_error("fit_tail_exponent: degenerate top block (zero log spacings)");

  TailFit fit;
  fit.k_order_stats = k;
  fit.sample_size = n;
  fit.exponent_hat = static_cast<double>(k) / sum;
  fit.ci_half_width = 1.96 * fit.exponent_hat / std::sqrt(static_cast<double>(k));
  return fit;
}

}  // namespace percolab
