#include "percolab/boolean_model.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace percolab {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_params(const ModelParams& params, const Window& window, double r_cut) {
  if (params.dimension < 1 || params.dimension > kMaxDim)
    throw std::invalid_argument("boolean model: dimension out of range");
  if (!(params.intensity > 0.0)) throw std::invalid_argument("boolean model: intensity must be > 0");
  if (!(window.half_width > 0.0)) throw std::invalid_argument("boolean model: window must be > 0");
  if (!(r_cut > 0.0)) throw std::invalid_argument("boolean model: r_cut must be > 0");
}

}  // namespace

double truncation_error_bound(const ModelParams& params, const Window& window, double r_cut) {
  const int d = params.dimension;
  // (2L+2r)^d expanded binomially against the law's tail moments.
  double integral = 0.0;
  for (int k = 0; k <= d; ++k) {
    const double m = params.law.tail_moment(k, r_cut);
    if (m == kInf) return 1.0;
    integral += binom(d, k) * ipow(2.0 * window.half_width, d - k) * ipow(2.0, k) * m;
  }
  return std::min(1.0, params.intensity * integral);
}

void sample_realization_into(const ModelParams& params, const Window& window, double r_cut,
                             std::uint64_t seed, Realization& out, double max_expected_count) {
  check_params(params, window, r_cut);
  const int d = params.dimension;
  const double half = window.half_width + r_cut;
  const double mean = params.intensity * ipow(2.0 * half, d);
  if (mean > max_expected_count)
    throw std::length_error(
        "sample_realization: expected ball count exceeds the memory budget; "
        "shrink the window, r_cut or the intensity");

  Rng rng(seed);
  const std::uint64_t count = rng.poisson(mean);
  if (static_cast<double>(count) > 4.0 * max_expected_count + 1024.0)
    throw std::length_error("sample_realization: drawn ball count exceeds the memory budget");

  out.balls.clear();
  out.balls.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Ball b;
    for (int j = 0; j < d; ++j) b.center[j] = rng.uniform(-half, half);
    b.radius = params.law.sample(rng);
    out.balls.push_back(b);
  }
  out.params = params;
  out.window = window;
  out.r_cut = r_cut;
  out.seed = seed;
  out.truncation_error = truncation_error_bound(params, window, r_cut);
}

Realization sample_realization(const ModelParams& params, const Window& window, double r_cut,
                               std::uint64_t seed, double max_expected_count) {
  Realization out;
  sample_realization_into(params, window, r_cut, seed, out, max_expected_count);
  return out;
}

void write_realization_csv(std::ostream& os, const Realization& real) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "# d=%d lambda=%.17g L=%.17g rcut=%.17g seed=%llu trunc_err=%.17g\n",
                real.params.dimension, real.params.intensity, real.window.half_width, real.r_cut,
                static_cast<unsigned long long>(real.seed), real.truncation_error);
  os << buf;
  const int d = real.params.dimension;
  for (const Ball& b : real.balls) {
    std::string line;
    for (int j = 0; j < d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,", b.center[j]);
      line += buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", b.radius);
    line += buf;
    os << line;
  }
}

}  // namespace percolab
