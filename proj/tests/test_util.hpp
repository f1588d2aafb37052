#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "percolab/boolean_model.hpp"

// Oracles and statistics used only by tests. Everything here is written as
// an independent code path: no grid index, no union-find, no reuse of the
// library's pruning or closed forms beyond the basic norm.
namespace testutil {

// ---- quadrature ----

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, left, eps / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-10) {
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), eps, 60);
}

// ---- incomplete gamma / chi-square ----

inline double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < 2000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 2000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

/// Regularized upper incomplete gamma Q(a, x).
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

inline double chi2_pvalue(double stat, double dof) { return gamma_q(dof / 2.0, stat / 2.0); }

inline double poisson_pmf(std::uint64_t k, double mu) {
  return std::exp(static_cast<double>(k) * std::log(mu) - mu -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

/// Chi-square goodness of fit of integer draws against Poisson(mu), pooling
/// bins so every expected count is at least 5. Returns the p-value.
inline double poisson_gof_pvalue(const std::vector<std::uint64_t>& draws, double mu) {
  std::uint64_t max_k = 0;
  for (auto v : draws) max_k = std::max(max_k, v);
  std::vector<double> observed(max_k + 1, 0.0);
  for (auto v : draws) observed[v] += 1.0;
  const double n = static_cast<double>(draws.size());

  std::vector<double> obs_bins, exp_bins;
  double o_acc = 0.0, e_acc = 0.0, e_used = 0.0;
  for (std::uint64_t k = 0; k <= max_k; ++k) {
    o_acc += observed[k];
    const double e = n * poisson_pmf(k, mu);
    e_acc += e;
    e_used += e;
    if (e_acc >= 5.0) {
      obs_bins.push_back(o_acc);
      exp_bins.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  // final bin: everything to the right, including the unobserved tail
  obs_bins.push_back(o_acc);
  exp_bins.push_back(e_acc + (n - e_used));
  if (exp_bins.back() < 5.0 && exp_bins.size() >= 2) {
    obs_bins[obs_bins.size() - 2] += obs_bins.back();
    exp_bins[exp_bins.size() - 2] += exp_bins.back();
    obs_bins.pop_back();
    exp_bins.pop_back();
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < obs_bins.size(); ++i) {
    const double d = obs_bins[i] - exp_bins[i];
    stat += d * d / exp_bins[i];
  }
  return chi2_pvalue(stat, static_cast<double>(obs_bins.size()) - 1.0);
}

/// Kolmogorov-Smirnov statistic against U(lo, hi).
inline double ks_statistic(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cdf = (xs[i] - lo) / (hi - lo);
    d = std::max(d, std::fabs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - cdf));
  }
  return d;
}

/// Critical KS value at level alpha (asymptotic): sqrt(-ln(alpha/2)/2)/sqrt(n).
inline double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

// ---- independent geometry/cluster oracles ----

inline double onorm(const percolab::Vec& v, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

inline double odist(const percolab::Vec& a, const percolab::Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct BruteCluster {
  std::vector<std::uint32_t> members;
  bool covered = false;
  std::uint64_t ball_count = 0;
  double diameter = 0.0;
  double reach = 0.0;
  bool boundary_hit = false;
};

/// Breadth-first search over the full pairwise intersection graph.
inline BruteCluster brute_origin_cluster(const percolab::Realization& real) {
  const int d = real.params.dimension;
  const auto n = real.balls.size();
  BruteCluster out;
  std::vector<char> in(n, 0);
  std::vector<std::size_t> queue;
  const percolab::Vec origin{};
  for (std::size_t i = 0; i < n; ++i)
    if (onorm(real.balls[i].center, d) < real.balls[i].radius) {
      in[i] = 1;
      queue.push_back(i);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t i = queue[head];
    for (std::size_t j = 0; j < n; ++j) {
      if (in[j]) continue;
      if (odist(real.balls[i].center, real.balls[j].center, d) <
          real.balls[i].radius + real.balls[j].radius) {
        in[j] = 1;
        queue.push_back(j);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (in[i]) out.members.push_back(static_cast<std::uint32_t>(i));
  out.covered = !out.members.empty();
  out.ball_count = out.members.size();
  for (std::size_t a = 0; a < out.members.size(); ++a) {
    const percolab::Ball& ba = real.balls[out.members[a]];
    out.reach = std::max(out.reach, onorm(ba.center, d) + ba.radius);
    double sup = 0.0;
    for (int j = 0; j < d; ++j) sup = std::max(sup, std::fabs(ba.center[j]));
    if (sup + ba.radius > real.window.half_width) out.boundary_hit = true;
    for (std::size_t b = a; b < out.members.size(); ++b) {
      const percolab::Ball& bb = real.balls[out.members[b]];
      out.diameter =
          std::max(out.diameter, odist(ba.center, bb.center, d) + ba.radius + bb.radius);
    }
  }
  return out;
}

/// Independent decider for the crossing event: full adjacency matrix with the
/// virtual seed as an extra node, component collected first, criterion last.
inline bool brute_crossing(const percolab::Realization& real, const percolab::Vec& x,
                           double alpha) {
  const int d = real.params.dimension;
  std::vector<percolab::Ball> balls;
  for (const percolab::Ball& b : real.balls)
    if (odist(b.center, x, d) < 10.0 * alpha) balls.push_back(b);
  balls.push_back(percolab::Ball{x, alpha});  // seed is the last node
  const std::size_t n = balls.size();
  std::vector<char> adj(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      adj[i * n + j] = i != j && odist(balls[i].center, balls[j].center, d) <
                                     balls[i].radius + balls[j].radius;
  std::vector<char> in(n, 0);
  std::vector<std::size_t> queue{n - 1};
  in[n - 1] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t j = 0; j < n; ++j)
      if (!in[j] && adj[queue[head] * n + j]) {
        in[j] = 1;
        queue.push_back(j);
      }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (in[i] && odist(balls[i].center, x, d) + balls[i].radius >= 8.0 * alpha) return true;
  return false;
}

// ---- random helpers (std engine, independent of the library RNG) ----

inline percolab::Vec random_point_on_sphere(int dim, double radius, std::mt19937_64& eng) {
  std::normal_distribution<double> gauss;
  percolab::Vec v{};
  double s = 0.0;
  do {
    s = 0.0;
    for (int i = 0; i < dim; ++i) {
      v[i] = gauss(eng);
      s += v[i] * v[i];
    }
  } while (s == 0.0);
  const double scale = radius / std::sqrt(s);
  for (int i = 0; i < dim; ++i) v[i] *= scale;
  return v;
}

inline percolab::Vec random_point_in_ball(const percolab::Ball& b, int dim, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> unif;
  percolab::Vec v = random_point_on_sphere(dim, 1.0, eng);
  const double r = b.radius * std::pow(unif(eng), 1.0 / dim);
  for (int i = 0; i < dim; ++i) v[i] = b.center[i] + r * v[i];
  return v;
}

}  // namespace testutil
