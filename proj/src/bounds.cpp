#include "percolab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "percolab/geometry.hpp"

namespace percolab {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConstantsTable compute_constants(int dimension, const RadiusLaw& law) {
  if (dimension < 1) throw std::invalid_argument("compute_constants: dimension must be >= 1");
  ConstantsTable t;
  t.dimension = dimension;
  t.law = law;

  const double kappa = unit_ball_volume(dimension);
  t.c2 = ipow(10.0, dimension) * kappa;
  t.c3 = ipow(100.0, dimension) * kappa;
  t.c4 = t.c2;

  const SphereNet k_net = build_sphere_net(dimension, 10.0, 1.0);
  const SphereNet l_net = build_sphere_net(dimension, 80.0, 1.0);
  t.net10_size = k_net.points.size();
  t.net80_size = l_net.points.size();
  t.c1 = static_cast<double>(t.net10_size) * static_cast<double>(t.net80_size);

  t.c_max = std::max(std::max(t.c1, t.c2), std::max(t.c3, t.c4));
  t.c_tilde = 1.0 / (4.0 * t.c_max * t.c_max);

  t.dth_moment = law.tail_moment(dimension, 0.0);
  t.finite_dth_moment = t.dth_moment != kInf;
  if (t.finite_dth_moment) {
    t.lambda0 = t.c_tilde / t.dth_moment;
    t.scale_base = std::pow(t.dth_moment, 1.0 / dimension) / 10.0;
  } else {
    t.lambda0 = 0.0;
    t.scale_base = std::numeric_limits<double>::quiet_NaN();
  }
  return t;
}

BoundChain propagate_bounds(double base_bound, const std::function<double(double)>& g, int n_steps,
                            std::optional<double> s) {
  if (n_steps < 1) throw std::invalid_argument("propagate_bounds: need at least one step");
  if (!(base_bound >= 0.0) || base_bound > 0.5)
    throw std::domain_error("propagate_bounds: base bound " + num17(base_bound) +
                            " violates the hypothesis f <= 1/2 on the base interval "
                            "(the intensity is too large for this certificate)");

  BoundChain chain;
  chain.base_interval_bound = base_bound;
  chain.s_exponent = s;
  chain.scales.resize(static_cast<std::size_t>(n_steps) + 1);
  chain.g_values.resize(chain.scales.size());
  chain.f_quadratic.resize(chain.scales.size());
  chain.f_linear.resize(chain.scales.size());
  chain.f_bounds.resize(chain.scales.size());

  chain.scales[0] = 1.0;
  chain.g_values[0] = g(1.0);
  chain.f_quadratic[0] = chain.f_linear[0] = chain.f_bounds[0] = base_bound;

  for (int n = 1; n <= n_steps; ++n) {
    const double scale = std::pow(10.0, n);
    const double gn = g(scale);
    if (!(gn >= 0.0) || gn > 0.25)
      throw std::domain_error("propagate_bounds: error term " + num17(gn) + " at scale " +
                              num17(scale) +
                              " violates the hypothesis g <= 1/4 "
                              "(the intensity is too large for this certificate)");
    const double prev = chain.f_bounds[static_cast<std::size_t>(n) - 1];
    const auto i = static_cast<std::size_t>(n);
    chain.scales[i] = scale;
    chain.g_values[i] = gn;
    chain.f_quadratic[i] = prev * prev + gn;
    chain.f_linear[i] = prev / 2.0 + gn;
    chain.f_bounds[i] = std::min(chain.f_quadratic[i], chain.f_linear[i]);
  }
  if (chain.g_values[0] > 0.25)
    throw std::domain_error("propagate_bounds: error term " + num17(chain.g_values[0]) +
                            " on the base interval violates the hypothesis g <= 1/4");

  if (s) {
    // Desk-scale proxy for the weighted integral of f: partial sums of
    // 10^(n s) F_n plus a geometric remainder from the observed decay.
    double partial = 0.0;
    for (std::size_t i = 0; i < chain.f_bounds.size(); ++i)
      partial += std::pow(10.0, *s * static_cast<double>(i)) * chain.f_bounds[i];
    chain.s_partial_sum = partial;

    double ratio = 0.0;
    const std::size_t last = chain.f_bounds.size() - 1;
    const std::size_t from = last >= 3 ? last - 3 : 0;
    for (std::size_t i = from; i < last; ++i) {
      if (chain.f_bounds[i] <= 0.0) continue;
      ratio = std::max(ratio, std::pow(10.0, *s) * chain.f_bounds[i + 1] / chain.f_bounds[i]);
    }
    const double last_term = std::pow(10.0, *s * static_cast<double>(last)) * chain.f_bounds[last];
    if (ratio > 0.0 && ratio < 1.0) {
      chain.s_verdict = BoundChain::SVerdict::Converges;
      chain.s_remainder_bound = last_term * ratio / (1.0 - ratio);
    } else if (last_term == 0.0) {
      chain.s_verdict = BoundChain::SVerdict::Converges;
      chain.s_remainder_bound = 0.0;
    } else {
      chain.s_verdict = BoundChain::SVerdict::Inconclusive;
      chain.s_remainder_bound = kInf;
    }
  }
  return chain;
}

std::function<double(double)> chain_error_term(const ModelParams& params,
                                               const ConstantsTable& table) {
  if (!table.finite_dth_moment)
    throw std::invalid_argument("chain_error_term: E(R^d) is infinite; no certificate exists");
  const double lc2 = params.intensity * table.c_max * table.c_max;
  const double a = table.scale_base;
  const int d = params.dimension;
  const RadiusLaw law = params.law;
  return [lc2, a, d, law](double alpha) { return lc2 * law.tail_moment(d, a * alpha / 10.0); };
}

double analytic_base_bound(const ModelParams& params, const ConstantsTable& table) {
  if (!table.finite_dth_moment)
    throw std::invalid_argument("analytic_base_bound: E(R^d) is infinite; no certificate exists");
  // sup over [1,10] of C pi(A alpha) <= C lambda c4 (10 A)^d, and (10 A)^d = E(R^d).
  return params.intensity * table.c_max * table.c4 * table.dth_moment;
}

namespace {

const Estimate* find_scale(const std::map<double, Estimate>& m, double alpha) {
  const auto it = m.lower_bound(alpha * (1.0 - 1e-9));
  if (it == m.end() || it->first > alpha * (1.0 + 1e-9)) return nullptr;
  return &it->second;
}

}  // namespace

AuditReport audit_inequalities(const std::map<double, Estimate>& pi_estimates,
                               const std::map<double, Estimate>& reach_estimates,
                               const ConstantsTable& table, const ModelParams& params) {
  AuditReport report;
  const int d = params.dimension;
  const double lambda = params.intensity;
  const double c = table.c_max;

  for (const auto& [alpha, pi_a] : pi_estimates) {
    const Estimate* pi_10a = find_scale(pi_estimates, 10.0 * alpha);
    if (pi_10a == nullptr) continue;
    const Estimate* reach_a = find_scale(reach_estimates, alpha);
    if (reach_a == nullptr)
      throw std::invalid_argument("audit_inequalities: missing reach estimate at alpha = " +
                                  num17(alpha));

    AuditRow row;
    row.alpha = alpha;
    const double tail = params.law.tail_moment(d, alpha);
    const double pi_a_high = std::min(1.0, pi_a.ci_high + pi_a.trunc_bias_bound);

    row.recursion.lhs = pi_10a->ci_low;
    row.recursion.rhs = c * pi_a_high * pi_a_high + lambda * c * tail;
    row.reach.lhs = reach_a->ci_low;
    row.reach.rhs = pi_a_high + lambda * c * tail;
    row.linear.lhs = pi_a.ci_low;
    row.linear.rhs = c * lambda * ipow(alpha, d);
    for (IneqVerdict* v : {&row.recursion, &row.reach, &row.linear}) {
      v->margin = v->rhs - v->lhs;
      v->pass = v->lhs <= v->rhs;
    }
    report.rows.push_back(row);
  }
  if (report.rows.empty())
    throw std::invalid_argument("audit_inequalities: no decadic scale pairs in the estimates");
  report.pass = true;
  for (const AuditRow& row : report.rows)
    report.pass = report.pass && row.recursion.pass && row.reach.pass && row.linear.pass;
  return report;
}

double covered_ball_probability(const ModelParams& params, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("covered_ball_probability: rho must be >= 0");
  const int d = params.dimension;
  const double moment = params.law.plus_power_moment(rho, d);
  if (moment == kInf) return 1.0;
  return -std::expm1(-params.intensity * unit_ball_volume(d) * moment);
}

double covered_ball_probability_truncated(const ModelParams& params, double rho, double r_cut) {
  if (!(rho >= 0.0) || !(r_cut > 0.0))
    throw std::invalid_argument("covered_ball_probability_truncated: bad rho or r_cut");
  const int d = params.dimension;
  const double moment = params.law.plus_power_moment(rho, d, rho + r_cut) +
                        ipow(r_cut, d) * params.law.tail_prob(rho + r_cut);
  return -std::expm1(-params.intensity * unit_ball_volume(d) * moment);
}

double coverage_lower_bound(const ModelParams& params, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("coverage_lower_bound: rho must be >= 0");
  const int d = params.dimension;
  const double tail = params.law.tail_moment(d, 2.0 * rho);
  if (tail == kInf) return 1.0;
  return -std::expm1(-params.intensity * unit_ball_volume(d) * (ipow(0.5, d) * tail));
}

Estimate estimate_coverage(const ModelParams& params, double rho, double r_cut, std::uint64_t n,
                           std::uint64_t master_seed, int workers) {
  if (!(rho >= 0.0) || !(r_cut > 0.0))
    throw std::invalid_argument("estimate_coverage: bad rho or r_cut");
  const int d = params.dimension;
  const double kappa = unit_ball_volume(d);

  // Dyadic shells of the sampling disc with their thinning levels.
  struct Shell {
    double inner, outer;
    double mean;       // expected kept count
    double threshold;  // kept balls have radius >= threshold
  };
  std::vector<Shell> shells;
  double a = 0.0;
  double b = std::min(std::max(1.0, 2.0 * rho), r_cut);
  for (;;) {
    const double thr = a + rho;
    const double keep = params.law.tail_prob(thr);
    shells.push_back({a, b, params.intensity * kappa * (ipow(b, d) - ipow(a, d)) * keep, thr});
    if (b >= r_cut) break;
    a = b;
    b = std::min(2.0 * b, r_cut);
  }

  const unsigned hw = std::thread::hardware_concurrency();
  const int nworkers = workers > 0 ? workers : (hw ? static_cast<int>(hw) : 1);
  std::vector<std::uint64_t> tallies(static_cast<std::size_t>(std::max(nworkers, 1)), 0);

  parallel_for(n, nworkers, [&](int w, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng = Rng::stream(master_seed, i);
      bool success = false;
      for (const Shell& sh : shells) {
        if (success) break;
        if (!(sh.mean > 0.0)) continue;
        const std::uint64_t count = rng.poisson(sh.mean);
        for (std::uint64_t kball = 0; kball < count && !success; ++kball) {
          // center radius with density proportional to s^(d-1) on the shell
          const double u = rng.uniform();
          const double sd = ipow(sh.inner, d) + u * (ipow(sh.outer, d) - ipow(sh.inner, d));
          const double s = std::pow(sd, 1.0 / d);
          const double r = params.law.sample_at_least(sh.threshold, rng);
          if (r >= s + rho) success = true;
        }
      }
      if (success) ++tallies[static_cast<std::size_t>(w)];
    }
  });

  Estimate est;
  est.trials = n;
  est.master_seed = master_seed;
  for (std::uint64_t t : tallies) est.successes += t;
  est.p_hat = n ? static_cast<double>(est.successes) / static_cast<double>(n) : 0.0;
  const WilsonInterval ci = wilson95(est.successes, est.trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.streams = {{0, n}};
  const double full = covered_ball_probability(params, rho);
  const double truncated = covered_ball_probability_truncated(params, rho, r_cut);
  est.trunc_bias_bound = std::max(0.0, full - truncated);
  est.estimand = "coverage rho=" + num17(rho) + " d=" + std::to_string(d) +
                 " lambda=" + num17(params.intensity) + " law=" + params.law.to_spec() +
                 " rcut=" + num17(r_cut);
  return est;
}

}  // namespace percolab
