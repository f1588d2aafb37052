#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "percolab/estimators.hpp"

namespace percolab {

// The explicit constants of the crossing-probability machinery for one
// dimension and radius law. c2 = c4 = |B(0,10)| and c3 = |B(0,100)| in closed
// form; c1 is the product of the cardinalities of greedy 1-nets on the
// spheres of radius 10 and 80. c_max makes all three scaling inequalities
// hold with a single constant. lambda0 = c_tilde / E(R^d) is the certified
// subcritical threshold; it is 0 and scale_base is NaN when E(R^d) diverges.
struct ConstantsTable {
  int dimension = 1;
  RadiusLaw law = RadiusLaw::constant(1.0);
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c_max = 0.0;
  double c_tilde = 0.0;
  double dth_moment = 0.0;  // E(R^d), may be +inf
  double lambda0 = 0.0;
  double scale_base = 0.0;  // A = E(R^d)^(1/d) / 10
  bool finite_dth_moment = true;
  std::size_t net10_size = 0;
  std::size_t net80_size = 0;
};

ConstantsTable compute_constants(int dimension, const RadiusLaw& law);

// Certified upper bounds on the normalized crossing probability
// f(alpha) = C * pi(A * alpha) across decadic scales. f_bounds[n] is the
// elementwise minimum of the quadratic recursion F(n) <= F(n-1)^2 + G(n) and
// the linearization F(n) <= F(n-1)/2 + G(n); both are valid once the base
// bound is <= 1/2 and every G(n) <= 1/4.
struct BoundChain {
  std::vector<double> scales;    // 10^n, n = 0..steps
  std::vector<double> f_bounds;  // certified; f_bounds[0] = base_interval_bound
  std::vector<double> f_quadratic;
  std::vector<double> f_linear;
  std::vector<double> g_values;  // exact G(n) = g(10^n)
  double base_interval_bound = 0.0;
  std::string base_source;  // "analytic" or "monte-carlo"

  std::optional<double> s_exponent;
  enum class SVerdict { NotRequested, Converges, Inconclusive };
  SVerdict s_verdict = SVerdict::NotRequested;
  double s_partial_sum = 0.0;      // sum of 10^(n s) f_bounds[n] over the range
  double s_remainder_bound = 0.0;  // geometric tail bound when convergent
};

/// g must be nonincreasing (tail integrals are). Throws std::domain_error
/// when a hypothesis fails, naming the offending scale.
BoundChain propagate_bounds(double base_bound, const std::function<double(double)>& g, int n_steps,
                            std::optional<double> s = std::nullopt);

/// lambda * C^2 * (tail d-moment at A*alpha/10): the exact error term of the
/// decadic recursion for these parameters.
std::function<double(double)> chain_error_term(const ModelParams& params,
                                               const ConstantsTable& table);

/// Analytic base bound: sup over [1,10] of C*pi(A*alpha) <= lambda*C*c4*E(R^d).
double analytic_base_bound(const ModelParams& params, const ConstantsTable& table);

struct IneqVerdict {
  bool pass = false;
  double lhs = 0.0;   // conservative (lower-CI) side
  double rhs = 0.0;   // conservative (upper-CI + truncation bias) side
  double margin = 0.0;
};

struct AuditRow {
  double alpha = 0.0;
  IneqVerdict recursion;  // pi(10a) <= C pi(a)^2 + lambda C tail(d, a)
  IneqVerdict reach;      // P(M >= 9a) <= pi(a) + lambda C tail(d, a)
  IneqVerdict linear;     // pi(a) <= C lambda a^d
};

struct AuditReport {
  std::vector<AuditRow> rows;
  bool pass = false;
};

/// pi_estimates: crossing estimates keyed by alpha (decadic pairs required);
/// reach_estimates: reach estimates keyed by the same alpha (threshold 9a).
AuditReport audit_inequalities(const std::map<double, Estimate>& pi_estimates,
                               const std::map<double, Estimate>& reach_estimates,
                               const ConstantsTable& table, const ModelParams& params);

/// Exact probability that some ball contains B(0,rho):
/// 1 - exp(-lambda kappa_d E[((R-rho)^+)^d]); equals 1 when E(R^d) diverges.
double covered_ball_probability(const ModelParams& params, double rho);

/// Same quantity for the process restricted to centers with |c| <= r_cut.
double covered_ball_probability_truncated(const ModelParams& params, double rho, double r_cut);

/// Closed-form lower bound: 1 - exp(-lambda 2^-d kappa_d tail(d, 2 rho)).
double coverage_lower_bound(const ModelParams& params, double rho);

// Monte Carlo estimate of the truncated covering probability by exact
// sampling of the balls large enough to matter: the disc of radius r_cut is
// split into dyadic shells and each shell is thinned to radii >= shell
// distance + rho, which keeps every candidate covering ball. trunc_bias_bound
// carries the closed-form gap to the infinite-volume probability.
Estimate estimate_coverage(const ModelParams& params, double rho, double r_cut, std::uint64_t n,
                           std::uint64_t master_seed, int workers = 0);

}  // namespace percolab
