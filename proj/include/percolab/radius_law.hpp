#pragma once

#include <limits>
#include <string>
#include <vector>

#include "percolab/rng.hpp"

namespace percolab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A radius distribution with exact sampling and closed-form tail moments.
// Only closed-form kinds are supported: the bound machinery needs exact
// values of integral tails, not numeric estimates. A mixture is stored
// flattened into weighted scalar components.
//
// Spec strings: constant:RHO | uniform:A:B | pareto:GAMMA:RMIN |
//               mix:W1*SPEC1,W2*SPEC2,...   (weights normalized to sum 1)
class RadiusLaw {
 public:
  enum class Kind { Constant, Uniform, Pareto };

  struct Component {
    Kind kind;
    double a = 0.0;  // Constant: value; Uniform: lower; Pareto: gamma
    double b = 0.0;  // Uniform: upper; Pareto: r_min
  };

  static RadiusLaw constant(double rho);
  static RadiusLaw uniform(double lo, double hi);
  static RadiusLaw pareto(double gamma, double r_min);
  static RadiusLaw mixture(std::vector<std::pair<double, RadiusLaw>> parts);

  static RadiusLaw parse(const std::string& spec);
  std::string to_spec() const;

  double sample(Rng& rng) const;

  /// Draw from the law conditioned on R >= t. Requires tail_prob(t) > 0.
  double sample_at_least(double t, Rng& rng) const;

  /// nu([alpha, +inf[), the closed tail (atoms at alpha included).
  double tail_prob(double alpha) const;

  /// Integral of r^q over [a, b[; b may be +inf. Divergence yields +inf.
  double interval_moment(double q, double a, double b) const;

  /// Integral of r^q over [alpha, +inf[.
  double tail_moment(double q, double alpha) const { return interval_moment(q, alpha, kInf); }

  /// E[ ((R - shift)^+)^d ] restricted to R < cut; cut may be +inf.
  double plus_power_moment(double shift, int d, double cut = kInf) const;

  /// E[ min(R, cut)^d ].
  double min_power_moment(int d, double cut) const;

  /// Largest point of the support (+inf for Pareto tails).
  double support_upper() const;

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Component>& components() const { return comps_; }

 private:
  RadiusLaw() = default;

  std::vector<double> weights_;  // positive, sum to 1
  std::vector<Component> comps_;
};

/// Exact integer power by repeated multiplication; keeps equalities such as
/// (2x)^d == 2^d * x^d exact in floating point.
double ipow(double x, int k);

}  // namespace percolab
