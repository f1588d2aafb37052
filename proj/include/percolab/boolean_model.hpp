#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "percolab/geometry.hpp"
#include "percolab/radius_law.hpp"

namespace percolab {

struct ModelParams {
  int dimension = 1;
  double intensity = 0.0;  // points per unit volume
  RadiusLaw law = RadiusLaw::constant(1.0);
};

/// Observation window [-L, L]^d.
struct Window {
  double half_width = 0.0;
};

// One finite-window draw of the marked point process. Centers are sampled
// uniformly on the halo box [-(L+r_cut), L+r_cut]^d with a Poisson count;
// radii are full draws from the law (r_cut only limits how far outside the
// window centers are placed). truncation_error bounds the probability that
// some omitted far center carries a ball meeting the window.
struct Realization {
  std::vector<Ball> balls;
  ModelParams params;
  Window window;
  double r_cut = 0.0;
  std::uint64_t seed = 0;
  double truncation_error = 0.0;
};

/// min(1, lambda * integral over r > r_cut of (2L+2r)^d nu(dr)); returns 1
/// when E(R^d) is infinite. Any omitted center sits at distance > r_cut from
/// the window, so its ball must have radius > r_cut to reach it, and the
/// Minkowski volume |W (+) B(0,r)| is over-bounded by the cube (2L+2r)^d.
double truncation_error_bound(const ModelParams& params, const Window& window, double r_cut);

/// Deterministic in seed; throws if the expected count exceeds the budget.
Realization sample_realization(const ModelParams& params, const Window& window, double r_cut,
                               std::uint64_t seed, double max_expected_count = 5e7);

/// Same contract, reusing the ball storage of `out`.
void sample_realization_into(const ModelParams& params, const Window& window, double r_cut,
                             std::uint64_t seed, Realization& out, double max_expected_count = 5e7);

/// CSV dump: header `# d=.. lambda=.. L=.. rcut=.. seed=.. trunc_err=..`,
/// then one `c1,...,cd,r` line per ball at 17 significant digits.
void write_realization_csv(std::ostream& os, const Realization& real);

}  // namespace percolab
