#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace percolab {

// The supported ambient dimension envelope. Coordinates are stored inline so
// realizations with millions of balls stay allocation-free.
inline constexpr int kMaxDim = 4;

using Vec = std::array<double, kMaxDim>;

struct Ball {
  Vec center{};
  double radius = 0.0;
};

inline double dist_squared(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dist(const Vec& a, const Vec& b, int dim);
double norm(const Vec& a, int dim);
double sup_norm(const Vec& a, int dim);

/// Lebesgue volume of the unit k-ball via kappa_k = kappa_{k-2} * 2*pi / k.
double unit_ball_volume(int k);

/// Open-ball intersection: strict inequality, tangent balls do not meet.
bool balls_intersect(const Ball& a, const Ball& b, int dim);

/// sup of ||x - y|| over x in a, y in b: ||c_a - c_b|| + r_a + r_b.
double pair_span(const Ball& a, const Ball& b, int dim);

// A finite set of points on the sphere of radius `radius` such that every
// point of the sphere lies within `spacing` of one of them.
struct SphereNet {
  int dim = 0;
  double radius = 0.0;
  double spacing = 0.0;
  std::vector<Vec> points;
};

// Greedy cover over a deterministic candidate grid of step spacing/10.
// The construction is deterministic for fixed inputs:
//   d = 1: the sphere is the pair {-radius, +radius}.
//   d = 2: candidates on an angular grid swept in increasing angle, marked
//          covered at the full spacing (consecutive net points sit about one
//          spacing apart, so the covering radius is about spacing/2).
//   d >= 3: candidates are lattice points near the sphere projected onto it,
//          visited in lexicographic order; the marking radius is shrunk by
//          the candidate-gap bound step*sqrt(d) so the cover is certified for
//          the whole sphere, not just the grid.
// Throws if the candidate grid would exceed `candidate_budget` points.
SphereNet build_sphere_net(int dim, double radius, double spacing,
                           std::size_t candidate_budget = 200'000'000);

}  // namespace percolab
