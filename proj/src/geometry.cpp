#include "percolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace percolab {

double dist(const Vec& a, const Vec& b, int dim) { return std::sqrt(dist_squared(a, b, dim)); }

double norm(const Vec& a, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

double sup_norm(const Vec& a, int dim) {
  double m = 0.0;
  for (int i = 0; i < dim; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double unit_ball_volume(int k) {
  if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  double even = 1.0;  // kappa_0
  double odd = 2.0;   // kappa_1
  if (k == 0) return even;
  if (k == 1) return odd;
  for (int j = 2; j <= k; ++j) {
    if (j % 2 == 0)
      even *= 2.0 * M_PI / j;
    else
      odd *= 2.0 * M_PI / j;
  }
  return (k % 2 == 0) ? even : odd;
}

bool balls_intersect(const Ball& a, const Ball& b, int dim) {
  const double r = a.radius + b.radius;
  return dist_squared(a.center, b.center, dim) < r * r;
}

double pair_span(const Ball& a, const Ball& b, int dim) {
  return dist(a.center, b.center, dim) + a.radius + b.radius;
}

namespace {

// Spatial hash over already-selected net points; cell side = spacing so a
// covering point is always in one of the 3^d neighboring cells.
class NetHash {
 public:
  NetHash(int dim, double cell) : dim_(dim), cell_(cell) {}

  void insert(const Vec& p, std::size_t index) { cells_[key(p)].push_back(index); }

  bool covered_within(const Vec& p, double radius, const std::vector<Vec>& pts) const {
    const double r2 = radius * radius;
    std::array<std::int64_t, kMaxDim> base{};
    for (int i = 0; i < dim_; ++i) base[i] = cell_index(p[i]);
    std::array<int, kMaxDim> off{};
    for (int i = 0; i < dim_; ++i) off[i] = -1;
    for (;;) {
      std::int64_t k = 0;
      for (int i = 0; i < dim_; ++i) k = k * kStride + (base[i] + off[i]);
      auto it = cells_.find(k);
      if (it != cells_.end()) {
        for (std::size_t idx : it->second)
          if (dist_squared(p, pts[idx], dim_) <= r2) return true;
      }
      int i = 0;
      for (; i < dim_; ++i) {
        if (++off[i] <= 1) break;
        off[i] = -1;
      }
      if (i == dim_) return false;
    }
  }

 private:
  static constexpr std::int64_t kStride = 1 << 21;

  std::int64_t cell_index(double x) const { return static_cast<std::int64_t>(std::floor(x / cell_)); }

  std::int64_t key(const Vec& p) const {
    std::int64_t k = 0;
    for (int i = 0; i < dim_; ++i) k = k * kStride + cell_index(p[i]);
    return k;
  }

  int dim_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

SphereNet build_net_circle(double radius, double spacing, double step) {
  SphereNet net{2, radius, spacing, {}};
  const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * M_PI * radius / step));
  // Chord `spacing` as an angle at the center.
  const double mark = 2.0 * std::asin(spacing / (2.0 * radius));
  const double dtheta = 2.0 * M_PI / static_cast<double>(n);
  std::vector<bool> covered(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (covered[j]) continue;
    const double theta = -M_PI + dtheta * static_cast<double>(j);
    net.points.push_back(Vec{radius * std::cos(theta), radius * std::sin(theta), 0.0, 0.0});
    const auto reach = static_cast<std::size_t>(std::floor(mark / dtheta));
    for (std::size_t s = 0; s <= reach && s < n; ++s) {
      covered[(j + s) % n] = true;
      covered[(j + n - s) % n] = true;
    }
  }
  return net;
}

SphereNet build_net_lattice(int dim, double radius, double spacing, double step,
                            std::size_t candidate_budget) {
  const double gap = step * std::sqrt(static_cast<double>(dim));
  const double mark = spacing - gap;
  if (mark <= 0.0)
    throw std::invalid_argument(
        "build_sphere_net: candidate grid too coarse to certify coverage; increase grid density");

  const double area = dim * unit_ball_volume(dim) * std::pow(radius, dim - 1);
  const double est = area * gap / std::pow(step, dim) * 1.5;
  if (est > static_cast<double>(candidate_budget))
    throw std::length_error("build_sphere_net: candidate grid exceeds budget at this dimension/radius");

  SphereNet net{dim, radius, spacing, {}};
  NetHash hash(dim, spacing);

  const double delta = gap / 2.0;  // shell half-width: nearest lattice point is inside
  const double outer = radius + delta;
  const auto lo_idx = static_cast<std::int64_t>(std::floor(-outer / step));
  const auto hi_idx = static_cast<std::int64_t>(std::ceil(outer / step));

  std::array<std::int64_t, kMaxDim> idx{};
  for (int i = 0; i + 1 < dim; ++i) idx[i] = lo_idx;

  const auto try_candidate = [&](const Vec& q) {
    const double nq = norm(q, dim);
    if (nq == 0.0) return;
    Vec p{};
    for (int i = 0; i < dim; ++i) p[i] = q[i] * (radius / nq);
    if (!hash.covered_within(p, mark, net.points)) {
      net.points.push_back(p);
      hash.insert(p, net.points.size() - 1);
    }
  };

  for (;;) {
    double s2 = 0.0;
    Vec q{};
    for (int i = 0; i + 1 < dim; ++i) {
      q[i] = static_cast<double>(idx[i]) * step;
      s2 += q[i] * q[i];
    }
    const double hi2 = outer * outer - s2;
    if (hi2 >= 0.0) {
      const double inner = radius - delta;
      const double lo2 = inner * inner - s2;
      const double hi = std::sqrt(hi2);
      const double lo = lo2 > 0.0 ? std::sqrt(lo2) : 0.0;
      // last coordinate in [-hi,-lo] and [lo,hi]
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        auto ja = static_cast<std::int64_t>(std::ceil((sgn < 0 ? -hi : lo) / step));
        auto jb = static_cast<std::int64_t>(std::floor((sgn < 0 ? -lo : hi) / step));
        if (lo == 0.0) {
          if (sgn < 0) jb = std::min<std::int64_t>(jb, -1);
          if (sgn > 0) ja = std::max<std::int64_t>(ja, 1);
        }
        for (std::int64_t j = ja; j <= jb; ++j) {
          q[dim - 1] = static_cast<double>(j) * step;
          try_candidate(q);
        }
      }
      if (lo == 0.0) {
        q[dim - 1] = 0.0;
        try_candidate(q);
      }
    }
    int i = 0;
    for (; i + 1 < dim; ++i) {
      if (++idx[i] <= hi_idx) break;
      idx[i] = lo_idx;
    }
    if (i + 1 >= dim) break;
  }
  return net;
}

}  // namespace

SphereNet build_sphere_net(int dim, double radius, double spacing, std::size_t candidate_budget) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("build_sphere_net: dimension out of range");
  if (!(radius > spacing) || !(spacing > 0.0))
    throw std::invalid_argument("build_sphere_net: require radius > spacing > 0");

  if (dim == 1)
    return SphereNet{1, radius, spacing, {Vec{-radius, 0, 0, 0}, Vec{radius, 0, 0, 0}}};

  const double step = spacing / 10.0;
  if (dim == 2) return build_net_circle(radius, spacing, step);
  return build_net_lattice(dim, radius, spacing, step, candidate_budget);
}

}  // namespace percolab
