#include "percolab/clusters.hpp"

#include <algorithm>
#include <cmath>

namespace percolab {

namespace {

constexpr std::uint32_t kNoCell = 0xFFFFFFFFu;
constexpr std::size_t kMaxCells = std::size_t{1} << 22;

}  // namespace

std::uint32_t ClusterAnalyzer::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void ClusterAnalyzer::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

void ClusterAnalyzer::build(const Realization& real, double cell_scale) {
  const int d = real.params.dimension;
  const auto n = static_cast<std::uint32_t>(real.balls.size());
  const std::vector<Ball>& balls = real.balls;

  parent_.resize(n);
  rank_.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
  large_.clear();
  if (n == 0) return;

  // Radius threshold separating the large-ball list from the grid.
  radii_scratch_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) radii_scratch_[i] = balls[i].radius;
  const auto q = static_cast<std::size_t>(0.99 * static_cast<double>(n));
  const std::size_t qi = std::min<std::size_t>(q, n - 1);
  std::nth_element(radii_scratch_.begin(), radii_scratch_.begin() + qi, radii_scratch_.end());
  const double r_small_max = radii_scratch_[qi];

  // Grid over the halo box, cells = cell_scale * max small radius, capped.
  const double extent = real.window.half_width + real.r_cut;
  double cell = cell_scale * r_small_max;
  auto cells_per_dim = static_cast<std::size_t>(std::ceil(2.0 * extent / cell));
  cells_per_dim = std::max<std::size_t>(cells_per_dim, 1);
  const auto max_per_dim =
      static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(kMaxCells), 1.0 / d)));
  cells_per_dim = std::min(cells_per_dim, std::max<std::size_t>(max_per_dim, 1));
  cell = 2.0 * extent / static_cast<double>(cells_per_dim);

  std::size_t total_cells = 1;
  for (int j = 0; j < d; ++j) total_cells *= cells_per_dim;

  const auto coord_cell = [&](double x) {
    auto c = static_cast<std::int64_t>((x + extent) / cell);
    if (c < 0) c = 0;
    if (c >= static_cast<std::int64_t>(cells_per_dim)) c = static_cast<std::int64_t>(cells_per_dim) - 1;
    return static_cast<std::size_t>(c);
  };

  cell_of_.resize(n);
  cell_count_.assign(total_cells + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (balls[i].radius > r_small_max) {
      large_.push_back(i);
      cell_of_[i] = kNoCell;
      continue;
    }
    std::size_t id = 0;
    for (int j = 0; j < d; ++j) id = id * cells_per_dim + coord_cell(balls[i].center[j]);
    cell_of_[i] = static_cast<std::uint32_t>(id);
    ++cell_count_[id + 1];
  }
  cell_start_.assign(cell_count_.begin(), cell_count_.end());
  for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
  order_.resize(n - large_.size());
  {
    std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (std::uint32_t i = 0; i < n; ++i)
      if (cell_of_[i] != kNoCell) order_[cursor[cell_of_[i]]++] = i;
  }

  // Small-small pairs through neighboring cells.
  std::array<std::size_t, kMaxDim> lo{}, hi{}, cur{};
  for (std::uint32_t i = 0; i < n; ++i) {
    if (cell_of_[i] == kNoCell) continue;
    const double reach = balls[i].radius + r_small_max;
    for (int j = 0; j < d; ++j) {
      lo[j] = coord_cell(balls[i].center[j] - reach);
      hi[j] = coord_cell(balls[i].center[j] + reach);
      cur[j] = lo[j];
    }
    for (;;) {
      std::size_t id = 0;
      for (int j = 0; j < d; ++j) id = id * cells_per_dim + cur[j];
      for (std::uint32_t k = cell_start_[id]; k < cell_start_[id + 1]; ++k) {
        const std::uint32_t j2 = order_[k];
        if (j2 > i && balls_intersect(balls[i], balls[j2], d)) unite(i, j2);
      }
      int j = 0;
      for (; j < d; ++j) {
        if (++cur[j] <= hi[j]) break;
        cur[j] = lo[j];
      }
      if (j == d) break;
    }
  }

  // Large balls against everything.
  for (std::uint32_t li : large_)
    for (std::uint32_t j2 = 0; j2 < n; ++j2)
      if (j2 != li && balls_intersect(balls[li], balls[j2], d)) unite(li, j2);
}

const std::vector<std::uint32_t>& ClusterAnalyzer::origin_cluster(const Realization& real,
                                                                  double cell_scale) {
  build(real, cell_scale);
  cluster_.clear();
  const int d = real.params.dimension;
  const auto n = static_cast<std::uint32_t>(real.balls.size());
  const Vec origin{};
  std::uint32_t root = kNoCell;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Ball& b = real.balls[i];
    if (dist_squared(b.center, origin, d) < b.radius * b.radius) {
      root = find(i);
      break;
    }
  }
  if (root == kNoCell) return cluster_;
  for (std::uint32_t i = 0; i < n; ++i)
    if (find(i) == root) cluster_.push_back(i);
  return cluster_;
}

ClusterSummary ClusterAnalyzer::stats(const Realization& real, double cell_scale) {
  const auto& members = origin_cluster(real, cell_scale);
  ClusterSummary s;
  if (members.empty()) return s;
  const int d = real.params.dimension;
  const std::vector<Ball>& balls = real.balls;

  s.covered = true;
  s.ball_count = members.size();

  // Reach and boundary flag in one pass; s_i = |c_i| + r_i also bounds any
  // pair span through the triangle inequality, which drives the pruning for
  // the exact diameter below.
  span_scratch_.resize(members.size());
  const Vec origin{};
  double s_max = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Ball& b = balls[members[k]];
    const double si = dist(b.center, origin, d) + b.radius;
    span_scratch_[k] = si;
    s_max = std::max(s_max, si);
    if (sup_norm(b.center, d) + b.radius > real.window.half_width) s.boundary_hit = true;
  }
  s.reach = s_max;

  double best = 0.0;
  for (std::size_t k = 0; k < members.size(); ++k)
    best = std::max(best, 2.0 * balls[members[k]].radius);

  // Warm start on the balls with the largest origin spans.
  const std::size_t m = members.size();
  std::vector<std::uint32_t> top(m);
  for (std::size_t k = 0; k < m; ++k) top[k] = static_cast<std::uint32_t>(k);
  const std::size_t kTop = std::min<std::size_t>(m, 64);
  std::partial_sort(top.begin(), top.begin() + kTop, top.end(),
                    [&](std::uint32_t a, std::uint32_t b) { return span_scratch_[a] > span_scratch_[b]; });
  for (std::size_t a = 0; a < kTop; ++a)
    for (std::size_t b = a; b < kTop; ++b)
      best = std::max(best, pair_span(balls[members[top[a]]], balls[members[top[b]]], d));

  // A pair can beat `best` only if both spans exceed best - s_max.
  std::vector<std::uint32_t> active;
  for (std::size_t k = 0; k < m; ++k)
    if (span_scratch_[k] + s_max > best) active.push_back(static_cast<std::uint32_t>(k));
  for (std::size_t a = 0; a < active.size(); ++a)
    for (std::size_t b = a; b < active.size(); ++b)
      best = std::max(best, pair_span(balls[members[active[a]]], balls[members[active[b]]], d));

  s.diameter = best;
  return s;
}

std::vector<std::uint32_t> origin_cluster(const Realization& real) {
  ClusterAnalyzer an;
  return an.origin_cluster(real);
}

ClusterSummary cluster_stats(const Realization& real) {
  ClusterAnalyzer an;
  return an.stats(real);
}

}  // namespace percolab
