#pragma once

#include <cstdint>
#include <vector>

#include "percolab/boolean_model.hpp"

namespace percolab {

// Statistics of the connected component of the ball union containing the
// origin. An empty component reports covered = false and zeros. When
// boundary_hit is false the component stays inside the window, so diameter
// and reach are exact for the infinite-volume model up to the realization's
// truncation certificate; when true they are lower bounds.
struct ClusterSummary {
  bool covered = false;
  std::uint64_t ball_count = 0;  // N
  double diameter = 0.0;         // D: sup distance between component points
  double reach = 0.0;            // M: sup norm over component points
  bool boundary_hit = false;
};

// Connectivity analysis with reusable scratch buffers. Components are built
// with a uniform grid over ball centers plus union-find; balls above the
// 99th radius percentile go to a separate list checked against everything,
// which keeps the grid cells meaningful under heavy-tailed laws.
class ClusterAnalyzer {
 public:
  /// Indices of the balls in the origin component (ascending); empty when no
  /// ball contains the origin. cell_scale multiplies the grid cell side and
  /// must not change the result (exercised by tests).
  const std::vector<std::uint32_t>& origin_cluster(const Realization& real, double cell_scale = 1.0);

  ClusterSummary stats(const Realization& real, double cell_scale = 1.0);

 private:
  void build(const Realization& real, double cell_scale);
  std::uint32_t find(std::uint32_t x);
  void unite(std::uint32_t a, std::uint32_t b);

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> rank_;
  std::vector<double> radii_scratch_;
  std::vector<std::uint32_t> large_;
  std::vector<std::uint32_t> cell_of_;
  std::vector<std::uint32_t> cell_count_;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> cluster_;
  std::vector<double> span_scratch_;
};

/// One-shot convenience wrappers.
std::vector<std::uint32_t> origin_cluster(const Realization& real);
ClusterSummary cluster_stats(const Realization& real);

}  // namespace percolab
