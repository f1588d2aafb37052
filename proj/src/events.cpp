#include "percolab/events.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace percolab {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Crossing: return "crossing";
    case EventKind::FarBall: return "far_ball";
    case EventKind::LargeBall: return "large_ball";
    case EventKind::ReachAtLeast: return "reach";
    case EventKind::DiameterAtLeast: return "diameter";
  }
  return "?";
}

EventKind event_kind_from_name(const std::string& name) {
  if (name == "crossing") return EventKind::Crossing;
  if (name == "far_ball") return EventKind::FarBall;
  if (name == "large_ball") return EventKind::LargeBall;
  if (name == "reach") return EventKind::ReachAtLeast;
  if (name == "diameter") return EventKind::DiameterAtLeast;
  throw std::invalid_argument("unknown event kind '" + name + "'");
}

bool crossing_event(const Realization& real, const Vec& x, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("crossing_event: alpha must be > 0");
  const int d = real.params.dimension;
  if (sup_norm(x, d) + 10.0 * alpha > real.window.half_width)
    throw std::invalid_argument("crossing_event: window does not contain B(x, 10a)");

  const double r10 = 10.0 * alpha;
  const double r8 = 8.0 * alpha;

  std::vector<std::uint32_t> local;
  for (std::uint32_t i = 0; i < real.balls.size(); ++i)
    if (dist_squared(real.balls[i].center, x, d) < r10 * r10) local.push_back(i);
  if (local.empty()) return false;

  // BFS from the virtual seed ball B(x, alpha) over the local adjacency.
  const Ball seed{x, alpha};
  std::vector<char> in_comp(local.size(), 0);
  std::vector<std::uint32_t> queue;
  for (std::size_t k = 0; k < local.size(); ++k)
    if (balls_intersect(real.balls[local[k]], seed, d)) {
      in_comp[k] = 1;
      queue.push_back(static_cast<std::uint32_t>(k));
    }
  while (!queue.empty()) {
    const std::uint32_t k = queue.back();
    queue.pop_back();
    const Ball& b = real.balls[local[k]];
    if (dist(b.center, x, d) + b.radius >= r8) return true;
    for (std::size_t j = 0; j < local.size(); ++j)
      if (!in_comp[j] && balls_intersect(b, real.balls[local[j]], d)) {
        in_comp[j] = 1;
        queue.push_back(static_cast<std::uint32_t>(j));
      }
  }
  return false;
}

bool far_ball_event(const Realization& real, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("far_ball_event: alpha must be > 0");
  const int d = real.params.dimension;
  const Vec origin{};
  const double r10 = 10.0 * alpha;
  const double r9 = 9.0 * alpha;
  for (const Ball& b : real.balls) {
    const double nc = dist(b.center, origin, d);
    if (nc >= r10 && nc < b.radius + r9) return true;
  }
  return false;
}

bool large_ball_event(const Realization& real, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("large_ball_event: alpha must be > 0");
  const int d = real.params.dimension;
  if (100.0 * alpha > real.window.half_width)
    throw std::invalid_argument("large_ball_event: window does not contain B(0, 100a)");
  const Vec origin{};
  const double r100 = 100.0 * alpha;
  for (const Ball& b : real.balls)
    if (b.radius >= alpha && dist_squared(b.center, origin, d) < r100 * r100) return true;
  return false;
}

}  // namespace percolab
