#pragma once

#include "percolab/boolean_model.hpp"

namespace percolab {

// The estimable event families. All of them are increasing in the ball
// configuration: adding a ball never switches any of them from true to false.
enum class EventKind {
  Crossing,         // component of (balls centered in B(x,10a)) + B(x,a) escapes B(x,8a)
  FarBall,          // a ball centered outside B(0,10a) meets B(0,9a)
  LargeBall,        // a ball centered in B(0,100a) has radius >= a
  ReachAtLeast,     // origin-cluster reach M >= 9a
  DiameterAtLeast,  // origin-cluster diameter D >= t
};

struct EventSpec {
  EventKind kind = EventKind::Crossing;
  Vec x{};                 // Crossing only
  double alpha = 0.0;      // scale, > 0
  double threshold = 0.0;  // ReachAtLeast: 9*alpha; DiameterAtLeast: t
};

const char* event_kind_name(EventKind kind);
EventKind event_kind_from_name(const std::string& name);

// The crossing event at (x, alpha): take the sub-realization of balls with
// center strictly inside B(x, 10a), add the virtual seed ball B(x, a), and
// ask whether the connected component of the seed reaches norm 8a from x,
// i.e. some member ball has |c - x| + r >= 8a. Only centers inside B(x,10a)
// take part, so the window must contain that ball and the halo is
// irrelevant. Throws if the window is too small.
bool crossing_event(const Realization& real, const Vec& x, double alpha);

/// A ball with |c| >= 10a and |c| < r + 9a exists (decided on the sampled
/// set; far centers may be missing, bounded by the truncation certificate).
bool far_ball_event(const Realization& real, double alpha);

/// A ball with |c| < 100a and r >= a exists. Window must contain B(0,100a).
bool large_ball_event(const Realization& real, double alpha);

}  // namespace percolab
