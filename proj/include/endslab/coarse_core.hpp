#pragma once

#include <utility>
#include <vector>

#include "endslab/core.hpp"
#include "endslab/window.hpp"

namespace endslab {

using PointPair = std::pair<PointId, PointId>;
using PairSet = std::vector<PointPair>;

struct ControlledReport {
  bool controlled = false;
  Dist sup = 0;  // kUnreachable when some pair is disconnected
};

struct BoundedReport {
  bool bounded = false;
  Dist diameter = 0;
};

// Whether sup d(x,y) over the pairs is finite; reports the sup. A pair
// referencing a point outside the window is an input error.
ControlledReport is_controlled(const Window& w, const PairSet& pairs);

// Whether pts x pts has finite distance sup inside the window.
BoundedReport is_bounded(const Window& w, const std::vector<PointId>& pts);

// Exact set-level entourage algebra on window pairs, for checking that the
// threshold arithmetic over-approximates honestly.
PairSet pair_set_compose(const PairSet& p, const PairSet& q);
PairSet pair_set_inverse(const PairSet& p);

// All window pairs (x,y), x != y allowed both ways, with d(x,y) <= threshold.
// Quadratic; intended for small windows.
PairSet pairs_within(const Window& w, Dist threshold);

}  // namespace endslab
