#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endslab/core.hpp"

namespace endslab {

// A finite excerpt of a space: every point within `horizon` of `origin`,
// the edges among them, and shortest-path distances computed inside the
// excerpt. Immutable after construction.
class Window {
 public:
  Window() = default;
  Window(PointId origin, Dist horizon, std::vector<PointId> points,
         std::vector<std::vector<std::pair<int, Dist>>> adjacency);

  const PointId& origin() const { return origin_; }
  Dist horizon() const { return horizon_; }
  std::size_t size() const { return points_.size(); }

  const std::vector<PointId>& points() const { return points_; }
  const PointId& point(int i) const { return points_[static_cast<std::size_t>(i)]; }

  // Dense index of a canonical point, or -1 when absent.
  int index_of(const PointId& p) const;
  bool contains(const PointId& p) const { return index_of(p) >= 0; }

  // Neighbours of point i as (index, edge weight), sorted by index.
  const std::vector<std::pair<int, Dist>>& neighbors(int i) const {
    return adj_[static_cast<std::size_t>(i)];
  }

  // Shortest-path distance from the origin (kUnreachable if disconnected).
  Dist dist_to_origin(int i) const { return dist_origin_[static_cast<std::size_t>(i)]; }

  // Shortest-path distance between two window points, computed inside the
  // window graph. For the bundled geodesic spaces this equals the space
  // metric because their balls are geodesically convex.
  Dist distance(int a, int b) const;

  // Full shortest-path row from `from`, truncated at `cutoff` (entries
  // beyond it are kUnreachable). cutoff = kUnreachable means exact.
  std::vector<Dist> distance_row(int from, Dist cutoff = kUnreachable) const;

  // Points at distance exactly horizon from the origin.
  std::vector<int> frontier() const;

  std::string to_json_string(int indent = -1) const;
  static Window from_json_string(const std::string& text);

 private:
  PointId origin_;
  Dist horizon_ = 0;
  std::vector<PointId> points_;
  std::unordered_map<PointId, int> index_;
  std::vector<std::vector<std::pair<int, Dist>>> adj_;
  std::vector<Dist> dist_origin_;
};

}  // namespace endslab
