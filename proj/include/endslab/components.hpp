#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/core.hpp"
#include "endslab/kernels.hpp"
#include "endslab/space.hpp"
#include "endslab/window.hpp"

namespace endslab {

// A K-chain: consecutive points at distance <= k, all outside the forbidden
// region it certifies.
struct Chain {
  std::vector<PointId> points;
  Dist k = 1;
};

struct ComponentClass {
  PointId id;                // lexicographically least canonical member
  std::vector<int> members;  // window indices, ascending
  bool live = false;         // contains a point on the window frontier
};

// Partition of window \ forbidden into K-components.
struct ComponentPartition {
  Dist k = 1;
  Dist forbidden_radius = 0;
  std::vector<ComponentClass> classes;  // sorted by id
  std::vector<int> class_of;            // window index -> class position, -1 when excluded

  std::int64_t live_count() const;
  int class_position_of_id(const PointId& id) const;
};

ComponentPartition k_components(const Window& w, const BoundedRegion& forbidden, Dist k,
                                kernels::Mode mode = kernels::Mode::parallel);

// K-hop path between x and y avoiding the forbidden region, or nullopt when
// they sit in distinct components. Deterministic shortest hop count.
std::optional<Chain> chain_between(const Window& w, const PointId& x, const PointId& y, Dist k,
                                   const BoundedRegion& forbidden);

enum class ProfileClass { finite, countable_growth, uncountable_growth, inconclusive };

struct EndProfile {
  Dist k = 1;
  int r_max = 1;
  Dist horizon = 0;
  std::vector<std::int64_t> counts;  // counts[i] is the live count at radius i+1
  ProfileClass cls = ProfileClass::inconclusive;
  std::int64_t finite_value = 0;

  std::string classification() const;
};

EndProfile end_profile(const Space& space, const PointId& xi, Dist k, int r_max, Dist margin,
                       const Limits& limits = {}, kernels::Mode mode = kernels::Mode::parallel);

// The inverse system of K-component partitions outside B(xi; r), r = 0..r_max,
// with the refinement (containment) maps and its threads: one maximal chain
// of classes per live class at r_max.
struct ThreadSystem {
  Window window;
  Dist k = 1;
  int r_max = 0;
  std::vector<ComponentPartition> partitions;  // index r
  std::vector<std::vector<int>> parent;        // parent[r][c] = class position at r-1 (r >= 1)

  struct Thread {
    PointId id;                // class id at r_max
    std::vector<int> classes;  // classes[r] = class position at radius r
  };
  std::vector<Thread> threads;  // sorted by id
};

ThreadSystem component_threads(const Space& space, const PointId& xi, Dist k, int r_max,
                               Dist margin, const Limits& limits = {},
                               kernels::Mode mode = kernels::Mode::parallel);

// Lazy exploration of one K-component of {p : forbidden_radius < d(xi,p) <= horizon},
// without materialising the ball. Only the start point's component is visited,
// so this scales to spaces whose windows would blow the point cap.
struct LazySearchResult {
  bool reached = false;          // target found (when a target was given)
  bool exhausted = false;        // component fully enumerated
  bool touched_horizon = false;  // some visited point at distance exactly horizon
  PointId least_point;           // canonical least visited point
  std::vector<PointId> path;     // K-hop chain start..target when reached
  std::size_t visited = 0;
};

LazySearchResult lazy_component_search(const Space& space, const BaseDistance& base,
                                       const PointId& start, const PointId* target, Dist k,
                                       Dist forbidden_radius, Dist horizon,
                                       const Limits& limits = {}, bool stop_at_horizon = false);

// Whether a and b lie in the same live K-component outside B(xi; r_max) --
// i.e. in the same component thread at that horizon.
bool same_thread(const Space& space, const PointId& xi, const PointId& a, const PointId& b,
                 Dist k, int r_max, Dist margin, const Limits& limits = {});

// Serialisation.
nlohmann::ordered_json partition_to_json(const Window& w, const ComponentPartition& p,
                                         bool with_members);
nlohmann::ordered_json profile_to_json(const Space& space, const PointId& xi,
                                       const EndProfile& profile);
std::string profile_to_csv(const EndProfile& profile);
nlohmann::ordered_json threads_to_json(const Space& space, const PointId& xi,
                                       const ThreadSystem& ts, bool with_members);
std::string threads_to_dot(const ThreadSystem& ts);

}  // namespace endslab
