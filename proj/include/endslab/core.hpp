#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace endslab {

// Canonical point name. Uniqueness of the canonical form is the job of the
// space that mints it (reduced words, integer tuples, tree paths).
using PointId = std::string;

// Graph-metric distance. Non-negative; kUnreachable stands for +infinity.
using Dist = std::int64_t;
inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

inline bool dist_finite(Dist d) { return d != kUnreachable; }

// Saturating addition so +infinity propagates through path relaxations.
inline Dist dist_add(Dist a, Dist b) {
  if (a == kUnreachable || b == kUnreachable) return kUnreachable;
  return a + b;
}

// Malformed input: bad descriptor, non-canonical point, broken certificate.
// CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exploration exceeded a configured cap. CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration guards. point_cap bounds window / lazy-search sizes,
// degree_cap flags runaway branching in user-supplied adjacency rules.
struct Limits {
  std::size_t point_cap = 1'000'000;
  std::size_t degree_cap = 4096;
};

// Entourage of the bounded coarse structure: the relation
// E = {(x,y) : d(x,y) <= threshold}. threshold >= 0, +infinity allowed.
struct Entourage {
  double threshold = 0.0;
};

inline Entourage compose(const Entourage& e, const Entourage& f) {
  return Entourage{e.threshold + f.threshold};
}

// Metric entourages are symmetric, so inversion is the identity.
inline Entourage inverse(const Entourage& e) { return e; }

// Closed ball B(center; radius) = {x : d(center, x) <= radius}.
struct BoundedRegion {
  PointId center;
  Dist radius = 0;
};

}  // namespace endslab
