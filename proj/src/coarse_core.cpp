#include "endslab/coarse_core.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace endslab {

namespace {

int require_index(const Window& w, const PointId& p) {
  int i = w.index_of(p);
  if (i < 0) throw InputError("point '" + p + "' is not in the window");
  return i;
}

}  // namespace

ControlledReport is_controlled(const Window& w, const PairSet& pairs) {
  // Group by source so each distance row is computed once.
  std::map<int, std::vector<int>> by_source;
  for (const auto& [a, b] : pairs) {
    by_source[require_index(w, a)].push_back(require_index(w, b));
  }
  Dist sup = 0;
  for (const auto& [src, dsts] : by_source) {
    auto row = w.distance_row(src);
    for (int dst : dsts) {
      Dist d = row[static_cast<std::size_t>(dst)];
      if (d == kUnreachable) return {false, kUnreachable};
      sup = std::max(sup, d);
    }
  }
  return {true, sup};
}

BoundedReport is_bounded(const Window& w, const std::vector<PointId>& pts) {
  std::vector<int> idx;
  idx.reserve(pts.size());
  for (const auto& p : pts) idx.push_back(require_index(w, p));
  Dist diameter = 0;
  for (int a : idx) {
    auto row = w.distance_row(a);
    for (int b : idx) {
      Dist d = row[static_cast<std::size_t>(b)];
      if (d == kUnreachable) return {false, kUnreachable};
      diameter = std::max(diameter, d);
    }
  }
  return {true, diameter};
}

PairSet pair_set_compose(const PairSet& p, const PairSet& q) {
  std::multimap<PointId, PointId> q_by_left;
  for (const auto& [z, y] : q) q_by_left.emplace(z, y);
  std::set<PointPair> out;
  for (const auto& [x, z] : p) {
    auto [lo, hi] = q_by_left.equal_range(z);
    for (auto it = lo; it != hi; ++it) out.insert({x, it->second});
  }
  return PairSet(out.begin(), out.end());
}

PairSet pair_set_inverse(const PairSet& p) {
  std::set<PointPair> out;
  for (const auto& [x, y] : p) out.insert({y, x});
  return PairSet(out.begin(), out.end());
}

PairSet pairs_within(const Window& w, Dist threshold) {
  PairSet out;
  for (std::size_t a = 0; a < w.size(); ++a) {
    auto row = w.distance_row(static_cast<int>(a), threshold);
    for (std::size_t b = 0; b < w.size(); ++b) {
      if (row[b] != kUnreachable && row[b] <= threshold) {
        out.push_back({w.point(static_cast<int>(a)), w.point(static_cast<int>(b))});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace endslab
