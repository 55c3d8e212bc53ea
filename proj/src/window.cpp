#include "endslab/window.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include <json.hpp>

namespace endslab {

namespace {

// Dijkstra over the window graph. Unit-weight windows degenerate to BFS
// cost-wise; weights stay supported for hand-built excerpts.
std::vector<Dist> shortest_paths(const std::vector<std::vector<std::pair<int, Dist>>>& adj,
                                 int from, Dist cutoff) {
  std::vector<Dist> dist(adj.size(), kUnreachable);
  using Item = std::pair<Dist, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(from)] = 0;
  heap.push({0, from});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[static_cast<std::size_t>(u)]) continue;
    for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
      Dist nd = dist_add(d, w);
      if (nd > cutoff && cutoff != kUnreachable) continue;
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        heap.push({nd, v});
      }
    }
  }
  return dist;
}

}  // namespace

Window::Window(PointId origin, Dist horizon, std::vector<PointId> points,
               std::vector<std::vector<std::pair<int, Dist>>> adjacency)
    : origin_(std::move(origin)),
      horizon_(horizon),
      points_(std::move(points)),
      adj_(std::move(adjacency)) {
  if (adj_.size() != points_.size()) throw InputError("window: adjacency/point count mismatch");
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!index_.emplace(points_[i], static_cast<int>(i)).second) {
      throw InputError("window: duplicate point '" + points_[i] + "'");
    }
  }
  auto it = index_.find(origin_);
  if (it == index_.end()) throw InputError("window: origin '" + origin_ + "' not among points");
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
  dist_origin_ = shortest_paths(adj_, it->second, kUnreachable);
}

int Window::index_of(const PointId& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

Dist Window::distance(int a, int b) const {
  if (a == b) return 0;
  return shortest_paths(adj_, a, kUnreachable)[static_cast<std::size_t>(b)];
}

std::vector<Dist> Window::distance_row(int from, Dist cutoff) const {
  return shortest_paths(adj_, from, cutoff);
}

std::vector<int> Window::frontier() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (dist_origin_[i] == horizon_) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string Window::to_json_string(int indent) const {
  nlohmann::ordered_json j;
  j["origin"] = origin_;
  j["horizon"] = horizon_;
  j["points"] = points_;
  auto edges = nlohmann::ordered_json::array();
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (const auto& [v, w] : adj_[u]) {
      if (static_cast<int>(u) < v) edges.push_back({points_[u], points_[static_cast<std::size_t>(v)], w});
    }
  }
  j["edges"] = std::move(edges);
  return j.dump(indent);
}

Window Window::from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("window: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("origin") || !j.contains("horizon") ||
      !j.contains("points") || !j.contains("edges")) {
    throw InputError("window: expected fields origin, horizon, points, edges");
  }
  PointId origin = j.at("origin").get<PointId>();
  Dist horizon = j.at("horizon").get<Dist>();
  if (horizon < 0) throw InputError("window: horizon must be >= 0");
  std::vector<PointId> points = j.at("points").get<std::vector<PointId>>();
  std::unordered_map<PointId, int> idx;
  for (std::size_t i = 0; i < points.size(); ++i) idx.emplace(points[i], static_cast<int>(i));
  std::vector<std::vector<std::pair<int, Dist>>> adj(points.size());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw InputError("window: edge must be [a,b] or [a,b,w]");
    }
    PointId a = e.at(0).get<PointId>();
    PointId b = e.at(1).get<PointId>();
    Dist w = e.size() == 3 ? e.at(2).get<Dist>() : 1;
    if (w < 1) throw InputError("window: edge weight must be >= 1");
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) {
      throw InputError("window: edge references unknown point");
    }
    adj[static_cast<std::size_t>(ia->second)].push_back({ib->second, w});
    adj[static_cast<std::size_t>(ib->second)].push_back({ia->second, w});
  }
  return Window(std::move(origin), horizon, std::move(points), std::move(adj));
}

}  // namespace endslab
