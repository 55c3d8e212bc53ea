#include "endslab/components.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace endslab {

std::int64_t ComponentPartition::live_count() const {
  std::int64_t n = 0;
  for (const auto& c : classes) n += c.live ? 1 : 0;
  return n;
}

int ComponentPartition::class_position_of_id(const PointId& id) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

namespace {

ComponentPartition partition_from_labels(const Window& w, const std::vector<int>& labels,
                                         Dist k, Dist forbidden_radius) {
  std::unordered_map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) groups[labels[i]].push_back(static_cast<int>(i));
  }
  ComponentPartition part;
  part.k = k;
  part.forbidden_radius = forbidden_radius;
  part.classes.reserve(groups.size());
  for (auto& [label, members] : groups) {
    ComponentClass cls;
    cls.members = std::move(members);
    std::sort(cls.members.begin(), cls.members.end());
    cls.id = w.point(cls.members.front());
    for (int m : cls.members) {
      const PointId& p = w.point(m);
      if (p < cls.id) cls.id = p;
      if (w.dist_to_origin(m) == w.horizon()) cls.live = true;
    }
    part.classes.push_back(std::move(cls));
  }
  std::sort(part.classes.begin(), part.classes.end(),
            [](const ComponentClass& a, const ComponentClass& b) { return a.id < b.id; });
  part.class_of.assign(w.size(), -1);
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    for (int m : part.classes[c].members) part.class_of[static_cast<std::size_t>(m)] = static_cast<int>(c);
  }
  return part;
}

std::vector<int> active_outside(const Window& w, Dist radius) {
  std::vector<int> active;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Dist d = w.dist_to_origin(static_cast<int>(i));
    if (d == kUnreachable || d > radius) active.push_back(static_cast<int>(i));
  }
  return active;
}

void check_forbidden(const Window& w, const BoundedRegion& forbidden, Dist k) {
  if (forbidden.center != w.origin()) {
    throw InputError("k_components: forbidden region must be centred at the window origin");
  }
  if (forbidden.radius < 0) throw InputError("k_components: forbidden radius must be >= 0");
  if (k < 0) throw InputError("k_components: K must be >= 0");
  if (w.horizon() <= forbidden.radius) {
    throw InputError("k_components: empty domain (horizon <= forbidden radius)");
  }
}

}  // namespace

ComponentPartition k_components(const Window& w, const BoundedRegion& forbidden, Dist k,
                                kernels::Mode mode) {
  check_forbidden(w, forbidden, k);
  auto active = active_outside(w, forbidden.radius);
  auto labels = kernels::khop_labels(w, active, k, mode);
  return partition_from_labels(w, labels, k, forbidden.radius);
}

std::optional<Chain> chain_between(const Window& w, const PointId& x, const PointId& y, Dist k,
                                   const BoundedRegion& forbidden) {
  check_forbidden(w, forbidden, k);
  int xi = w.index_of(x), yi = w.index_of(y);
  if (xi < 0) throw InputError("chain_between: '" + x + "' is not in the window");
  if (yi < 0) throw InputError("chain_between: '" + y + "' is not in the window");
  auto excluded = [&](int i) {
    Dist d = w.dist_to_origin(i);
    return d != kUnreachable && d <= forbidden.radius;
  };
  if (excluded(xi)) throw InputError("chain_between: '" + x + "' lies inside the forbidden region");
  if (excluded(yi)) throw InputError("chain_between: '" + y + "' lies inside the forbidden region");

  std::vector<int> parent(w.size(), -2);  // -2 unvisited, -1 root
  std::deque<int> queue;
  parent[static_cast<std::size_t>(xi)] = -1;
  queue.push_back(xi);
  bool found = xi == yi;
  while (!queue.empty() && !found) {
    int u = queue.front();
    queue.pop_front();
    std::vector<int> targets;
    if (k == 1) {
      for (const auto& [v, weight] : w.neighbors(u)) {
        if (weight <= 1) targets.push_back(v);
      }
    } else {
      auto row = w.distance_row(u, k);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] != kUnreachable && row[j] <= k && static_cast<int>(j) != u) {
          targets.push_back(static_cast<int>(j));
        }
      }
    }
    for (int v : targets) {
      if (excluded(v) || parent[static_cast<std::size_t>(v)] != -2) continue;
      parent[static_cast<std::size_t>(v)] = u;
      if (v == yi) {
        found = true;
        break;
      }
      queue.push_back(v);
    }
  }
  if (!found) return std::nullopt;
  Chain chain;
  chain.k = k;
  for (int v = yi; v != -1; v = parent[static_cast<std::size_t>(v)]) chain.points.push_back(w.point(v));
  std::reverse(chain.points.begin(), chain.points.end());
  return chain;
}

namespace {

std::vector<ComponentPartition> radial_partitions(const Window& w, Dist k, int r_from, int r_to,
                                                  kernels::Mode mode) {
  std::vector<ComponentPartition> parts(static_cast<std::size_t>(r_to - r_from + 1));
#ifdef _OPENMP
  if (mode == kernels::Mode::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = r_from; r <= r_to; ++r) {
      parts[static_cast<std::size_t>(r - r_from)] =
          k_components(w, BoundedRegion{w.origin(), r}, k, kernels::Mode::serial);
    }
    return parts;
  }
#endif
  for (int r = r_from; r <= r_to; ++r) {
    parts[static_cast<std::size_t>(r - r_from)] =
        k_components(w, BoundedRegion{w.origin(), r}, k, mode);
  }
  return parts;
}

}  // namespace

std::string EndProfile::classification() const {
  switch (cls) {
    case ProfileClass::finite: return "finite(" + std::to_string(finite_value) + ")";
    case ProfileClass::countable_growth: return "countable-growth";
    case ProfileClass::uncountable_growth: return "uncountable-growth";
    case ProfileClass::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Growth heuristic over the trailing half of the counts: constant tail is
// finite(n); a non-decreasing profile whose tail multiplies by >= 3/2 each
// step is geometric; otherwise a growing tail is sub-exponential.
void classify_profile(EndProfile& p) {
  const auto& c = p.counts;
  if (c.empty()) {
    p.cls = ProfileClass::inconclusive;
    return;
  }
  std::size_t tail_len = (c.size() + 1) / 2;
  std::size_t tail_begin = c.size() - tail_len;
  bool tail_const = true;
  for (std::size_t i = tail_begin + 1; i < c.size(); ++i) {
    tail_const = tail_const && c[i] == c[tail_begin];
  }
  if (tail_const) {
    p.cls = ProfileClass::finite;
    p.finite_value = c[tail_begin];
    return;
  }
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < c[i - 1]) {
      p.cls = ProfileClass::inconclusive;
      return;
    }
  }
  bool geometric = true;
  for (std::size_t i = tail_begin + 1; i < c.size(); ++i) {
    geometric = geometric && 2 * c[i] >= 3 * c[i - 1];
  }
  if (geometric) {
    p.cls = ProfileClass::uncountable_growth;
  } else if (c.back() > c[tail_begin]) {
    p.cls = ProfileClass::countable_growth;
  } else {
    p.cls = ProfileClass::inconclusive;
  }
}

}  // namespace

EndProfile end_profile(const Space& space, const PointId& xi, Dist k, int r_max, Dist margin,
                       const Limits& limits, kernels::Mode mode) {
  if (r_max < 1) throw InputError("end_profile: r_max must be >= 1");
  if (margin < 1) throw InputError("end_profile: horizon margin must be >= 1");
  EndProfile profile;
  profile.k = k;
  profile.r_max = r_max;
  profile.horizon = r_max + margin;
  Window w = ball(space, xi, profile.horizon, limits);
  auto parts = radial_partitions(w, k, 1, r_max, mode);
  profile.counts.reserve(parts.size());
  for (const auto& part : parts) profile.counts.push_back(part.live_count());
  classify_profile(profile);
  return profile;
}

ThreadSystem component_threads(const Space& space, const PointId& xi, Dist k, int r_max,
                               Dist margin, const Limits& limits, kernels::Mode mode) {
  if (r_max < 0) throw InputError("component_threads: r_max must be >= 0");
  if (margin < 1) throw InputError("component_threads: horizon margin must be >= 1");
  ThreadSystem ts;
  ts.k = k;
  ts.r_max = r_max;
  ts.window = ball(space, xi, r_max + margin, limits);
  ts.partitions = radial_partitions(ts.window, k, 0, r_max, mode);

  // Containment maps: a class at radius r sits inside a unique class at r-1.
  ts.parent.resize(ts.partitions.size());
  for (std::size_t r = 1; r < ts.partitions.size(); ++r) {
    const auto& fine = ts.partitions[r];
    const auto& coarse = ts.partitions[r - 1];
    ts.parent[r].resize(fine.classes.size(), -1);
    for (std::size_t c = 0; c < fine.classes.size(); ++c) {
      int p = coarse.class_of[static_cast<std::size_t>(fine.classes[c].members.front())];
      for (int m : fine.classes[c].members) {
        if (coarse.class_of[static_cast<std::size_t>(m)] != p) {
          throw InputError("component_threads: refinement map is not well-defined");
        }
      }
      ts.parent[r][c] = p;
    }
  }

  const auto& deepest = ts.partitions.back();
  for (std::size_t c = 0; c < deepest.classes.size(); ++c) {
    if (!deepest.classes[c].live) continue;
    ThreadSystem::Thread thread;
    thread.id = deepest.classes[c].id;
    thread.classes.assign(ts.partitions.size(), -1);
    int cur = static_cast<int>(c);
    for (std::size_t r = ts.partitions.size(); r-- > 0;) {
      thread.classes[r] = cur;
      if (r > 0) cur = ts.parent[r][static_cast<std::size_t>(cur)];
    }
    ts.threads.push_back(std::move(thread));
  }
  return ts;
}

LazySearchResult lazy_component_search(const Space& space, const BaseDistance& base,
                                       const PointId& start, const PointId* target, Dist k,
                                       Dist forbidden_radius, Dist horizon,
                                       const Limits& limits, bool stop_at_horizon) {
  if (k < 1) throw InputError("lazy_component_search: K must be >= 1");
  Dist d0 = base(start);
  if (d0 == kUnreachable || d0 <= forbidden_radius || d0 > horizon) {
    throw InputError("lazy_component_search: start point is outside the annulus");
  }
  auto in_annulus = [&](Dist d) { return d != kUnreachable && d > forbidden_radius && d <= horizon; };

  LazySearchResult res;
  res.least_point = start;
  std::unordered_map<PointId, PointId> parent;  // child -> predecessor
  parent.emplace(start, start);
  std::deque<PointId> queue{start};
  res.visited = 1;
  res.touched_horizon = d0 == horizon;

  auto finish_path = [&](const PointId& goal) {
    std::vector<PointId> path{goal};
    PointId cur = goal;
    while (cur != start) {
      cur = parent.at(cur);
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    res.path = std::move(path);
    res.reached = true;
  };

  if (target && *target == start) {
    finish_path(start);
    return res;
  }
  if (stop_at_horizon && res.touched_horizon) return res;

  while (!queue.empty()) {
    PointId u = queue.front();
    queue.pop_front();

    // K-hop neighbours of u inside the annulus: hops measure the space
    // metric, so the realising paths may cross the forbidden ball.
    std::vector<PointId> targets;
    if (k == 1) {
      for (auto& q : space.neighbors(u)) {
        if (in_annulus(base(q))) targets.push_back(std::move(q));
      }
    } else {
      std::map<PointId, Dist> local{{u, 0}};
      std::deque<PointId> ball_queue{u};
      while (!ball_queue.empty()) {
        PointId p = ball_queue.front();
        ball_queue.pop_front();
        Dist dp = local[p];
        if (dp == k) continue;
        for (auto& q : space.neighbors(p)) {
          if (local.emplace(q, dp + 1).second) ball_queue.push_back(q);
        }
      }
      for (auto& [q, dq] : local) {
        if (q != u && dq <= k && in_annulus(base(q))) targets.push_back(q);
      }
    }

    for (auto& v : targets) {
      if (parent.count(v)) continue;
      if (res.visited >= limits.point_cap) {
        throw ResourceError("lazy_component_search: point cap " +
                            std::to_string(limits.point_cap) + " exceeded");
      }
      parent.emplace(v, u);
      ++res.visited;
      if (v < res.least_point) res.least_point = v;
      if (base(v) == horizon) res.touched_horizon = true;
      if (target && v == *target) {
        finish_path(v);
        return res;
      }
      if (stop_at_horizon && res.touched_horizon) return res;
      queue.push_back(std::move(v));
    }
  }
  res.exhausted = true;
  return res;
}

bool same_thread(const Space& space, const PointId& xi, const PointId& a, const PointId& b,
                 Dist k, int r_max, Dist margin, const Limits& limits) {
  BaseDistance base(space, xi);
  Dist horizon = r_max + margin;
  auto search = lazy_component_search(space, base, a, &b, k, r_max, horizon, limits);
  if (!search.reached) return false;
  if (search.touched_horizon) return true;
  // the connecting search stopped early; probe the component for liveness
  auto live = lazy_component_search(space, base, a, nullptr, k, r_max, horizon, limits, true);
  return live.touched_horizon;
}

nlohmann::ordered_json partition_to_json(const Window& w, const ComponentPartition& p,
                                         bool with_members) {
  nlohmann::ordered_json j;
  j["K"] = p.k;
  j["forbidden"] = {{"center", w.origin()}, {"radius", p.forbidden_radius}};
  j["live_count"] = p.live_count();
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : p.classes) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["size"] = c.members.size();
    jc["live"] = c.live;
    if (with_members) {
      std::vector<PointId> pts;
      pts.reserve(c.members.size());
      for (int m : c.members) pts.push_back(w.point(m));
      std::sort(pts.begin(), pts.end());
      jc["points"] = pts;
    }
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j;
}

nlohmann::ordered_json profile_to_json(const Space& space, const PointId& xi,
                                       const EndProfile& profile) {
  nlohmann::ordered_json j;
  j["space"] = space.descriptor_json();
  j["xi"] = xi;
  j["K"] = profile.k;
  j["r_max"] = profile.r_max;
  j["horizon"] = profile.horizon;
  j["counts"] = profile.counts;
  j["classification"] = profile.classification();
  return j;
}

std::string profile_to_csv(const EndProfile& profile) {
  std::ostringstream out;
  out << "r,count,classification\n";
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    out << (i + 1) << ',' << profile.counts[i] << ',' << profile.classification() << '\n';
  }
  return out.str();
}

nlohmann::ordered_json threads_to_json(const Space& space, const PointId& xi,
                                       const ThreadSystem& ts, bool with_members) {
  nlohmann::ordered_json j;
  j["space"] = space.descriptor_json();
  j["xi"] = xi;
  j["K"] = ts.k;
  j["r_max"] = ts.r_max;
  j["horizon"] = ts.window.horizon();
  auto parts = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < ts.partitions.size(); ++r) {
    nlohmann::ordered_json jp;
    jp["r"] = r;
    auto classes = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < ts.partitions[r].classes.size(); ++c) {
      const auto& cls = ts.partitions[r].classes[c];
      nlohmann::ordered_json jc;
      jc["id"] = cls.id;
      jc["size"] = cls.members.size();
      jc["live"] = cls.live;
      if (r > 0) {
        jc["parent"] = ts.partitions[r - 1].classes[static_cast<std::size_t>(ts.parent[r][c])].id;
      } else {
        jc["parent"] = nullptr;
      }
      if (with_members) {
        std::vector<PointId> pts;
        for (int m : cls.members) pts.push_back(ts.window.point(m));
        std::sort(pts.begin(), pts.end());
        jc["points"] = pts;
      }
      classes.push_back(std::move(jc));
    }
    jp["classes"] = std::move(classes);
    parts.push_back(std::move(jp));
  }
  j["partitions"] = std::move(parts);
  auto threads = nlohmann::ordered_json::array();
  for (const auto& t : ts.threads) {
    nlohmann::ordered_json jt;
    jt["id"] = t.id;
    auto ids = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < t.classes.size(); ++r) {
      ids.push_back(ts.partitions[r].classes[static_cast<std::size_t>(t.classes[r])].id);
    }
    jt["classes"] = std::move(ids);
    threads.push_back(std::move(jt));
  }
  j["threads"] = std::move(threads);
  return j;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string threads_to_dot(const ThreadSystem& ts) {
  std::ostringstream out;
  out << "digraph thread_forest {\n  rankdir=LR;\n";
  std::set<std::pair<int, int>> nodes;  // (r, class position)
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;
  for (const auto& t : ts.threads) {
    for (std::size_t r = 0; r < t.classes.size(); ++r) {
      nodes.insert({static_cast<int>(r), t.classes[r]});
      if (r > 0) {
        edges.insert({{static_cast<int>(r), t.classes[r]}, {static_cast<int>(r - 1), t.classes[r - 1]}});
      }
    }
  }
  for (const auto& [r, c] : nodes) {
    const auto& cls = ts.partitions[static_cast<std::size_t>(r)].classes[static_cast<std::size_t>(c)];
    out << "  \"r" << r << "|" << dot_escape(cls.id) << "\";\n";
  }
  for (const auto& [from, to] : edges) {
    const auto& fc = ts.partitions[static_cast<std::size_t>(from.first)].classes[static_cast<std::size_t>(from.second)];
    const auto& tc = ts.partitions[static_cast<std::size_t>(to.first)].classes[static_cast<std::size_t>(to.second)];
    out << "  \"r" << from.first << "|" << dot_escape(fc.id) << "\" -> \"r" << to.first << "|"
        << dot_escape(tc.id) << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace endslab
