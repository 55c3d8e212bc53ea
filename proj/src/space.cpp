#include "endslab/space.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace endslab {

namespace {

bool parse_int(const std::string& s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Canonical integers round-trip exactly ("007" and "-0" are rejected).
bool canonical_int(const std::string& s, std::int64_t& out) {
  if (!parse_int(s, out)) return false;
  return std::to_string(out) == s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::vector<std::int64_t> parse_tuple(const std::string& p, int dim) {
  auto parts = split(p, ',');
  if (static_cast<int>(parts.size()) != dim) return {};
  std::vector<std::int64_t> out(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!canonical_int(parts[i], out[i])) return {};
  }
  return out;
}

std::string render_tuple(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(v[i]);
  }
  return s;
}

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

char letter_inverse(char c) {
  return is_lower(c) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                     : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

// Tree distance through the longest common prefix.
Dist path_metric(const std::string& a, const std::string& b) {
  std::size_t l = 0;
  while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
  return static_cast<Dist>(a.size() - l) + static_cast<Dist>(b.size() - l);
}

Dist path_metric_segments(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t l = 0;
  while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
  return static_cast<Dist>(a.size() - l) + static_cast<Dist>(b.size() - l);
}

std::vector<std::string> tree_segments(const std::string& p) {
  if (p.empty()) return {};
  return split(p, '.');
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::integer_line: return "integer_line";
    case SpaceKind::integer_grid: return "integer_grid";
    case SpaceKind::free_group: return "free_group";
    case SpaceKind::word_tree: return "word_tree";
    case SpaceKind::comb_tree: return "comb_tree";
    case SpaceKind::finitely_branching_tree: return "finitely_branching_tree";
    case SpaceKind::custom: return "custom";
  }
  return "?";
}

std::int64_t ChildRule::count_at_depth(std::size_t depth) const {
  if (depth < prefix.size()) return prefix[depth];
  if (period.empty()) return 0;
  return period[(depth - prefix.size()) % period.size()];
}

std::string free_reduce(const std::string& word) {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (!out.empty() && out.back() == letter_inverse(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string free_inverse(const std::string& word) {
  std::string out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(letter_inverse(*it));
  return out;
}

Space::Space(SpaceDescriptor desc, const Limits& limits) : desc_(std::move(desc)) {
  validate_descriptor(limits);
}

void Space::validate_descriptor(const Limits& limits) {
  switch (desc_.kind) {
    case SpaceKind::integer_line:
      if (desc_.basepoint.empty()) desc_.basepoint = "0";
      break;
    case SpaceKind::integer_grid: {
      if (desc_.dim < 1 || desc_.dim > 16) throw InputError("integer_grid: dim must be in 1..16");
      if (desc_.basepoint.empty()) {
        desc_.basepoint = render_tuple(std::vector<std::int64_t>(static_cast<std::size_t>(desc_.dim), 0));
      }
      break;
    }
    case SpaceKind::free_group:
      if (desc_.rank < 1 || desc_.rank > 26) throw InputError("free_group: rank must be in 1..26");
      // basepoint defaults to the identity (empty reduced word)
      break;
    case SpaceKind::word_tree: {
      if (desc_.alphabet.empty()) throw InputError("word_tree: alphabet must be non-empty");
      std::unordered_set<char> seen;
      for (char c : desc_.alphabet) {
        if (!is_lower(c)) throw InputError("word_tree: alphabet letters must be lowercase a-z");
        if (!seen.insert(c).second) throw InputError("word_tree: duplicate alphabet letter");
      }
      break;
    }
    case SpaceKind::comb_tree:
      break;
    case SpaceKind::finitely_branching_tree: {
      const auto& cr = desc_.child_rule;
      if (cr.prefix.empty() && cr.period.empty()) {
        throw InputError("finitely_branching_tree: child_rule needs prefix and/or period");
      }
      for (auto c : cr.prefix) {
        if (c < 0 || c > static_cast<std::int64_t>(limits.degree_cap)) {
          throw InputError("finitely_branching_tree: child count out of range");
        }
      }
      for (auto c : cr.period) {
        if (c < 0 || c > static_cast<std::int64_t>(limits.degree_cap)) {
          throw InputError("finitely_branching_tree: child count out of range");
        }
      }
      break;
    }
    case SpaceKind::custom: {
      if (desc_.adjacency_rule.empty()) throw InputError("custom: adjacency_rule must be non-empty");
      if (desc_.basepoint.empty()) throw InputError("custom: basepoint is required");
      if (!desc_.adjacency_rule.count(desc_.basepoint)) {
        throw InputError("custom: basepoint not among adjacency_rule points");
      }
      for (auto& [p, nbrs] : desc_.adjacency_rule) {
        if (nbrs.size() > limits.degree_cap) {
          throw InputError("custom: neighbour count at '" + p + "' exceeds degree cap " +
                           std::to_string(limits.degree_cap));
        }
        for (const auto& q : nbrs) {
          if (!desc_.adjacency_rule.count(q)) {
            throw InputError("custom: neighbour '" + q + "' of '" + p + "' is not a point");
          }
        }
      }
      break;
    }
  }
  check_point(desc_.basepoint);

  // Probe ball of radius 3: detects asymmetric adjacency and runaway degree.
  std::unordered_set<PointId> probed{desc_.basepoint};
  std::vector<PointId> layer{desc_.basepoint};
  for (int d = 0; d < 3; ++d) {
    std::vector<PointId> next;
    for (const auto& p : layer) {
      auto nbrs = neighbors(p);
      if (nbrs.size() > limits.degree_cap) {
        throw InputError("descriptor: branching at '" + p + "' exceeds degree cap " +
                         std::to_string(limits.degree_cap));
      }
      for (const auto& q : nbrs) {
        auto back = neighbors(q);
        if (std::find(back.begin(), back.end(), p) == back.end()) {
          throw InputError("descriptor: asymmetric adjacency between '" + p + "' and '" + q + "'");
        }
        if (probed.insert(q).second) next.push_back(q);
      }
    }
    layer = std::move(next);
  }
}

bool Space::is_point(const PointId& p) const {
  switch (desc_.kind) {
    case SpaceKind::integer_line: {
      std::int64_t v;
      return canonical_int(p, v);
    }
    case SpaceKind::integer_grid:
      return !parse_tuple(p, desc_.dim).empty() || (desc_.dim == 0);
    case SpaceKind::free_group: {
      for (std::size_t i = 0; i < p.size(); ++i) {
        char c = p[i];
        char low = is_upper(c) ? letter_inverse(c) : c;
        if (!is_lower(low) || low - 'a' >= desc_.rank) return false;
        if (i + 1 < p.size() && p[i + 1] == letter_inverse(c)) return false;  // not reduced
      }
      return true;
    }
    case SpaceKind::word_tree: {
      for (char c : p) {
        if (desc_.alphabet.find(c) == std::string::npos) return false;
      }
      return true;
    }
    case SpaceKind::comb_tree: {
      std::size_t i = 0;
      while (i < p.size() && p[i] == 'a') ++i;
      while (i < p.size() && p[i] == 'b') ++i;
      return i == p.size();
    }
    case SpaceKind::finitely_branching_tree: {
      if (p.empty()) return true;
      auto segs = tree_segments(p);
      for (std::size_t d = 0; d < segs.size(); ++d) {
        std::int64_t v;
        if (!canonical_int(segs[d], v)) return false;
        if (v < 0 || v >= desc_.child_rule.count_at_depth(d)) return false;
      }
      return true;
    }
    case SpaceKind::custom:
      return desc_.adjacency_rule.count(p) > 0;
  }
  return false;
}

void Space::check_point(const PointId& p) const {
  if (!is_point(p)) {
    throw InputError("'" + p + "' is not a canonical point of " + to_string(desc_.kind));
  }
}

std::vector<PointId> Space::neighbors(const PointId& p) const {
  std::vector<PointId> out;
  switch (desc_.kind) {
    case SpaceKind::integer_line: {
      std::int64_t v;
      if (!canonical_int(p, v)) throw InputError("integer_line: bad point '" + p + "'");
      out.push_back(std::to_string(v - 1));
      out.push_back(std::to_string(v + 1));
      break;
    }
    case SpaceKind::integer_grid: {
      auto v = parse_tuple(p, desc_.dim);
      if (v.empty()) throw InputError("integer_grid: bad point '" + p + "'");
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (int s : {-1, 1}) {
          auto w = v;
          w[i] += s;
          out.push_back(render_tuple(w));
        }
      }
      break;
    }
    case SpaceKind::free_group: {
      for (int g = 0; g < desc_.rank; ++g) {
        char c = static_cast<char>('a' + g);
        for (char letter : {c, letter_inverse(c)}) {
          std::string w = p;
          if (!w.empty() && w.back() == letter_inverse(letter)) {
            w.pop_back();
          } else {
            w.push_back(letter);
          }
          out.push_back(std::move(w));
        }
      }
      break;
    }
    case SpaceKind::word_tree: {
      if (!p.empty()) out.push_back(p.substr(0, p.size() - 1));
      for (char c : desc_.alphabet) out.push_back(p + c);
      break;
    }
    case SpaceKind::comb_tree: {
      if (!p.empty()) out.push_back(p.substr(0, p.size() - 1));
      if (p.empty() || p.back() == 'a') {
        out.push_back(p + 'a');
        out.push_back(p + 'b');
      } else {
        out.push_back(p + 'b');
      }
      break;
    }
    case SpaceKind::finitely_branching_tree: {
      auto segs = tree_segments(p);
      if (!p.empty()) {
        auto pos = p.rfind('.');
        out.push_back(pos == std::string::npos ? std::string() : p.substr(0, pos));
      }
      std::int64_t count = desc_.child_rule.count_at_depth(segs.size());
      for (std::int64_t c = 0; c < count; ++c) {
        out.push_back(p.empty() ? std::to_string(c) : p + "." + std::to_string(c));
      }
      break;
    }
    case SpaceKind::custom: {
      auto it = desc_.adjacency_rule.find(p);
      if (it == desc_.adjacency_rule.end()) throw InputError("custom: bad point '" + p + "'");
      out = it->second;
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Dist Space::distance(const PointId& a, const PointId& b) const {
  switch (desc_.kind) {
    case SpaceKind::integer_line: {
      std::int64_t x, y;
      if (!canonical_int(a, x) || !canonical_int(b, y)) throw InputError("integer_line: bad point");
      return x >= y ? x - y : y - x;
    }
    case SpaceKind::integer_grid: {
      auto x = parse_tuple(a, desc_.dim), y = parse_tuple(b, desc_.dim);
      if (x.empty() || y.empty()) throw InputError("integer_grid: bad point");
      Dist d = 0;
      for (std::size_t i = 0; i < x.size(); ++i) d += x[i] >= y[i] ? x[i] - y[i] : y[i] - x[i];
      return d;
    }
    case SpaceKind::free_group:
      return static_cast<Dist>(free_reduce(free_inverse(a) + b).size());
    case SpaceKind::word_tree:
    case SpaceKind::comb_tree:
      return path_metric(a, b);
    case SpaceKind::finitely_branching_tree:
      return path_metric_segments(tree_segments(a), tree_segments(b));
    case SpaceKind::custom: {
      check_point(a);
      check_point(b);
      // BFS over the finite rule.
      std::map<PointId, Dist> dist{{a, 0}};
      std::deque<PointId> queue{a};
      while (!queue.empty()) {
        PointId p = queue.front();
        queue.pop_front();
        if (p == b) return dist[p];
        Dist d = dist[p];
        for (const auto& q : neighbors(p)) {
          if (dist.emplace(q, d + 1).second) queue.push_back(q);
        }
      }
      return kUnreachable;
    }
  }
  return kUnreachable;
}

BaseDistance::BaseDistance(const Space& space, PointId anchor)
    : space_(&space), anchor_(std::move(anchor)) {
  space.check_point(anchor_);
  if (space.is_finite()) {
    use_table_ = true;
    table_[anchor_] = 0;
    std::deque<PointId> queue{anchor_};
    while (!queue.empty()) {
      PointId p = queue.front();
      queue.pop_front();
      Dist d = table_[p];
      for (const auto& q : space.neighbors(p)) {
        if (table_.emplace(q, d + 1).second) queue.push_back(q);
      }
    }
  }
}

Dist BaseDistance::operator()(const PointId& p) const {
  if (use_table_) {
    auto it = table_.find(p);
    return it == table_.end() ? kUnreachable : it->second;
  }
  return space_->distance(anchor_, p);
}

Window ball(const Space& space, const PointId& center, Dist r, const Limits& limits) {
  space.check_point(center);
  if (r < 0) throw InputError("ball: radius must be >= 0");

  std::vector<PointId> points{center};
  std::unordered_map<PointId, int> index{{center, 0}};
  std::size_t layer_begin = 0;

  for (Dist depth = 0; depth < r; ++depth) {
    std::size_t layer_end = points.size();
    std::vector<PointId> candidates;
#ifdef _OPENMP
    {
      std::vector<std::vector<PointId>> local;
#pragma omp parallel
      {
#pragma omp single
        local.resize(static_cast<std::size_t>(omp_get_num_threads()));
        auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t i = static_cast<std::int64_t>(layer_begin);
             i < static_cast<std::int64_t>(layer_end); ++i) {
          auto nbrs = space.neighbors(points[static_cast<std::size_t>(i)]);
          mine.insert(mine.end(), nbrs.begin(), nbrs.end());
        }
      }
      for (auto& chunk : local) {
        candidates.insert(candidates.end(), std::make_move_iterator(chunk.begin()),
                          std::make_move_iterator(chunk.end()));
      }
    }
#else
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      auto nbrs = space.neighbors(points[i]);
      candidates.insert(candidates.end(), nbrs.begin(), nbrs.end());
    }
#endif
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    layer_begin = layer_end;
    for (auto& q : candidates) {
      if (index.count(q)) continue;
      if (points.size() >= limits.point_cap) {
        throw ResourceError("ball: point cap " + std::to_string(limits.point_cap) +
                            " exceeded at radius " + std::to_string(depth + 1));
      }
      index.emplace(q, static_cast<int>(points.size()));
      points.push_back(std::move(q));
    }
    if (layer_begin == points.size()) break;  // space exhausted inside the ball
  }

  std::vector<std::vector<std::pair<int, Dist>>> adj(points.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
    for (const auto& q : space.neighbors(points[static_cast<std::size_t>(i)])) {
      auto it = index.find(q);
      if (it != index.end()) adj[static_cast<std::size_t>(i)].push_back({it->second, 1});
    }
  }
  return Window(center, r, std::move(points), std::move(adj));
}

std::vector<PointId> sphere(const Space& space, const PointId& center, Dist r,
                            const Limits& limits) {
  Window w = ball(space, center, r, limits);
  std::vector<PointId> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.dist_to_origin(static_cast<int>(i)) == r) out.push_back(w.point(static_cast<int>(i)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

const char* kDescriptorFields[] = {"kind", "dim",        "rank",     "alphabet",
                                   "child_rule", "adjacency_rule", "basepoint"};

}  // namespace

Space Space::parse(const std::string& json_text, const Limits& limits) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("descriptor: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) throw InputError("descriptor: missing 'kind'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* f : kDescriptorFields) known = known || it.key() == f;
    if (!known) throw InputError("descriptor: unknown field '" + it.key() + "'");
  }

  SpaceDescriptor d;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "integer_line") {
    d.kind = SpaceKind::integer_line;
  } else if (kind == "integer_grid") {
    d.kind = SpaceKind::integer_grid;
    if (!j.contains("dim")) throw InputError("integer_grid: 'dim' is required");
    d.dim = j.at("dim").get<int>();
  } else if (kind == "free_group") {
    d.kind = SpaceKind::free_group;
    if (!j.contains("rank")) throw InputError("free_group: 'rank' is required");
    d.rank = j.at("rank").get<int>();
  } else if (kind == "word_tree") {
    d.kind = SpaceKind::word_tree;
    if (!j.contains("alphabet")) throw InputError("word_tree: 'alphabet' is required");
    const auto& a = j.at("alphabet");
    if (a.is_string()) {
      d.alphabet = a.get<std::string>();
    } else if (a.is_array()) {
      for (const auto& e : a) {
        std::string s = e.get<std::string>();
        if (s.size() != 1) throw InputError("word_tree: alphabet entries must be single letters");
        d.alphabet += s;
      }
    } else {
      throw InputError("word_tree: alphabet must be a string or array of letters");
    }
  } else if (kind == "comb_tree") {
    d.kind = SpaceKind::comb_tree;
  } else if (kind == "finitely_branching_tree") {
    d.kind = SpaceKind::finitely_branching_tree;
    if (!j.contains("child_rule")) {
      throw InputError("finitely_branching_tree: 'child_rule' is required");
    }
    const auto& cr = j.at("child_rule");
    if (cr.contains("prefix")) d.child_rule.prefix = cr.at("prefix").get<std::vector<std::int64_t>>();
    if (cr.contains("period")) d.child_rule.period = cr.at("period").get<std::vector<std::int64_t>>();
  } else if (kind == "custom") {
    d.kind = SpaceKind::custom;
    if (!j.contains("adjacency_rule")) throw InputError("custom: 'adjacency_rule' is required");
    for (auto it = j.at("adjacency_rule").begin(); it != j.at("adjacency_rule").end(); ++it) {
      d.adjacency_rule[it.key()] = it.value().get<std::vector<PointId>>();
    }
    // neighbour lists are used sorted; symmetry is probed in the constructor
    for (auto& [p, nbrs] : d.adjacency_rule) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
  } else {
    throw InputError("descriptor: unknown kind '" + kind + "'");
  }
  if (j.contains("basepoint")) d.basepoint = j.at("basepoint").get<PointId>();
  return Space(std::move(d), limits);
}

nlohmann::ordered_json Space::descriptor_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(desc_.kind);
  switch (desc_.kind) {
    case SpaceKind::integer_grid:
      j["dim"] = desc_.dim;
      break;
    case SpaceKind::free_group:
      j["rank"] = desc_.rank;
      break;
    case SpaceKind::word_tree: {
      auto arr = nlohmann::ordered_json::array();
      for (char c : desc_.alphabet) arr.push_back(std::string(1, c));
      j["alphabet"] = std::move(arr);
      break;
    }
    case SpaceKind::finitely_branching_tree: {
      nlohmann::ordered_json cr;
      cr["prefix"] = desc_.child_rule.prefix;
      cr["period"] = desc_.child_rule.period;
      j["child_rule"] = std::move(cr);
      break;
    }
    case SpaceKind::custom: {
      nlohmann::ordered_json adj;
      for (const auto& [p, nbrs] : desc_.adjacency_rule) adj[p] = nbrs;
      j["adjacency_rule"] = std::move(adj);
      break;
    }
    default:
      break;
  }
  j["basepoint"] = desc_.basepoint;
  return j;
}

}  // namespace endslab
