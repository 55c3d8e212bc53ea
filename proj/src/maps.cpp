#include "endslab/maps.hpp"

#include <algorithm>
#include <charconv>

namespace endslab {

namespace {

bool grid_like(SpaceKind k) {
  return k == SpaceKind::integer_line || k == SpaceKind::integer_grid;
}

bool word_like(SpaceKind k) {
  return k == SpaceKind::free_group || k == SpaceKind::word_tree || k == SpaceKind::comb_tree;
}

int space_dim(const Space& s) {
  return s.kind() == SpaceKind::integer_line ? 1 : s.descriptor().dim;
}

std::vector<std::int64_t> parse_coords(const Space& space, const PointId& p) {
  std::vector<std::int64_t> v;
  std::size_t start = 0;
  while (start <= p.size()) {
    auto pos = p.find(',', start);
    std::string part = p.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    std::int64_t x = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw InputError("map: '" + p + "' is not an integer tuple");
    }
    v.push_back(x);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (static_cast<int>(v.size()) != space_dim(space)) {
    throw InputError("map: tuple dimension mismatch for '" + p + "'");
  }
  return v;
}

std::string render_coords(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(v[i]);
  }
  return s;
}

std::int64_t floor_div(std::int64_t a, std::int64_t d) {
  std::int64_t q = a / d;
  if (a % d != 0 && (a < 0) != (d < 0)) --q;
  return q;
}

PointId apply_rule(const Space& source, const Space& target, const MapRule& rule,
                   const PointId& p) {
  switch (rule.kind) {
    case MapRuleKind::identity: {
      target.check_point(p);
      return p;
    }
    case MapRuleKind::affine: {
      if (!grid_like(source.kind()) || !grid_like(target.kind())) {
        throw InputError("map: affine rules need integer line/grid spaces");
      }
      auto x = parse_coords(source, p);
      std::size_t rows = rule.matrix.size();
      std::vector<std::int64_t> y(rows, 0);
      for (std::size_t r = 0; r < rows; ++r) {
        if (rule.matrix[r].size() != x.size()) {
          throw InputError("map: affine matrix width does not match the source dimension");
        }
        for (std::size_t c = 0; c < x.size(); ++c) y[r] += rule.matrix[r][c] * x[c];
        y[r] += rule.offset[r];
        if (rule.divisor > 1) y[r] = floor_div(y[r], rule.divisor);
      }
      PointId out = render_coords(y);
      target.check_point(out);
      return out;
    }
    case MapRuleKind::poly: {
      if (source.kind() != SpaceKind::integer_line || target.kind() != SpaceKind::integer_line) {
        throw InputError("map: poly rules need integer_line source and target");
      }
      std::int64_t x = parse_coords(source, p)[0];
      std::int64_t y = 0, power = 1;
      for (std::int64_t c : rule.coeffs) {
        y += c * power;
        power *= x;
      }
      return std::to_string(y);
    }
    case MapRuleKind::absolute: {
      if (!grid_like(source.kind()) || !grid_like(target.kind())) {
        throw InputError("map: abs rules need integer line/grid spaces");
      }
      auto x = parse_coords(source, p);
      for (auto& c : x) c = c < 0 ? -c : c;
      PointId out = render_coords(x);
      target.check_point(out);
      return out;
    }
    case MapRuleKind::substitution: {
      if (!word_like(source.kind()) || !word_like(target.kind())) {
        throw InputError("map: substitution rules need word-like spaces");
      }
      std::string out;
      for (char c : p) {
        auto it = rule.images.find(c);
        if (it == rule.images.end()) {
          throw InputError(std::string("map: no image for letter '") + c + "'");
        }
        out += it->second;
      }
      if (target.kind() == SpaceKind::free_group) out = free_reduce(out);
      target.check_point(out);
      return out;
    }
    case MapRuleKind::constant:
      return rule.constant;
    case MapRuleKind::compose: {
      PointId cur = p;
      for (std::size_t i = 0; i < rule.stages.size(); ++i) {
        // intermediate stages are validated in the target space; compose is
        // therefore restricted to pipelines ending (and staying) in `target`
        cur = apply_rule(i == 0 ? source : target, target, rule.stages[i], cur);
      }
      return cur;
    }
  }
  throw InputError("map: unknown rule kind");
}

}  // namespace

PointId apply_map(const CoarseMap& f, const PointId& p) {
  f.source.check_point(p);
  return apply_rule(f.source, f.target, f.rule, p);
}

namespace {

MapRule rule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("map: rule missing 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  MapRule rule;
  if (kind == "identity") {
    rule.kind = MapRuleKind::identity;
  } else if (kind == "affine") {
    rule.kind = MapRuleKind::affine;
    const auto& a = j.at("a");
    if (a.is_number_integer()) {
      rule.matrix = {{a.get<std::int64_t>()}};
    } else {
      for (const auto& row : a) {
        if (row.is_number_integer()) {
          rule.matrix.push_back({row.get<std::int64_t>()});
        } else {
          rule.matrix.push_back(row.get<std::vector<std::int64_t>>());
        }
      }
    }
    if (j.contains("b")) {
      const auto& b = j.at("b");
      if (b.is_number_integer()) {
        rule.offset = {b.get<std::int64_t>()};
      } else {
        rule.offset = b.get<std::vector<std::int64_t>>();
      }
    } else {
      rule.offset.assign(rule.matrix.size(), 0);
    }
    if (rule.offset.size() != rule.matrix.size()) {
      throw InputError("map: affine offset size does not match the matrix rows");
    }
    if (j.contains("div")) {
      rule.divisor = j.at("div").get<std::int64_t>();
      if (rule.divisor < 1) throw InputError("map: div must be >= 1");
    }
  } else if (kind == "poly") {
    rule.kind = MapRuleKind::poly;
    rule.coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
    if (rule.coeffs.empty()) throw InputError("map: poly needs coefficients");
  } else if (kind == "abs") {
    rule.kind = MapRuleKind::absolute;
  } else if (kind == "subst") {
    rule.kind = MapRuleKind::substitution;
    for (auto it = j.at("images").begin(); it != j.at("images").end(); ++it) {
      if (it.key().size() != 1) throw InputError("map: substitution keys must be single letters");
      rule.images[it.key()[0]] = it.value().get<std::string>();
    }
  } else if (kind == "const") {
    rule.kind = MapRuleKind::constant;
    rule.constant = j.at("point").get<PointId>();
  } else if (kind == "compose") {
    rule.kind = MapRuleKind::compose;
    for (const auto& stage : j.at("rules")) rule.stages.push_back(rule_from_json(stage));
    if (rule.stages.empty()) throw InputError("map: compose needs at least one rule");
  } else {
    throw InputError("map: unknown rule kind '" + kind + "'");
  }
  return rule;
}

nlohmann::ordered_json rule_to_json(const MapRule& rule) {
  nlohmann::ordered_json j;
  switch (rule.kind) {
    case MapRuleKind::identity:
      j["kind"] = "identity";
      break;
    case MapRuleKind::affine: {
      j["kind"] = "affine";
      if (rule.matrix.size() == 1 && rule.matrix[0].size() == 1) {
        j["a"] = rule.matrix[0][0];
        j["b"] = rule.offset[0];
      } else {
        j["a"] = rule.matrix;
        j["b"] = rule.offset;
      }
      if (rule.divisor > 1) j["div"] = rule.divisor;
      break;
    }
    case MapRuleKind::poly:
      j["kind"] = "poly";
      j["coeffs"] = rule.coeffs;
      break;
    case MapRuleKind::absolute:
      j["kind"] = "abs";
      break;
    case MapRuleKind::substitution: {
      j["kind"] = "subst";
      nlohmann::ordered_json images;
      for (const auto& [c, w] : rule.images) images[std::string(1, c)] = w;
      j["images"] = std::move(images);
      break;
    }
    case MapRuleKind::constant:
      j["kind"] = "const";
      j["point"] = rule.constant;
      break;
    case MapRuleKind::compose: {
      j["kind"] = "compose";
      auto stages = nlohmann::ordered_json::array();
      for (const auto& s : rule.stages) stages.push_back(rule_to_json(s));
      j["rules"] = std::move(stages);
      break;
    }
  }
  return j;
}

}  // namespace

CoarseMap map_from_json(const nlohmann::json& j, const Limits& limits) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("rule")) {
    throw InputError("map: expected fields source, target, rule");
  }
  CoarseMap f{Space::parse(j.at("source").dump(), limits),
              Space::parse(j.at("target").dump(), limits), rule_from_json(j.at("rule")),
              j.value("preserve_basepoint", false)};
  if (f.preserve_basepoint) {
    PointId image = apply_map(f, f.source.basepoint());
    if (image != f.target.basepoint()) {
      throw InputError("map: declared basepoint-preserving but f(xi) = '" + image + "'");
    }
  }
  return f;
}

CoarseMap map_from_string(const std::string& text, const Limits& limits) {
  try {
    return map_from_json(nlohmann::json::parse(text), limits);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("map: bad JSON: ") + e.what());
  }
}

nlohmann::ordered_json map_to_json(const CoarseMap& f) {
  nlohmann::ordered_json j;
  j["source"] = f.source.descriptor_json();
  j["target"] = f.target.descriptor_json();
  if (f.preserve_basepoint) j["preserve_basepoint"] = true;
  j["rule"] = rule_to_json(f.rule);
  return j;
}

MapCheckReport check_coarse(const CoarseMap& f, Dist probe_radius, Dist k_in,
                            const Limits& limits) {
  if (probe_radius < 2) throw InputError("check_coarse: probe_radius must be >= 2");
  if (k_in < 1) throw InputError("check_coarse: K_in must be >= 1");

  MapCheckReport report;
  PointId source_base = f.source.basepoint();
  PointId image_base = apply_map(f, source_base);
  if (f.preserve_basepoint && image_base != f.target.basepoint()) report.basepoint_ok = false;

  report.preimage_reach.assign(static_cast<std::size_t>(probe_radius) + 1, {});
  for (Dist rho : {probe_radius, 2 * probe_radius, 4 * probe_radius}) {
    Window w = ball(f.source, source_base, rho, limits);
    std::vector<PointId> images(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      images[i] = apply_map(f, w.point(static_cast<int>(i)));
    }

    Dist sup = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto row = w.distance_row(static_cast<int>(i), k_in);
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (i == j || row[j] == kUnreachable || row[j] > k_in) continue;
        sup = std::max(sup, f.target.distance(images[i], images[j]));
      }
    }
    report.displacement.push_back({rho, sup});

    for (Dist r = 0; r <= probe_radius; ++r) {
      Dist reach = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (f.target.distance(image_base, images[i]) <= r) {
          reach = std::max(reach, w.dist_to_origin(static_cast<int>(i)));
        }
      }
      report.preimage_reach[static_cast<std::size_t>(r)].push_back({rho, reach});
    }
  }

  auto stable = [](const std::vector<TrendSample>& samples) {
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].value > samples[i - 1].value) return false;
    }
    return true;
  };
  report.bornologous_ok = stable(report.displacement);
  report.proper_ok = true;
  for (const auto& per_r : report.preimage_reach) {
    report.proper_ok = report.proper_ok && stable(per_r);
  }
  return report;
}

ClosenessReport are_close(const CoarseMap& f, const CoarseMap& g, Dist probe_radius,
                          const Limits& limits) {
  if (probe_radius < 1) throw InputError("are_close: probe_radius must be >= 1");
  if (f.source.descriptor_json() != g.source.descriptor_json() ||
      f.target.descriptor_json() != g.target.descriptor_json()) {
    throw InputError("are_close: maps must share source and target");
  }
  ClosenessReport report;
  for (Dist rho : {probe_radius, 2 * probe_radius, 4 * probe_radius}) {
    Window w = ball(f.source, f.source.basepoint(), rho, limits);
    Dist sup = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const PointId& p = w.point(static_cast<int>(i));
      sup = std::max(sup, f.target.distance(apply_map(f, p), apply_map(g, p)));
    }
    report.sups.push_back({rho, sup});
  }
  report.close = true;
  for (std::size_t i = 1; i < report.sups.size(); ++i) {
    report.close = report.close && report.sups[i].value <= report.sups[i - 1].value;
  }
  report.sup = report.sups.back().value;
  return report;
}

EndMapping induced_end_map(const CoarseMap& f, const ThreadSystem& src, const ThreadSystem& dst) {
  const auto& src_deep = src.partitions.back();
  const auto& dst_deep = dst.partitions.back();

  // live class position at r_max -> thread index, on the target side
  std::map<int, std::size_t> dst_thread_of_class;
  for (std::size_t ti = 0; ti < dst.threads.size(); ++ti) {
    dst_thread_of_class[dst.threads[ti].classes.back()] = ti;
  }

  EndMapping mapping;
  for (const auto& thread : src.threads) {
    int cls_pos = src_deep.class_position_of_id(thread.id);
    if (cls_pos < 0) throw InputError("induced_end_map: thread class missing from the partition");
    const auto& cls = src_deep.classes[static_cast<std::size_t>(cls_pos)];

    int target_class = -1;
    for (int m : cls.members) {
      if (src.window.dist_to_origin(m) != src.window.horizon()) continue;  // frontier only
      PointId image = apply_map(f, src.window.point(m));
      int idx = dst.window.index_of(image);
      if (idx < 0) {
        throw InputError("induced_end_map: image '" + image +
                         "' is outside the target window; raise the target horizon");
      }
      Dist depth = dst.window.dist_to_origin(idx);
      if (depth == kUnreachable || depth <= dst.r_max) {
        throw InputError("induced_end_map: image '" + image +
                         "' is inconclusive at this scale (inside B(eta; r_max)); raise the "
                         "source horizon");
      }
      int c = dst_deep.class_of[static_cast<std::size_t>(idx)];
      if (target_class < 0) target_class = c;
      if (target_class != c) {
        throw InputError("induced_end_map: images of class '" + thread.id +
                         "' straddle two target threads; horizon too small");
      }
    }
    auto it = dst_thread_of_class.find(target_class);
    if (target_class < 0 || it == dst_thread_of_class.end()) {
      throw InputError("induced_end_map: image component of '" + thread.id +
                       "' is not live in the target system");
    }
    mapping.pairs.push_back({thread.id, dst.threads[it->second].id});
  }
  std::sort(mapping.pairs.begin(), mapping.pairs.end());

  std::vector<PointId> images;
  for (const auto& [from, to] : mapping.pairs) images.push_back(to);
  std::sort(images.begin(), images.end());
  bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  mapping.bijection = injective && images.size() == dst.threads.size();
  return mapping;
}

CoarseSequence compose_map_sequence(const CoarseMap& f, const CoarseSequence& s,
                                    std::size_t prefix_len) {
  CoarseSequence out;
  out.rule.kind = RuleKind::explicit_rule;
  std::size_t n = std::min(prefix_len, rule_length(s));
  auto pts = sequence_prefix(f.source, s, n);
  out.rule.prefix.reserve(pts.size());
  for (const auto& p : pts) out.rule.prefix.push_back(apply_map(f, p));
  Dist bound = 0;
  for (std::size_t i = 0; i + 1 < out.rule.prefix.size(); ++i) {
    bound = std::max(bound, f.target.distance(out.rule.prefix[i], out.rule.prefix[i + 1]));
  }
  out.step_bound = std::max<Dist>(bound, 1);
  return out;
}

nlohmann::ordered_json map_check_to_json(const MapCheckReport& r) {
  nlohmann::ordered_json j;
  j["ok"] = r.ok();
  j["bornologous_ok"] = r.bornologous_ok;
  auto disp = nlohmann::ordered_json::array();
  for (const auto& s : r.displacement) disp.push_back({{"probe", s.probe_radius}, {"sup", s.value}});
  j["displacement"] = std::move(disp);
  j["proper_ok"] = r.proper_ok;
  auto reach = nlohmann::ordered_json::array();
  for (std::size_t rr = 0; rr < r.preimage_reach.size(); ++rr) {
    nlohmann::ordered_json jr;
    jr["r"] = rr;
    auto samples = nlohmann::ordered_json::array();
    for (const auto& s : r.preimage_reach[rr]) {
      samples.push_back({{"probe", s.probe_radius}, {"reach", s.value}});
    }
    jr["samples"] = std::move(samples);
    reach.push_back(std::move(jr));
  }
  j["preimage_reach"] = std::move(reach);
  j["basepoint_ok"] = r.basepoint_ok;
  return j;
}

nlohmann::ordered_json closeness_to_json(const ClosenessReport& r) {
  nlohmann::ordered_json j;
  j["close"] = r.close;
  j["sup"] = r.sup;
  auto sups = nlohmann::ordered_json::array();
  for (const auto& s : r.sups) sups.push_back({{"probe", s.probe_radius}, {"sup", s.value}});
  j["sups"] = std::move(sups);
  return j;
}

nlohmann::ordered_json end_mapping_to_json(const EndMapping& m) {
  nlohmann::ordered_json j;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [from, to] : m.pairs) pairs.push_back({{"from", from}, {"to", to}});
  j["pairs"] = std::move(pairs);
  j["bijection"] = m.bijection;
  return j;
}

}  // namespace endslab
