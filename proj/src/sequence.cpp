#include "endslab/sequence.hpp"

#include <algorithm>
#include <limits>

namespace endslab {

namespace {

bool word_like(SpaceKind k) {
  return k == SpaceKind::free_group || k == SpaceKind::word_tree || k == SpaceKind::comb_tree;
}

bool grid_like(SpaceKind k) {
  return k == SpaceKind::integer_line || k == SpaceKind::integer_grid;
}

int grid_dim(const Space& space) {
  return space.kind() == SpaceKind::integer_line ? 1 : space.descriptor().dim;
}

std::string render_point(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(v[i]);
  }
  return s;
}

PointId eval_polynomial(const Space& space, const std::vector<std::vector<std::int64_t>>& coeffs,
                        std::size_t i) {
  int dim = grid_dim(space);
  for (const auto& c : coeffs) {
    if (static_cast<int>(c.size()) != dim) {
      throw InputError("sequence: coefficient dimension does not match the space");
    }
  }
  std::vector<std::int64_t> acc(static_cast<std::size_t>(dim), 0);
  std::int64_t power = 1;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    for (int c = 0; c < dim; ++c) {
      acc[static_cast<std::size_t>(c)] += coeffs[j][static_cast<std::size_t>(c)] * power;
    }
    power *= static_cast<std::int64_t>(i);
  }
  return render_point(acc);
}

PointId append_letter(const Space& space, const PointId& word, char letter) {
  PointId next = space.kind() == SpaceKind::free_group ? free_reduce(word + letter) : word + letter;
  space.check_point(next);
  return next;
}

}  // namespace

bool rule_is_total(const CoarseSequence& s) {
  return !(s.rule.kind == RuleKind::explicit_rule && s.rule.cycle.empty());
}

std::size_t rule_length(const CoarseSequence& s) {
  if (rule_is_total(s)) return std::numeric_limits<std::size_t>::max();
  return s.rule.prefix.size();
}

PointId eval_sequence(const Space& space, const CoarseSequence& s, std::size_t i) {
  const auto& rule = s.rule;
  switch (rule.kind) {
    case RuleKind::affine:
    case RuleKind::poly: {
      if (!grid_like(space.kind())) {
        throw InputError("sequence: affine/poly rules need an integer line or grid");
      }
      return eval_polynomial(space, rule.coeffs, i);
    }
    case RuleKind::word_ray: {
      if (!word_like(space.kind())) {
        throw InputError("sequence: word_ray rules need a word-like space");
      }
      PointId p = rule.head;
      space.check_point(p);
      for (std::size_t step = 0; step < i; ++step) {
        p = append_letter(space, p, rule.period[step % rule.period.size()]);
      }
      return p;
    }
    case RuleKind::explicit_rule: {
      PointId p;
      if (i < rule.prefix.size()) {
        p = rule.prefix[i];
      } else if (!rule.cycle.empty()) {
        p = rule.cycle[(i - rule.prefix.size()) % rule.cycle.size()];
      } else {
        throw InputError("sequence: index " + std::to_string(i) +
                         " is beyond the explicit prefix (no cycle declared)");
      }
      space.check_point(p);
      return p;
    }
  }
  throw InputError("sequence: unknown rule kind");
}

std::vector<PointId> sequence_prefix(const Space& space, const CoarseSequence& s, std::size_t n) {
  std::vector<PointId> out;
  out.reserve(n);
  if (s.rule.kind == RuleKind::word_ray) {
    // incremental evaluation instead of n quadratic restarts
    if (!word_like(space.kind())) {
      throw InputError("sequence: word_ray rules need a word-like space");
    }
    PointId p = s.rule.head;
    space.check_point(p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) p = append_letter(space, p, s.rule.period[(i - 1) % s.rule.period.size()]);
      out.push_back(p);
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back(eval_sequence(space, s, i));
  return out;
}

SequenceReport validate_coarse(const Space& space, const PointId& xi, const CoarseSequence& s,
                               std::size_t prefix_len, Dist r_probe) {
  if (prefix_len < 2) throw InputError("validate_coarse: prefix_len must be >= 2");
  if (r_probe < 0) throw InputError("validate_coarse: r_probe must be >= 0");
  space.check_point(xi);

  SequenceReport report;
  report.rule_total = rule_is_total(s);
  std::size_t n = std::min(prefix_len, rule_length(s));
  if (n < 2) throw InputError("validate_coarse: rule defines fewer than 2 points");
  auto pts = sequence_prefix(space, s, n);

  report.bornologous_ok = true;
  report.first_violation = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Dist step = space.distance(pts[i], pts[i + 1]);
    report.max_step = std::max(report.max_step, step);
    if (step > s.step_bound && report.first_violation == n) {
      report.first_violation = i;
      report.bornologous_ok = false;
    }
  }

  BaseDistance base(space, xi);
  std::vector<Dist> depth(n);
  for (std::size_t i = 0; i < n; ++i) depth[i] = base(pts[i]);

  report.proper_ok = true;
  for (Dist r = 0; r <= r_probe; ++r) {
    ProperProbe probe;
    probe.r = r;
    std::size_t last_inside = n;  // sentinel: none
    for (std::size_t i = n; i-- > 0;) {
      if (depth[i] != kUnreachable && depth[i] <= r) {
        last_inside = i;
        break;
      }
    }
    if (last_inside == n) {
      probe.ok = true;
      probe.escape_index = 0;
    } else if (last_inside + 1 < n) {
      probe.ok = true;
      probe.escape_index = last_inside + 1;
    } else {
      probe.ok = false;  // the prefix never leaves B(xi; r) for good
      if (report.first_failing_radius < 0) report.first_failing_radius = r;
      report.proper_ok = false;
    }
    report.proper.push_back(probe);
  }
  return report;
}

std::optional<SubsequenceWitness> is_subsequence(const Space& space, const CoarseSequence& s,
                                                 const CoarseSequence& t, std::size_t prefix_len) {
  if (prefix_len < 1) throw InputError("is_subsequence: prefix_len must be >= 1");
  std::size_t n = std::min(prefix_len, rule_length(s));
  auto s_pts = sequence_prefix(space, s, n);

  SubsequenceWitness witness;
  witness.scan_limit = 8 * prefix_len + 64;
  std::size_t t_len = std::min(witness.scan_limit, rule_length(t));
  auto t_pts = sequence_prefix(space, t, t_len);

  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (j < t_len && t_pts[j] != s_pts[i]) ++j;
    if (j >= t_len) return std::nullopt;
    witness.map.push_back(j);
    ++j;
  }
  return witness;
}

nlohmann::ordered_json sequence_to_json(const CoarseSequence& s) {
  nlohmann::ordered_json rule;
  auto coeff_json = [&](const std::vector<std::int64_t>& v) -> nlohmann::ordered_json {
    if (v.size() == 1) return v[0];
    return v;
  };
  switch (s.rule.kind) {
    case RuleKind::affine:
      rule["kind"] = "affine";
      rule["a"] = coeff_json(s.rule.coeffs.at(1));
      rule["b"] = coeff_json(s.rule.coeffs.at(0));
      break;
    case RuleKind::poly: {
      rule["kind"] = "poly";
      auto arr = nlohmann::ordered_json::array();
      for (const auto& c : s.rule.coeffs) arr.push_back(coeff_json(c));
      rule["coeffs"] = std::move(arr);
      break;
    }
    case RuleKind::word_ray:
      rule["kind"] = "word_ray";
      rule["head"] = s.rule.head;
      rule["period"] = s.rule.period;
      break;
    case RuleKind::explicit_rule:
      rule["kind"] = "explicit";
      rule["prefix"] = s.rule.prefix;
      if (!s.rule.cycle.empty()) rule["period"] = s.rule.cycle;
      break;
  }
  nlohmann::ordered_json j;
  j["rule"] = std::move(rule);
  j["step_bound"] = s.step_bound;
  return j;
}

namespace {

std::vector<std::int64_t> coeff_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return {j.get<std::int64_t>()};
  if (j.is_array()) return j.get<std::vector<std::int64_t>>();
  throw InputError("sequence: coefficient must be an integer or integer array");
}

}  // namespace

CoarseSequence sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rule")) throw InputError("sequence: missing 'rule'");
  const auto& rule = j.at("rule");
  if (!rule.is_object() || !rule.contains("kind")) throw InputError("sequence: rule missing 'kind'");
  std::string kind = rule.at("kind").get<std::string>();

  CoarseSequence s;
  if (kind == "affine") {
    s.rule.kind = RuleKind::affine;
    s.rule.coeffs.push_back(coeff_from_json(rule.at("b")));
    s.rule.coeffs.push_back(coeff_from_json(rule.at("a")));
    if (s.rule.coeffs[0].size() != s.rule.coeffs[1].size()) {
      throw InputError("sequence: affine a/b dimension mismatch");
    }
  } else if (kind == "poly") {
    s.rule.kind = RuleKind::poly;
    for (const auto& c : rule.at("coeffs")) s.rule.coeffs.push_back(coeff_from_json(c));
    if (s.rule.coeffs.empty()) throw InputError("sequence: poly needs coefficients");
    for (const auto& c : s.rule.coeffs) {
      if (c.size() != s.rule.coeffs.front().size()) {
        throw InputError("sequence: poly coefficient dimension mismatch");
      }
    }
  } else if (kind == "word_ray") {
    s.rule.kind = RuleKind::word_ray;
    s.rule.head = rule.at("head").get<std::string>();
    s.rule.period = rule.at("period").get<std::string>();
    if (s.rule.period.empty()) throw InputError("sequence: word_ray period must be non-empty");
  } else if (kind == "explicit") {
    s.rule.kind = RuleKind::explicit_rule;
    s.rule.prefix = rule.at("prefix").get<std::vector<PointId>>();
    if (rule.contains("period")) s.rule.cycle = rule.at("period").get<std::vector<PointId>>();
    if (s.rule.prefix.empty() && s.rule.cycle.empty()) {
      throw InputError("sequence: explicit rule needs points");
    }
  } else {
    throw InputError("sequence: unknown rule kind '" + kind + "'");
  }
  if (j.contains("step_bound")) {
    s.step_bound = j.at("step_bound").get<Dist>();
    if (s.step_bound < 0) throw InputError("sequence: step_bound must be >= 0");
  }
  return s;
}

CoarseSequence sequence_from_string(const std::string& text) {
  try {
    return sequence_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("sequence: bad JSON: ") + e.what());
  }
}

nlohmann::ordered_json report_to_json(const SequenceReport& r) {
  nlohmann::ordered_json j;
  j["ok"] = r.ok();
  j["bornologous_ok"] = r.bornologous_ok;
  j["max_step"] = r.max_step;
  if (!r.bornologous_ok) j["first_violation_index"] = r.first_violation;
  j["proper_ok"] = r.proper_ok;
  if (!r.proper_ok) j["first_failing_radius"] = r.first_failing_radius;
  auto probes = nlohmann::ordered_json::array();
  for (const auto& p : r.proper) {
    nlohmann::ordered_json jp;
    jp["r"] = p.r;
    jp["ok"] = p.ok;
    if (p.ok) jp["escape_index"] = p.escape_index;
    probes.push_back(std::move(jp));
  }
  j["proper_probes"] = std::move(probes);
  j["prefix_scale_only"] = r.prefix_scale_only;
  j["rule_total"] = r.rule_total;
  return j;
}

}  // namespace endslab
