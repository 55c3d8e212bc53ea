#include "endslab/sigma_witness.hpp"

#include <algorithm>

namespace endslab {

Witness build_witness(const Space& space, const PointId& xi, const CoarseSequence& s,
                      const CoarseSequence& t, const EpsCertificate& cert) {
  space.check_point(xi);
  if (cert.entries.size() != static_cast<std::size_t>(cert.r_max) + 1 || cert.r_max < 1) {
    throw InputError("build_witness: certificate must cover radii 0..r_max with r_max >= 1");
  }
  std::size_t prev = 0;
  for (std::size_t e = 0; e < cert.entries.size(); ++e) {
    if (e > 0 && cert.entries[e].escape_index <= prev) {
      throw InputError("build_witness: certificate escape indices must be strictly increasing");
    }
    prev = cert.entries[e].escape_index;
  }

  Witness w;
  w.step_bound = std::max({s.step_bound, t.step_bound, cert.k});

  std::size_t top = cert.entries.back().escape_index;
  auto S = sequence_prefix(space, s, top + 1);
  auto T = sequence_prefix(space, t, top + 1);

  if (sequence_to_json(s) == sequence_to_json(t)) {
    // identical rules: the witness is the sequence itself
    w.prefix = S;
    for (std::size_t i = 0; i <= top; ++i) {
      w.s_map.push_back(i);
      w.t_map.push_back(i);
    }
    return w;
  }

  // stops: last index of each sequence already covered by a forward run
  std::ptrdiff_t stop_s = -1, stop_t = -1;
  for (int r = 0; r <= cert.r_max; ++r) {
    const auto& entry = cert.entries[static_cast<std::size_t>(r)];
    bool s_active = (r % 2) == 0;
    const auto& active_pts = s_active ? S : T;
    const auto& other_pts = s_active ? T : S;
    auto& active_map = s_active ? w.s_map : w.t_map;
    std::ptrdiff_t& stop_active = s_active ? stop_s : stop_t;
    std::ptrdiff_t& stop_other = s_active ? stop_t : stop_s;
    std::size_t n = entry.escape_index;

    // forward along the active sequence up to N_r
    for (std::size_t i = static_cast<std::size_t>(stop_active + 1); i <= n; ++i) {
      active_map.push_back(w.prefix.size());
      w.prefix.push_back(active_pts[i]);
    }
    stop_active = static_cast<std::ptrdiff_t>(n);

    // chain interior, oriented active -> other
    const auto& chain = entry.chain.points;
    if (s_active) {
      for (std::size_t j = 1; j + 1 < chain.size(); ++j) w.prefix.push_back(chain[j]);
    } else {
      for (std::size_t j = chain.size() - 1; j-- > 1;) w.prefix.push_back(chain[j]);
    }

    // backward along the other sequence to its previous stop
    for (std::size_t i = n + 1; i-- > static_cast<std::size_t>(stop_other + 1);) {
      w.prefix.push_back(other_pts[i]);
    }
  }
  return w;
}

WitnessReport verify_witness(const Space& space, const PointId& xi, const CoarseSequence& s,
                             const CoarseSequence& t, const Witness& w, Dist r_probe) {
  space.check_point(xi);
  WitnessReport report;
  if (w.prefix.empty()) {
    report.subsequence_ok = report.bornologous_ok = report.proper_ok = false;
    report.issues.push_back("witness prefix is empty");
    return report;
  }

  auto check_map = [&](const std::vector<std::size_t>& map, const CoarseSequence& seq,
                       const char* name) {
    if (map.empty()) {
      report.subsequence_ok = false;
      report.issues.push_back(std::string(name) + " index map is empty");
      return;
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] >= w.prefix.size()) {
        report.subsequence_ok = false;
        report.issues.push_back(std::string(name) + " map entry " + std::to_string(i) +
                                " is out of range");
        return;
      }
      if (i > 0 && map[i] <= map[i - 1]) {
        report.subsequence_ok = false;
        report.issues.push_back(std::string(name) + " map is not strictly increasing at " +
                                std::to_string(i));
      }
      if (w.prefix[map[i]] != eval_sequence(space, seq, i)) {
        report.subsequence_ok = false;
        report.issues.push_back(std::string(name) + "(" + std::to_string(i) +
                                ") does not match the witness at position " +
                                std::to_string(map[i]));
      }
    }
  };
  check_map(w.s_map, s, "s");
  check_map(w.t_map, t, "t");

  for (std::size_t i = 0; i + 1 < w.prefix.size(); ++i) {
    Dist step = space.distance(w.prefix[i], w.prefix[i + 1]);
    report.max_step = std::max(report.max_step, step);
  }
  if (report.max_step > w.step_bound) {
    report.bornologous_ok = false;
    report.issues.push_back("max step " + std::to_string(report.max_step) +
                            " exceeds the declared bound " + std::to_string(w.step_bound));
  }

  BaseDistance base(space, xi);
  std::vector<Dist> depth(w.prefix.size());
  for (std::size_t i = 0; i < w.prefix.size(); ++i) depth[i] = base(w.prefix[i]);
  for (Dist r = 0; r <= r_probe; ++r) {
    WitnessEscape esc;
    esc.r = r;
    std::size_t last_inside = w.prefix.size();
    for (std::size_t i = w.prefix.size(); i-- > 0;) {
      if (depth[i] != kUnreachable && depth[i] <= r) {
        last_inside = i;
        break;
      }
    }
    if (last_inside == w.prefix.size()) {
      esc.ok = true;
      esc.escape_index = 0;
    } else if (last_inside + 1 < w.prefix.size()) {
      esc.ok = true;
      esc.escape_index = last_inside + 1;
    } else {
      esc.ok = false;
      report.proper_ok = false;
      report.issues.push_back("no escape index for radius " + std::to_string(r));
    }
    report.escapes.push_back(esc);
  }
  return report;
}

nlohmann::ordered_json witness_to_json(const Space& space, const PointId& xi,
                                       const CoarseSequence& s, const CoarseSequence& t,
                                       const Witness& w) {
  nlohmann::ordered_json j;
  j["kind"] = "sigma_witness";
  j["space"] = space.descriptor_json();
  j["xi"] = xi;
  j["s"] = sequence_to_json(s);
  j["t"] = sequence_to_json(t);
  j["step_bound"] = w.step_bound;
  j["prefix"] = w.prefix;
  j["s_map"] = w.s_map;
  j["t_map"] = w.t_map;
  return j;
}

WitnessFile witness_from_json(const nlohmann::json& j, const Limits& limits) {
  if (!j.is_object() || j.value("kind", "") != "sigma_witness") {
    throw InputError("witness: expected kind 'sigma_witness'");
  }
  Space space = Space::parse(j.at("space").dump(), limits);
  PointId xi = j.at("xi").get<PointId>();
  CoarseSequence s = sequence_from_json(j.at("s"));
  CoarseSequence t = sequence_from_json(j.at("t"));
  Witness w;
  w.step_bound = j.at("step_bound").get<Dist>();
  w.prefix = j.at("prefix").get<std::vector<PointId>>();
  w.s_map = j.at("s_map").get<std::vector<std::size_t>>();
  w.t_map = j.at("t_map").get<std::vector<std::size_t>>();
  return WitnessFile{std::move(space), std::move(xi), std::move(s), std::move(t), std::move(w)};
}

nlohmann::ordered_json witness_report_to_json(const WitnessReport& r) {
  nlohmann::ordered_json j;
  j["ok"] = r.ok();
  j["subsequence_ok"] = r.subsequence_ok;
  j["bornologous_ok"] = r.bornologous_ok;
  j["proper_ok"] = r.proper_ok;
  j["max_step"] = r.max_step;
  auto escapes = nlohmann::ordered_json::array();
  for (const auto& e : r.escapes) {
    nlohmann::ordered_json je;
    je["r"] = e.r;
    je["ok"] = e.ok;
    if (e.ok) je["escape_index"] = e.escape_index;
    escapes.push_back(std::move(je));
  }
  j["escapes"] = std::move(escapes);
  j["issues"] = r.issues;
  return j;
}

}  // namespace endslab
