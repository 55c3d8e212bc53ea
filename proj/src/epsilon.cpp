#include "endslab/epsilon.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

namespace endslab {

namespace {

struct PrefixData {
  std::vector<PointId> pts;
  std::vector<Dist> depth;
  std::vector<Dist> suffix_min;  // suffix_min[i] = min depth over indices >= i
};

PrefixData evaluate(const Space& space, const BaseDistance& base, const CoarseSequence& seq,
                    std::size_t n) {
  PrefixData data;
  data.pts = sequence_prefix(space, seq, std::min(n, rule_length(seq)));
  data.depth.resize(data.pts.size());
  for (std::size_t i = 0; i < data.pts.size(); ++i) data.depth[i] = base(data.pts[i]);
  data.suffix_min.assign(data.pts.size(), kUnreachable);
  Dist running = kUnreachable;
  for (std::size_t i = data.pts.size(); i-- > 0;) {
    running = std::min(running, data.depth[i]);
    data.suffix_min[i] = running;
  }
  return data;
}

// Membership set of one K-component of the annulus, for tail checks when the
// tail is not itself a K-chain.
std::unordered_set<PointId> component_members(const Space& space, const BaseDistance& base,
                                              const PointId& start, Dist k, Dist r, Dist horizon,
                                              const Limits& limits) {
  std::unordered_set<PointId> members{start};
  std::deque<PointId> queue{start};
  auto in_annulus = [&](Dist d) { return d != kUnreachable && d > r && d <= horizon; };
  while (!queue.empty()) {
    PointId u = queue.front();
    queue.pop_front();
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
      if (members.size() >= limits.point_cap) {
        throw ResourceError("epsilon: component cap " + std::to_string(limits.point_cap) +
                            " exceeded");
      }
      if (members.insert(v).second) queue.push_back(std::move(v));
    }
  }
  return members;
}

}  // namespace

EpsOutcome epsilon_equivalent(const Space& space, const PointId& xi, const CoarseSequence& s,
                              const CoarseSequence& t, const EpsParams& params) {
  if (params.k < 1) throw InputError("epsilon: K must be >= 1");
  if (params.r_max < 0) throw InputError("epsilon: r_max must be >= 0");
  if (params.margin < 1) throw InputError("epsilon: margin must be >= 1");
  space.check_point(xi);

  std::size_t prefix_len = params.prefix_len
                               ? params.prefix_len
                               : 2 * static_cast<std::size_t>(params.r_max + params.margin) + 16;
  BaseDistance base(space, xi);
  PrefixData S = evaluate(space, base, s, prefix_len);
  PrefixData T = evaluate(space, base, t, prefix_len);
  std::size_t n = std::min(S.pts.size(), T.pts.size());
  if (n < 2) throw InputError("epsilon: working prefix has fewer than 2 points");

  Dist escape_depth = params.r_max + params.k;
  if (S.suffix_min.back() == kUnreachable || S.suffix_min.back() <= escape_depth ||
      T.suffix_min.back() == kUnreachable || T.suffix_min.back() <= escape_depth) {
    // A tail that never clears B(xi; r_max + K) within the prefix is a
    // properness failure at this scale, not a refutation.
    throw InputError(
        "epsilon: a sequence tail does not escape B(xi; " + std::to_string(escape_depth) +
        ") within the working prefix; sequences share no horizon (properness failure) or "
        "the prefix is too short");
  }

  EpsCertificate cert;
  cert.k = params.k;
  cert.r_max = params.r_max;
  cert.prefix_len = n;

  std::size_t next_n = 0;
  bool s_self_chained = s.step_bound <= params.k;
  bool t_self_chained = t.step_bound <= params.k;

  for (Dist r = 0; r <= params.r_max; ++r) {
    // Least N (strictly past the previous one) with both tails outside
    // B(xi; r+K); the +K margin keeps chains clear of the boundary.
    Dist need = r + params.k;
    std::size_t N = next_n;
    while (N < n && (S.suffix_min[N] <= need || T.suffix_min[N] <= need)) ++N;
    if (N >= n) {
      throw InputError("epsilon: prefix too short to find an escape index at radius " +
                       std::to_string(r));
    }
    next_n = N + 1;

    Dist horizon = std::max({r + params.margin, S.depth[N] + params.margin,
                             T.depth[N] + params.margin});
    auto search = lazy_component_search(space, base, S.pts[N], &T.pts[N], params.k, r, horizon,
                                        params.limits);
    if (!search.reached) {
      // Tails lie in distinct components of the explored annulus; this is the
      // least radius at which it happens.
      auto t_side = lazy_component_search(space, base, T.pts[N], nullptr, params.k, r, horizon,
                                          params.limits);
      EpsRefutation ref;
      ref.k_max = params.k;
      ref.r_fail = r;
      ref.horizon = horizon;
      ref.s_component = search.least_point;
      ref.t_component = t_side.least_point;
      return EpsOutcome{std::nullopt, ref};
    }

    // Tail containment: a tail whose declared step bound fits under K is a
    // K-chain outside B(xi; r) on its own; otherwise every tail point inside
    // the exploration annulus must sit in the chain's component.
    if (!s_self_chained || !t_self_chained) {
      auto members = component_members(space, base, S.pts[N], params.k, r, horizon, params.limits);
      for (std::size_t i = N; i < n; ++i) {
        if (!s_self_chained && S.depth[i] <= horizon && !members.count(S.pts[i])) {
          EpsRefutation ref;
          ref.k_max = params.k;
          ref.r_fail = r;
          ref.horizon = horizon;
          ref.s_component = *std::min_element(members.begin(), members.end());
          ref.t_component = S.pts[i];
          return EpsOutcome{std::nullopt, ref};
        }
        if (!t_self_chained && T.depth[i] <= horizon && !members.count(T.pts[i])) {
          EpsRefutation ref;
          ref.k_max = params.k;
          ref.r_fail = r;
          ref.horizon = horizon;
          ref.s_component = *std::min_element(members.begin(), members.end());
          ref.t_component = T.pts[i];
          return EpsOutcome{std::nullopt, ref};
        }
      }
    }

    EpsEntry entry;
    entry.r = r;
    entry.escape_index = N;
    entry.horizon = horizon;
    entry.chain = Chain{std::move(search.path), params.k};
    cert.entries.push_back(std::move(entry));
  }
  return EpsOutcome{std::move(cert), std::nullopt};
}

EpsSearchOutcome epsilon_search_k(const Space& space, const PointId& xi, const CoarseSequence& s,
                                  const CoarseSequence& t, Dist k_max, EpsParams params) {
  if (k_max < 1) throw InputError("epsilon_search_k: K_max must be >= 1");
  EpsOutcome last;
  for (Dist k = 1; k <= k_max; ++k) {
    params.k = k;
    last = epsilon_equivalent(space, xi, s, t, params);
    if (last.equivalent()) return {k, std::move(last)};
  }
  return {k_max, std::move(last)};
}

VerifyReport verify_certificate(const Space& space, const PointId& xi, const CoarseSequence& s,
                                const CoarseSequence& t, const EpsCertificate& cert,
                                const Limits& limits) {
  VerifyReport report;
  if (cert.k < 1) report.fail("K must be >= 1");
  if (cert.entries.size() != static_cast<std::size_t>(cert.r_max) + 1) {
    report.fail("entries must cover r = 0.." + std::to_string(cert.r_max));
    return report;
  }

  BaseDistance base(space, xi);
  std::size_t n = std::min(cert.prefix_len, std::min(rule_length(s), rule_length(t)));
  if (n != cert.prefix_len) report.fail("prefix_len exceeds the rules' defined length");
  std::vector<PointId> S = sequence_prefix(space, s, n);
  std::vector<PointId> T = sequence_prefix(space, t, n);

  std::size_t prev_n = 0;
  for (std::size_t pos = 0; pos < cert.entries.size(); ++pos) {
    const auto& entry = cert.entries[pos];
    const std::string at = " at r=" + std::to_string(entry.r);
    if (entry.r != static_cast<Dist>(pos)) {
      report.fail("entry radii must be 0,1,...,r_max");
    }
    if (pos > 0 && entry.escape_index <= prev_n) {
      report.fail("escape indices must be strictly increasing" + at);
    }
    prev_n = entry.escape_index;

    if (entry.escape_index >= n) {
      report.fail("escape index outside the working prefix" + at);
      continue;
    }
    const auto& chain = entry.chain.points;
    if (chain.empty()) {
      report.fail("empty chain" + at);
      continue;
    }
    if (chain.front() != S[entry.escape_index]) {
      report.fail("chain does not start at s(N_r)" + at);
    }
    if (chain.back() != T[entry.escape_index]) {
      report.fail("chain does not end at t(N_r)" + at);
    }
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (!space.is_point(chain[i])) {
        report.fail("chain point '" + chain[i] + "' is not in the space" + at);
        continue;
      }
      Dist d = base(chain[i]);
      if (d != kUnreachable && d <= entry.r) {
        report.fail("chain point '" + chain[i] + "' lies inside B(xi;" + std::to_string(entry.r) +
                    ")" + at);
      }
      if (i + 1 < chain.size() && space.distance(chain[i], chain[i + 1]) > cert.k) {
        report.fail("chain hop " + std::to_string(i) + " exceeds K" + at);
      }
    }

    // Tails beyond N_r stay outside the ball; containment in the chain's
    // component follows from the hop bound when the tail self-chains, and is
    // replayed lazily otherwise.
    bool s_chained = true, t_chained = true;
    for (std::size_t i = entry.escape_index; i < n; ++i) {
      Dist ds = base(S[i]), dt = base(T[i]);
      if (ds != kUnreachable && ds <= entry.r) {
        report.fail("s-tail point s(" + std::to_string(i) + ") inside the ball" + at);
      }
      if (dt != kUnreachable && dt <= entry.r) {
        report.fail("t-tail point t(" + std::to_string(i) + ") inside the ball" + at);
      }
      if (i + 1 < n) {
        if (space.distance(S[i], S[i + 1]) > cert.k) s_chained = false;
        if (space.distance(T[i], T[i + 1]) > cert.k) t_chained = false;
      }
    }
    if (!s_chained || !t_chained) {
      auto members = component_members(space, base, chain.front(), cert.k, entry.r, entry.horizon,
                                       limits);
      for (std::size_t i = entry.escape_index; i < n; ++i) {
        if (!s_chained && base(S[i]) <= entry.horizon && !members.count(S[i])) {
          report.fail("s-tail point s(" + std::to_string(i) + ") not in the chain's component" +
                      at);
        }
        if (!t_chained && base(T[i]) <= entry.horizon && !members.count(T[i])) {
          report.fail("t-tail point t(" + std::to_string(i) + ") not in the chain's component" +
                      at);
        }
      }
    }
  }
  return report;
}

EpsCertificate reverse_certificate(const EpsCertificate& cert) {
  EpsCertificate out = cert;
  for (auto& entry : out.entries) {
    std::reverse(entry.chain.points.begin(), entry.chain.points.end());
  }
  return out;
}

EpsCertificate concat_certificates(const Space& space, const CoarseSequence& s,
                                   const CoarseSequence& t, const CoarseSequence& u,
                                   const EpsCertificate& cert_st, const EpsCertificate& cert_tu) {
  if (cert_st.r_max != cert_tu.r_max) {
    throw InputError("concat_certificates: certificates cover different radii");
  }
  EpsCertificate out;
  out.k = std::max(cert_st.k, cert_tu.k);
  out.r_max = cert_st.r_max;
  out.prefix_len = std::min(cert_st.prefix_len, cert_tu.prefix_len);

  for (std::size_t e = 0; e < cert_st.entries.size(); ++e) {
    const auto& a = cert_st.entries[e];
    const auto& b = cert_tu.entries[e];
    std::size_t n = std::max(a.escape_index, b.escape_index);
    if (n >= out.prefix_len) {
      throw InputError("concat_certificates: escape index beyond the shared prefix");
    }

    EpsEntry entry;
    entry.r = a.r;
    entry.escape_index = n;
    entry.horizon = std::max(a.horizon, b.horizon);
    auto& pts = entry.chain.points;
    entry.chain.k = out.k;

    // s(n) .. s(N_st) along s, chain_st, t(N_st) .. t(N_tu) along t,
    // chain_tu, u(N_tu) .. u(n) along u. Every sequence segment sits beyond
    // the certificate escape index that covers it.
    for (std::size_t i = n + 1; i-- > a.escape_index;) {
      pts.push_back(eval_sequence(space, s, i));
    }
    pts.pop_back();
    pts.insert(pts.end(), a.chain.points.begin(), a.chain.points.end());
    std::size_t lo = std::min(a.escape_index, b.escape_index);
    std::size_t hi = std::max(a.escape_index, b.escape_index);
    std::vector<PointId> t_run;
    for (std::size_t i = lo; i <= hi; ++i) t_run.push_back(eval_sequence(space, t, i));
    if (a.escape_index > b.escape_index) std::reverse(t_run.begin(), t_run.end());
    pts.insert(pts.end(), t_run.begin() + 1, t_run.end());
    pts.insert(pts.end(), b.chain.points.begin() + 1, b.chain.points.end());
    for (std::size_t i = b.escape_index + 1; i <= n; ++i) {
      pts.push_back(eval_sequence(space, u, i));
    }
    out.entries.push_back(std::move(entry));
  }

  // Escape indices must increase strictly; max of two strictly increasing
  // sequences already is.
  return out;
}

nlohmann::ordered_json certificate_to_json(const Space& space, const PointId& xi,
                                           const CoarseSequence& s, const CoarseSequence& t,
                                           const EpsCertificate& cert) {
  nlohmann::ordered_json j;
  j["kind"] = "eps_certificate";
  j["space"] = space.descriptor_json();
  j["xi"] = xi;
  j["s"] = sequence_to_json(s);
  j["t"] = sequence_to_json(t);
  j["K"] = cert.k;
  j["r_max"] = cert.r_max;
  j["prefix_len"] = cert.prefix_len;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : cert.entries) {
    nlohmann::ordered_json je;
    je["r"] = e.r;
    je["N"] = e.escape_index;
    je["horizon"] = e.horizon;
    je["chain"] = e.chain.points;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

nlohmann::ordered_json refutation_to_json(const Space& space, const PointId& xi,
                                          const CoarseSequence& s, const CoarseSequence& t,
                                          const EpsRefutation& ref) {
  nlohmann::ordered_json j;
  j["kind"] = "eps_refutation";
  j["space"] = space.descriptor_json();
  j["xi"] = xi;
  j["s"] = sequence_to_json(s);
  j["t"] = sequence_to_json(t);
  j["K_max"] = ref.k_max;
  j["r_fail"] = ref.r_fail;
  j["horizon"] = ref.horizon;
  j["s_component"] = ref.s_component;
  j["t_component"] = ref.t_component;
  return j;
}

CertificateFile certificate_from_json(const nlohmann::json& j, const Limits& limits) {
  if (!j.is_object() || j.value("kind", "") != "eps_certificate") {
    throw InputError("certificate: expected kind 'eps_certificate'");
  }
  Space space = Space::parse(j.at("space").dump(), limits);
  PointId xi = j.at("xi").get<PointId>();
  CoarseSequence s = sequence_from_json(j.at("s"));
  CoarseSequence t = sequence_from_json(j.at("t"));
  EpsCertificate cert;
  cert.k = j.at("K").get<Dist>();
  cert.r_max = j.at("r_max").get<int>();
  cert.prefix_len = j.at("prefix_len").get<std::size_t>();
  for (const auto& je : j.at("entries")) {
    EpsEntry e;
    e.r = je.at("r").get<Dist>();
    e.escape_index = je.at("N").get<std::size_t>();
    e.horizon = je.at("horizon").get<Dist>();
    e.chain.points = je.at("chain").get<std::vector<PointId>>();
    e.chain.k = cert.k;
    cert.entries.push_back(std::move(e));
  }
  return CertificateFile{std::move(space), std::move(xi), std::move(s), std::move(t),
                         std::move(cert)};
}

}  // namespace endslab
