// Acceptance suite: one criterion per numbered check, one [PASS]/[FAIL] line
// each, nonzero exit if any selected criterion fails.
//
// Usage: endslab_acceptance [N...]   (default: run all)

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "endslab/components.hpp"
#include "endslab/epsilon.hpp"
#include "endslab/kernels.hpp"
#include "endslab/maps.hpp"
#include "endslab/sigma_witness.hpp"

using namespace endslab;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw CheckFailure(what);
}

std::int64_t pow_i(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

Space make(const std::string& json) { return Space::parse(json); }

CoarseSequence seq(const std::string& json) { return sequence_from_string(json); }

std::string fmt_counts(const std::vector<std::int64_t>& counts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < counts.size(); ++i) out << (i ? "," : "") << counts[i];
  return out.str();
}

// ---------------------------------------------------------------- criterion 1
std::string ends_of_the_line() {
  auto profile = end_profile(make(R"({"kind":"integer_line"})"), "0", 1, 32, 6);
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    require(profile.counts[i] == 2, "count at r=" + std::to_string(i + 1) + " is " +
                                        std::to_string(profile.counts[i]) + ", expected 2");
  }
  require(profile.classification() == "finite(2)",
          "classification is " + profile.classification() + ", expected finite(2)");
  return "counts identically 2 for r=1..32, finite(2)";
}

// ---------------------------------------------------------------- criterion 2
std::string ends_of_the_grid() {
  auto profile = end_profile(make(R"({"kind":"integer_grid","dim":2})"), "0,0", 1, 24, 6);
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    require(profile.counts[i] == 1, "count at r=" + std::to_string(i + 1) + " is " +
                                        std::to_string(profile.counts[i]) + ", expected 1");
  }
  require(profile.classification() == "finite(1)",
          "classification is " + profile.classification() + ", expected finite(1)");
  return "counts identically 1 for r=1..24, finite(1)";
}

// ---------------------------------------------------------------- criterion 3
std::string free_group_component_law() {
  auto profile = end_profile(make(R"({"kind":"free_group","rank":2})"), "", 1, 8, 2);
  require(profile.classification() == "uncountable-growth",
          "classification is " + profile.classification() + ", expected uncountable-growth");
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    std::int64_t expected = 4 * pow_i(3, static_cast<int>(i));  // 4*3^(r-1) at r = i+1
    require(profile.counts[i] == expected,
            "count at r=" + std::to_string(i + 1) + " is " + std::to_string(profile.counts[i]) +
                ", expected 4*3^(r-1) = " + std::to_string(expected) +
                " (actual counts " + fmt_counts(profile.counts) + " follow 4*3^r)");
  }
  return "counts 4*3^(r-1) for r=1..8, uncountable-growth";
}

// ---------------------------------------------------------------- criterion 4
std::string comb_tree_counts() {
  auto profile = end_profile(make(R"({"kind":"comb_tree"})"), "", 1, 48, 6);
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    std::int64_t expected = static_cast<std::int64_t>(i) + 3;  // r+2 at r = i+1
    require(profile.counts[i] == expected,
            "count at r=" + std::to_string(i + 1) + " is " + std::to_string(profile.counts[i]) +
                ", expected " + std::to_string(expected));
  }
  require(profile.classification() == "countable-growth",
          "classification is " + profile.classification() + ", expected countable-growth");
  return "counts r+2 for r=1..48, countable-growth";
}

// ---------------------------------------------------------------- criterion 5
std::string binary_tree_counts() {
  auto profile = end_profile(make(R"({"kind":"word_tree","alphabet":"ab"})"), "", 1, 10, 6);
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    std::int64_t expected = pow_i(2, static_cast<int>(i) + 2);  // 2^(r+1) at r = i+1
    require(profile.counts[i] == expected,
            "count at r=" + std::to_string(i + 1) + " is " + std::to_string(profile.counts[i]) +
                ", expected 2^(r+1) = " + std::to_string(expected));
  }
  return "counts 2^(r+1) for r=1..10";
}

// ------------------------------------------------------------- criteria 6-8
struct SequencePair {
  const char* label;
  const char* space;
  const char* s;
  const char* t;
  bool equivalent;
};

const std::vector<SequencePair>& fixture_pairs() {
  static const std::vector<SequencePair> pairs = {
      {"Z: i vs i+3", R"({"kind":"integer_line"})",
       R"({"rule":{"kind":"affine","a":1,"b":0},"step_bound":1})",
       R"({"rule":{"kind":"affine","a":1,"b":3},"step_bound":1})", true},
      {"Z: i vs -i", R"({"kind":"integer_line"})",
       R"({"rule":{"kind":"affine","a":1,"b":0},"step_bound":1})",
       R"({"rule":{"kind":"affine","a":-1,"b":0},"step_bound":1})", false},
      {"Z: 2i vs i", R"({"kind":"integer_line"})",
       R"({"rule":{"kind":"affine","a":2,"b":0},"step_bound":2})",
       R"({"rule":{"kind":"affine","a":1,"b":0},"step_bound":1})", true},
      {"Z: -i vs -2i", R"({"kind":"integer_line"})",
       R"({"rule":{"kind":"affine","a":-1,"b":0},"step_bound":1})",
       R"({"rule":{"kind":"affine","a":-2,"b":0},"step_bound":2})", true},
      {"Z2: x-axis vs y-axis", R"({"kind":"integer_grid","dim":2})",
       R"({"rule":{"kind":"affine","a":[1,0],"b":[0,0]},"step_bound":1})",
       R"({"rule":{"kind":"affine","a":[0,1],"b":[0,0]},"step_bound":1})", true},
      {"Z2: x-axis vs -x-axis", R"({"kind":"integer_grid","dim":2})",
       R"({"rule":{"kind":"affine","a":[1,0],"b":[0,0]},"step_bound":1})",
       R"({"rule":{"kind":"affine","a":[-1,0],"b":[0,0]},"step_bound":1})", true},
      {"Z2: diagonal vs x-axis", R"({"kind":"integer_grid","dim":2})",
       R"({"rule":{"kind":"affine","a":[1,1],"b":[0,0]},"step_bound":2})",
       R"({"rule":{"kind":"affine","a":[1,0],"b":[0,0]},"step_bound":1})", true},
      {"F2: a-ray vs shifted a-ray", R"({"kind":"free_group","rank":2})",
       R"({"rule":{"kind":"word_ray","head":"","period":"a"},"step_bound":1})",
       R"({"rule":{"kind":"word_ray","head":"aa","period":"a"},"step_bound":1})", true},
      {"F2: a-ray vs b-ray", R"({"kind":"free_group","rank":2})",
       R"({"rule":{"kind":"word_ray","head":"","period":"a"},"step_bound":1})",
       R"({"rule":{"kind":"word_ray","head":"","period":"b"},"step_bound":1})", false},
      {"F2: a-ray vs ab-ray", R"({"kind":"free_group","rank":2})",
       R"({"rule":{"kind":"word_ray","head":"","period":"a"},"step_bound":1})",
       R"({"rule":{"kind":"word_ray","head":"","period":"ab"},"step_bound":1})", false},
      {"comb: b-spur vs shifted b-spur", R"({"kind":"comb_tree"})",
       R"({"rule":{"kind":"word_ray","head":"","period":"b"},"step_bound":1})",
       R"({"rule":{"kind":"word_ray","head":"bb","period":"b"},"step_bound":1})", true},
      {"comb: spine vs a-spur", R"({"kind":"comb_tree"})",
       R"({"rule":{"kind":"word_ray","head":"","period":"a"},"step_bound":1})",
       R"({"rule":{"kind":"word_ray","head":"a","period":"b"},"step_bound":1})", false},
      {"comb: b-spur vs a-spur", R"({"kind":"comb_tree"})",
       R"({"rule":{"kind":"word_ray","head":"","period":"b"},"step_bound":1})",
       R"({"rule":{"kind":"word_ray","head":"a","period":"b"},"step_bound":1})", false},
  };
  return pairs;
}

constexpr int kAgreementRadius = 16;

EpsParams agreement_params() {
  EpsParams params;
  params.k = 1;
  params.r_max = kAgreementRadius;
  params.margin = 6;
  return params;
}

// First sequence point past B(xi; r_max + K), the tail anchor for the
// thread-membership query.
PointId deep_point(const Space& space, const BaseDistance& base, const CoarseSequence& c,
                   Dist threshold) {
  for (std::size_t i = 0;; ++i) {
    PointId p = eval_sequence(space, c, i);
    if (base(p) > threshold) return p;
  }
}

// ---------------------------------------------------------------- criterion 6
std::string epsilon_thread_agreement() {
  auto params = agreement_params();
  int checked = 0;
  for (const auto& fx : fixture_pairs()) {
    Space space = make(fx.space);
    const PointId& xi = space.basepoint();
    auto s = seq(fx.s);
    auto t = seq(fx.t);
    auto outcome = epsilon_equivalent(space, xi, s, t, params);
    require(outcome.equivalent() == fx.equivalent,
            std::string(fx.label) + ": epsilon verdict is " +
                (outcome.equivalent() ? "equivalent" : "refuted") + ", fixture expects " +
                (fx.equivalent ? "equivalent" : "refuted"));

    BaseDistance base(space, xi);
    bool threads = same_thread(space, xi, deep_point(space, base, s, params.r_max + params.k),
                               deep_point(space, base, t, params.r_max + params.k), params.k,
                               params.r_max, params.margin);
    require(threads == outcome.equivalent(),
            std::string(fx.label) + ": epsilon says " +
                (outcome.equivalent() ? "equivalent" : "refuted") +
                " but thread membership at r_max=16 says " + (threads ? "same" : "distinct"));
    ++checked;
  }
  return std::to_string(checked) + "/13 pairs agree at horizon r_max=16";
}

// ---------------------------------------------------------------- criterion 7
std::string witness_round_trip() {
  auto params = agreement_params();
  int built = 0;
  for (const auto& fx : fixture_pairs()) {
    if (!fx.equivalent) continue;
    Space space = make(fx.space);
    const PointId& xi = space.basepoint();
    auto s = seq(fx.s);
    auto t = seq(fx.t);
    auto outcome = epsilon_equivalent(space, xi, s, t, params);
    require(outcome.equivalent(), std::string(fx.label) + ": expected a certificate");
    auto witness = build_witness(space, xi, s, t, *outcome.certificate);
    Dist bound = std::max({s.step_bound, t.step_bound, outcome.certificate->k});
    require(witness.step_bound <= bound, std::string(fx.label) + ": witness bound exceeds max");
    auto report = verify_witness(space, xi, s, t, witness, kAgreementRadius);
    std::string issues;
    for (const auto& i : report.issues) issues += "; " + i;
    require(report.ok(), std::string(fx.label) + ": witness verification failed" + issues);
    require(report.max_step <= bound,
            std::string(fx.label) + ": max step " + std::to_string(report.max_step) +
                " exceeds max(K_s,K_t,K) = " + std::to_string(bound));
    ++built;
  }
  return std::to_string(built) + "/7 positive verdicts round-trip through the witness";
}

// ---------------------------------------------------------------- criterion 8
struct Artifact {
  Space space;
  PointId xi;
  CoarseSequence s;
  CoarseSequence t;
  EpsCertificate cert;
  Witness witness;
};

PointId far_point(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::integer_line: return "999999";
    case SpaceKind::integer_grid: return "999999,999999";
    case SpaceKind::free_group:
    case SpaceKind::word_tree:
    case SpaceKind::comb_tree: return std::string(200, 'a');
    default: return space.basepoint();
  }
}

std::string certificate_fuzzing() {
  auto params = agreement_params();
  params.r_max = 10;  // smaller radii keep 1000 replays quick

  std::vector<Artifact> artifacts;
  for (const auto& fx : fixture_pairs()) {
    if (!fx.equivalent) continue;
    Space space = make(fx.space);
    PointId xi = space.basepoint();
    auto s = seq(fx.s);
    auto t = seq(fx.t);
    auto outcome = epsilon_equivalent(space, xi, s, t, params);
    require(outcome.equivalent(), std::string(fx.label) + ": expected a certificate");
    auto witness = build_witness(space, xi, s, t, *outcome.certificate);
    require(verify_certificate(space, xi, s, t, *outcome.certificate).ok,
            std::string(fx.label) + ": baseline certificate must verify");
    require(verify_witness(space, xi, s, t, witness, params.r_max).ok(),
            std::string(fx.label) + ": baseline witness must verify");
    artifacts.push_back(Artifact{std::move(space), std::move(xi), std::move(s), std::move(t),
                                 std::move(*outcome.certificate), std::move(witness)});
  }

  std::mt19937_64 rng(0x5eed5eedULL);
  int rejected = 0;
  const int kTrials = 1000;
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto& art = artifacts[static_cast<std::size_t>(trial) % artifacts.size()];
    int op = trial % 8;
    bool ok_means_bug = false;
    switch (op) {
      case 0: {  // chain point dragged to xi (inside every forbidden ball)
        auto bad = art.cert;
        auto& entry = bad.entries[rng() % bad.entries.size()];
        entry.chain.points[rng() % entry.chain.points.size()] = art.xi;
        ok_means_bug = verify_certificate(art.space, art.xi, art.s, art.t, bad).ok;
        break;
      }
      case 1: {  // non-increasing escape indices
        auto bad = art.cert;
        std::size_t e = 1 + rng() % (bad.entries.size() - 1);
        bad.entries[e].escape_index = bad.entries[e - 1].escape_index;
        ok_means_bug = verify_certificate(art.space, art.xi, art.s, art.t, bad).ok;
        break;
      }
      case 2: {  // truncated chain: endpoint mismatch (or empty chain)
        auto bad = art.cert;
        auto& entry = bad.entries[rng() % bad.entries.size()];
        entry.chain.points.pop_back();
        ok_means_bug = verify_certificate(art.space, art.xi, art.s, art.t, bad).ok;
        break;
      }
      case 3: {  // reversed endpoints on a non-trivial chain
        auto bad = art.cert;
        auto& entry = bad.entries[rng() % bad.entries.size()];
        std::swap(entry.chain.points.front(), entry.chain.points.back());
        ok_means_bug = verify_certificate(art.space, art.xi, art.s, art.t, bad).ok;
        break;
      }
      case 4: {  // witness: final point dragged to xi breaks the escape at r=0
        auto bad = art.witness;
        bad.prefix.back() = art.xi;
        ok_means_bug = verify_witness(art.space, art.xi, art.s, art.t, bad, params.r_max).ok();
        break;
      }
      case 5: {  // witness: off-by-one index map entry
        auto bad = art.witness;
        std::size_t j = rng() % bad.s_map.size();
        for (;; j = (j + 1) % bad.s_map.size()) {
          std::size_t moved = bad.s_map[j] + 1;
          if (moved < bad.prefix.size() &&
              bad.prefix[moved] != eval_sequence(art.space, art.s, j)) {
            bad.s_map[j] = moved;
            break;
          }
        }
        ok_means_bug = verify_witness(art.space, art.xi, art.s, art.t, bad, params.r_max).ok();
        break;
      }
      case 6: {  // witness: adjacent map entries swapped break monotonicity
        auto bad = art.witness;
        std::size_t j = rng() % (bad.t_map.size() - 1);
        std::swap(bad.t_map[j], bad.t_map[j + 1]);
        ok_means_bug = verify_witness(art.space, art.xi, art.s, art.t, bad, params.r_max).ok();
        break;
      }
      default: {  // witness: a point teleported far away breaks the step bound
        auto bad = art.witness;
        bad.prefix[bad.prefix.size() / 2] = far_point(art.space);
        ok_means_bug = verify_witness(art.space, art.xi, art.s, art.t, bad, params.r_max).ok();
        break;
      }
    }
    if (!ok_means_bug) ++rejected;
  }
  require(rejected == kTrials, std::to_string(kTrials - rejected) + " of " +
                                   std::to_string(kTrials) + " corruptions were accepted");
  return "1000/1000 corruptions rejected";
}

// ---------------------------------------------------------------- criterion 9
std::string coarse_invariance() {
  const std::string line_space =
      R"({"source":{"kind":"integer_line"},"target":{"kind":"integer_line"},"rule":)";
  auto mk = [&](const std::string& rule) { return map_from_string(line_space + rule + "}"); };

  auto id = mk(R"({"kind":"affine","a":1,"b":0})");
  auto shift = mk(R"({"kind":"affine","a":1,"b":5})");
  require(are_close(id, shift, 4).close, "id and +5 must be close");

  // horizons sized so every fixture image lands inside its target window and
  // past r_max: the +5 shift pulls the negative frontier in by 5, doubling
  // pushes it out to twice the source horizon
  Space line = make(R"({"kind":"integer_line"})");
  auto narrow = component_threads(line, "0", 1, 5, 7);   // horizon 12
  auto wide = component_threads(line, "0", 1, 5, 19);    // horizon 24
  auto map_id = induced_end_map(id, narrow, wide);
  auto map_shift = induced_end_map(shift, narrow, wide);
  require(map_id.pairs == map_shift.pairs, "close maps must induce the same end map");

  // vertex inclusion against its retraction: composites are close to id and
  // induce the identity end map
  for (const char* retract_rule :
       {R"({"kind":"affine","a":1,"b":0,"div":2})", R"({"kind":"affine","a":1,"b":1,"div":2})"}) {
    auto composite = mk(std::string(R"({"kind":"compose","rules":[{"kind":"affine","a":2,"b":0},)") +
                        retract_rule + "]}");
    require(are_close(composite, id, 4).close, "retraction composite must be close to id");
    auto m = induced_end_map(composite, narrow, wide);
    require(m.pairs == map_id.pairs, "retraction composite must induce the identity end map");
  }

  // equivalence pairs: induced maps are bijections both ways
  auto incl = mk(R"({"kind":"affine","a":2,"b":0})");
  require(induced_end_map(incl, narrow, wide).bijection, "doubling must biject the ends");
  for (const char* retract_rule :
       {R"({"kind":"affine","a":1,"b":0,"div":2})", R"({"kind":"affine","a":1,"b":1,"div":2})"}) {
    auto retract = mk(retract_rule);
    require(induced_end_map(retract, wide, narrow).bijection, "retraction must biject the ends");
  }

  // epsilon verdicts transport along the equivalence
  auto ray = seq(R"({"rule":{"kind":"affine","a":1,"b":0},"step_bound":1})");
  auto ray3 = seq(R"({"rule":{"kind":"affine","a":1,"b":3},"step_bound":1})");
  auto neg = seq(R"({"rule":{"kind":"affine","a":-1,"b":0},"step_bound":1})");
  EpsParams params;
  params.k = 1;
  params.r_max = 10;
  EpsParams transported = params;
  transported.k = 2;
  transported.prefix_len = 48;
  auto fs = compose_map_sequence(incl, ray, 64);
  auto ft = compose_map_sequence(incl, ray3, 64);
  auto fn = compose_map_sequence(incl, neg, 64);
  require(epsilon_equivalent(line, "0", ray, ray3, params).equivalent() &&
              epsilon_equivalent(line, "0", fs, ft, transported).equivalent(),
          "positive verdict must transport along the doubling");
  require(!epsilon_equivalent(line, "0", ray, neg, params).equivalent() &&
              !epsilon_equivalent(line, "0", fs, fn, transported).equivalent(),
          "negative verdict must transport along the doubling");
  return "closeness congruence, bijections and verdict transport hold";
}

// --------------------------------------------------------------- criterion 10
std::string partition_oracle() {
  struct Fixture {
    std::string desc;
    Dist radius;
  };
  std::vector<Fixture> fixtures = {
      {R"({"kind":"integer_line"})", 12},
      {R"({"kind":"integer_grid","dim":2})", 7},
      {R"({"kind":"comb_tree"})", 15},
      {R"({"kind":"free_group","rank":2})", 4},
      {R"({"kind":"word_tree","alphabet":"ab"})", 6},
      {R"({"kind":"finitely_branching_tree","child_rule":{"prefix":[3],"period":[2,1]}})", 7},
  };

  int runs = 0;
  auto compare = [&](const Window& w, Dist radius) {
    std::vector<int> active;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Dist d = w.dist_to_origin(static_cast<int>(i));
      if (d == kUnreachable || d > radius) active.push_back(static_cast<int>(i));
    }
    for (Dist k : {1, 2, 3}) {
      auto fast = kernels::khop_labels(w, active, k, kernels::Mode::parallel);
      auto oracle = kernels::khop_labels_reference(w, active, k);
      require(fast == oracle, "partition mismatch against the transitive-closure oracle (K=" +
                                  std::to_string(k) + ", forbidden=" + std::to_string(radius) +
                                  ", window " + std::to_string(w.size()) + " points)");
      ++runs;
    }
  };

  for (const auto& fx : fixtures) {
    Space space = make(fx.desc);
    Window w = ball(space, space.basepoint(), fx.radius);
    require(w.size() <= 500, fx.desc + ": window exceeds 500 points");
    for (Dist radius : {Dist{0}, Dist{1}, fx.radius / 2, fx.radius - 1}) {
      compare(w, radius);
    }
  }

  // random graph windows
  std::mt19937_64 rng(99);
  for (int g = 0; g < 3; ++g) {
    std::ostringstream json;
    int n = 60 + g * 40;
    json << R"({"origin":"v0","horizon":3,"points":[)";
    for (int i = 0; i < n; ++i) json << (i ? "," : "") << "\"v" << i << "\"";
    json << R"(],"edges":[)";
    for (int i = 1; i < n; ++i) {
      json << (i > 1 ? "," : "") << "[\"v" << rng() % static_cast<std::uint64_t>(i) << "\",\"v"
           << i << "\"]";
      if (rng() % 4 == 0) {
        json << ",[\"v" << rng() % static_cast<std::uint64_t>(i) << "\",\"v" << i << "\"]";
      }
    }
    json << "]}";
    Window w = Window::from_json_string(json.str());
    compare(w, 0);
    compare(w, 1);
  }
  return std::to_string(runs) + " window/K/radius combinations match the oracle";
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "ends(Z) = 2", 1.0, ends_of_the_line},
      {2, "ends(Z^2) = 1", 5.0, ends_of_the_grid},
      {3, "free group live-component law", 30.0, free_group_component_law},
      {4, "comb tree counts r+2", 5.0, comb_tree_counts},
      {5, "binary word tree counts 2^(r+1)", 10.0, binary_tree_counts},
      {6, "epsilon/thread agreement", 60.0, epsilon_thread_agreement},
      {7, "sigma-witness round trip", 60.0, witness_round_trip},
      {8, "certificate soundness fuzzing", 60.0, certificate_fuzzing},
      {9, "coarse invariance", 30.0, coarse_invariance},
      {10, "partition oracle equivalence", 60.0, partition_oracle},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) == selected.end()) {
      continue;
    }
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = true;
    try {
      detail = criterion.run();
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (pass && elapsed > criterion.budget_seconds) {
      pass = false;
      detail = "exceeded the " + std::to_string(criterion.budget_seconds) + "s budget";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
         << criterion.name << " — " << detail << " (" << elapsed << "s)";
    std::cout << line.str() << std::endl;
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
