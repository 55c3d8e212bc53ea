#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/core.hpp"
#include "endslab/epsilon.hpp"
#include "endslab/sequence.hpp"
#include "endslab/space.hpp"

namespace endslab {

// One concrete sequence having both s and t as subsequences, assembled from
// an epsilon certificate: round r runs the active sequence up to N_r, crosses
// the chain u^r, runs the other sequence back to its previous stop, and the
// roles alternate each round.
struct Witness {
  std::vector<PointId> prefix;
  std::vector<std::size_t> s_map;  // strictly increasing, prefix[s_map[i]] = s(i)
  std::vector<std::size_t> t_map;
  Dist step_bound = 1;  // max(K_s, K_t, cert.K)
};

Witness build_witness(const Space& space, const PointId& xi, const CoarseSequence& s,
                      const CoarseSequence& t, const EpsCertificate& cert);

struct WitnessEscape {
  Dist r = 0;
  bool ok = false;
  std::size_t escape_index = 0;
};

struct WitnessReport {
  bool subsequence_ok = true;
  bool bornologous_ok = true;
  bool proper_ok = true;
  Dist max_step = 0;
  std::vector<WitnessEscape> escapes;
  std::vector<std::string> issues;

  bool ok() const { return subsequence_ok && bornologous_ok && proper_ok; }
};

WitnessReport verify_witness(const Space& space, const PointId& xi, const CoarseSequence& s,
                             const CoarseSequence& t, const Witness& w, Dist r_probe);

nlohmann::ordered_json witness_to_json(const Space& space, const PointId& xi,
                                       const CoarseSequence& s, const CoarseSequence& t,
                                       const Witness& w);

struct WitnessFile {
  Space space;
  PointId xi;
  CoarseSequence s;
  CoarseSequence t;
  Witness witness;
};

WitnessFile witness_from_json(const nlohmann::json& j, const Limits& limits = {});

nlohmann::ordered_json witness_report_to_json(const WitnessReport& r);

}  // namespace endslab
