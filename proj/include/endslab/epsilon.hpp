#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/components.hpp"
#include "endslab/core.hpp"
#include "endslab/sequence.hpp"
#include "endslab/space.hpp"

namespace endslab {

struct EpsEntry {
  Dist r = 0;
  std::size_t escape_index = 0;  // N_r: both prefix tails stay outside B(xi; r+K) from here
  Dist horizon = 0;              // exploration bound used for this radius
  Chain chain;                   // joins s(N_r) to t(N_r) outside B(xi; r)
};

// Positive witness: one uniform K, entries for every radius r = 0..r_max with
// strictly increasing N_r. Semantics are scale-bounded: equivalence holds at
// every probed radius.
struct EpsCertificate {
  Dist k = 1;
  int r_max = 0;
  std::size_t prefix_len = 0;
  std::vector<EpsEntry> entries;
};

// Negative witness at the probed scale: at radius r_fail the two tails sit in
// distinct K-components of the explored annulus, for every K <= k_max.
struct EpsRefutation {
  Dist k_max = 1;
  Dist r_fail = 0;
  Dist horizon = 0;
  PointId s_component;  // canonical least point of the s-tail component
  PointId t_component;
};

struct EpsOutcome {
  std::optional<EpsCertificate> certificate;
  std::optional<EpsRefutation> refutation;

  bool equivalent() const { return certificate.has_value(); }
};

struct EpsParams {
  Dist k = 1;
  int r_max = 16;
  Dist margin = 6;             // exploration headroom past each radius
  std::size_t prefix_len = 0;  // 0: derived as 2*(r_max+margin)+16
  Limits limits;
};

EpsOutcome epsilon_equivalent(const Space& space, const PointId& xi, const CoarseSequence& s,
                              const CoarseSequence& t, const EpsParams& params);

struct EpsSearchOutcome {
  Dist k = 1;  // minimal K with a certificate, or k_max when refuted
  EpsOutcome outcome;
};

EpsSearchOutcome epsilon_search_k(const Space& space, const PointId& xi, const CoarseSequence& s,
                                  const CoarseSequence& t, Dist k_max, EpsParams params);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> issues;

  void fail(std::string what) {
    ok = false;
    issues.push_back(std::move(what));
  }
};

// Independent replay of a certificate: endpoints, ball exclusion, hop bounds
// and tail containment are recomputed from the space rules alone.
VerifyReport verify_certificate(const Space& space, const PointId& xi, const CoarseSequence& s,
                                const CoarseSequence& t, const EpsCertificate& cert,
                                const Limits& limits = {});

// (s,t)-certificate to (t,s)-certificate by reversing every chain.
EpsCertificate reverse_certificate(const EpsCertificate& cert);

// Transitivity construction: stitches (s,t)- and (t,u)-certificates into an
// (s,u)-certificate with K' = max of the two K, walking the middle sequence
// between the two escape indices.
EpsCertificate concat_certificates(const Space& space, const CoarseSequence& s,
                                   const CoarseSequence& t, const CoarseSequence& u,
                                   const EpsCertificate& cert_st, const EpsCertificate& cert_tu);

nlohmann::ordered_json certificate_to_json(const Space& space, const PointId& xi,
                                           const CoarseSequence& s, const CoarseSequence& t,
                                           const EpsCertificate& cert);
nlohmann::ordered_json refutation_to_json(const Space& space, const PointId& xi,
                                          const CoarseSequence& s, const CoarseSequence& t,
                                          const EpsRefutation& ref);

struct CertificateFile {
  Space space;
  PointId xi;
  CoarseSequence s;
  CoarseSequence t;
  EpsCertificate cert;
};

CertificateFile certificate_from_json(const nlohmann::json& j, const Limits& limits = {});

}  // namespace endslab
