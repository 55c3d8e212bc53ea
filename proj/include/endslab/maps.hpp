#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/components.hpp"
#include "endslab/core.hpp"
#include "endslab/sequence.hpp"
#include "endslab/space.hpp"

namespace endslab {

enum class MapRuleKind { identity, affine, poly, absolute, substitution, constant, compose };

// Symbolic point map. affine acts on integer tuples as floor((A x + b) / div);
// poly is a scalar polynomial on the integer line; substitution replaces
// generator letters by words (reduced on free groups); identity re-reads a
// point verbatim in the target space (inclusions); compose applies stages
// left to right.
struct MapRule {
  MapRuleKind kind = MapRuleKind::identity;
  std::vector<std::vector<std::int64_t>> matrix;  // affine, rows = target dim
  std::vector<std::int64_t> offset;
  std::int64_t divisor = 1;
  std::vector<std::int64_t> coeffs;    // poly
  std::map<char, std::string> images;  // substitution
  PointId constant;
  std::vector<MapRule> stages;  // compose
};

struct CoarseMap {
  Space source;
  Space target;
  MapRule rule;
  bool preserve_basepoint = false;
};

PointId apply_map(const CoarseMap& f, const PointId& p);

CoarseMap map_from_json(const nlohmann::json& j, const Limits& limits = {});
CoarseMap map_from_string(const std::string& text, const Limits& limits = {});
nlohmann::ordered_json map_to_json(const CoarseMap& f);

struct TrendSample {
  Dist probe_radius = 0;
  Dist value = 0;
};

// Probe-scale report: sups at three doubling radii; a property holds when the
// samples have stabilised rather than grown with the probe.
struct MapCheckReport {
  bool bornologous_ok = false;
  std::vector<TrendSample> displacement;  // sup d(f x, f y) over d(x,y) <= K_in
  bool proper_ok = false;
  std::vector<std::vector<TrendSample>> preimage_reach;  // per target radius r = 0..probe
  bool basepoint_ok = true;

  bool ok() const { return bornologous_ok && proper_ok && basepoint_ok; }
};

MapCheckReport check_coarse(const CoarseMap& f, Dist probe_radius, Dist k_in,
                            const Limits& limits = {});

struct ClosenessReport {
  bool close = false;
  Dist sup = 0;  // at the largest probe
  std::vector<TrendSample> sups;
};

ClosenessReport are_close(const CoarseMap& f, const CoarseMap& g, Dist probe_radius,
                          const Limits& limits = {});

struct EndMapping {
  std::vector<std::pair<PointId, PointId>> pairs;  // source thread id -> target thread id
  bool bijection = false;
};

// Sends each live source class at r_max to the target thread containing the
// images of its frontier points. Straddling images or images too shallow for
// the target system signal that a horizon is too small.
EndMapping induced_end_map(const CoarseMap& f, const ThreadSystem& src, const ThreadSystem& dst);

// f composed with a sequence, materialised as an explicit prefix-scale rule.
CoarseSequence compose_map_sequence(const CoarseMap& f, const CoarseSequence& s,
                                    std::size_t prefix_len);

nlohmann::ordered_json map_check_to_json(const MapCheckReport& r);
nlohmann::ordered_json closeness_to_json(const ClosenessReport& r);
nlohmann::ordered_json end_mapping_to_json(const EndMapping& m);

}  // namespace endslab
