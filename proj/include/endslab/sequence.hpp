#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/core.hpp"
#include "endslab/space.hpp"

namespace endslab {

enum class RuleKind { affine, poly, word_ray, explicit_rule };

// Total symbolic rule N -> PointId. affine/poly operate on integer lines and
// grids (coefficient vectors, coeffs[j] multiplies i^j); word_ray starts at
// `head` and appends the letters of `period` cyclically; explicit_rule lists
// a prefix and an optional repeating cycle (no cycle means the sequence is
// only defined on its prefix and every result is prefix-scale).
struct SequenceRule {
  RuleKind kind = RuleKind::affine;
  std::vector<std::vector<std::int64_t>> coeffs;
  std::string head;
  std::string period;
  std::vector<PointId> prefix;
  std::vector<PointId> cycle;
};

struct CoarseSequence {
  SequenceRule rule;
  Dist step_bound = 1;  // declared bornologousness witness, verified separately
};

bool rule_is_total(const CoarseSequence& s);

// Largest evaluable length for partial rules (SIZE_MAX when total).
std::size_t rule_length(const CoarseSequence& s);

PointId eval_sequence(const Space& space, const CoarseSequence& s, std::size_t i);
std::vector<PointId> sequence_prefix(const Space& space, const CoarseSequence& s, std::size_t n);

struct ProperProbe {
  Dist r = 0;
  bool ok = false;
  std::size_t escape_index = 0;  // least N with the whole later prefix outside B(xi; r)
};

// Prefix-scale validation of the coarse-sequence conditions: necessary
// evidence, never sufficient, and the report says so.
struct SequenceReport {
  bool bornologous_ok = false;
  Dist max_step = 0;
  std::size_t first_violation = 0;  // first i with d(s(i), s(i+1)) > declared bound
  bool proper_ok = false;
  std::vector<ProperProbe> proper;  // r = 0..r_probe
  Dist first_failing_radius = -1;
  bool prefix_scale_only = true;
  bool rule_total = true;

  bool ok() const { return bornologous_ok && proper_ok; }
};

SequenceReport validate_coarse(const Space& space, const PointId& xi, const CoarseSequence& s,
                               std::size_t prefix_len, Dist r_probe);

struct SubsequenceWitness {
  std::vector<std::size_t> map;  // strictly increasing, s(i) = t(map[i])
  std::size_t scan_limit = 0;
};

// Greedy least-match subsequence witness on the prefix, scanning t up to
// 8*prefix_len + 64 indices. Greedy finds a witness whenever one exists
// within the scan.
std::optional<SubsequenceWitness> is_subsequence(const Space& space, const CoarseSequence& s,
                                                 const CoarseSequence& t, std::size_t prefix_len);

nlohmann::ordered_json sequence_to_json(const CoarseSequence& s);
CoarseSequence sequence_from_json(const nlohmann::json& j);
CoarseSequence sequence_from_string(const std::string& text);

nlohmann::ordered_json report_to_json(const SequenceReport& r);

}  // namespace endslab
