#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/core.hpp"
#include "endslab/window.hpp"

namespace endslab {

enum class SpaceKind {
  integer_line,
  integer_grid,
  free_group,
  word_tree,
  comb_tree,
  finitely_branching_tree,
  custom,
};

std::string to_string(SpaceKind kind);

// Child counts per depth for finitely branching trees: prefix, then period
// repeated. An empty period means depth >= prefix.size() has no children.
struct ChildRule {
  std::vector<std::int64_t> prefix;
  std::vector<std::int64_t> period;

  std::int64_t count_at_depth(std::size_t depth) const;
};

struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::integer_line;
  int dim = 1;                                      // integer_grid
  int rank = 2;                                     // free_group
  std::string alphabet;                             // word_tree, distinct letters
  ChildRule child_rule;                             // finitely_branching_tree
  std::map<PointId, std::vector<PointId>> adjacency_rule;  // custom
  PointId basepoint;
};

// A lazily enumerable locally finite space: point validity, neighbours and
// (where a closed form exists) exact distances, all driven by the descriptor.
// Immutable; safe to share across threads.
class Space {
 public:
  explicit Space(SpaceDescriptor desc, const Limits& limits = {});

  // Parses and validates a descriptor document (see README for the schema).
  static Space parse(const std::string& json_text, const Limits& limits = {});

  const SpaceDescriptor& descriptor() const { return desc_; }
  const PointId& basepoint() const { return desc_.basepoint; }
  SpaceKind kind() const { return desc_.kind; }

  bool is_point(const PointId& p) const;
  void check_point(const PointId& p) const;  // throws InputError if invalid

  // Neighbours in canonical order. Symmetric for every bundled kind; custom
  // rules are symmetry-checked on a probe ball at parse time.
  std::vector<PointId> neighbors(const PointId& p) const;

  // Exact graph distance by the descriptor's metric rule (L1 on grids, word
  // length difference through the common prefix on trees, reduced-word length
  // on free groups). Custom spaces fall back to BFS over the finite rule.
  Dist distance(const PointId& a, const PointId& b) const;

  bool is_finite() const { return desc_.kind == SpaceKind::custom; }

  nlohmann::ordered_json descriptor_json() const;

 private:
  void validate_descriptor(const Limits& limits);

  SpaceDescriptor desc_;
};

// Distances from a fixed anchor point, exact for rule-based kinds and a
// precomputed BFS row for finite custom spaces.
class BaseDistance {
 public:
  BaseDistance(const Space& space, PointId anchor);
  Dist operator()(const PointId& p) const;
  const PointId& anchor() const { return anchor_; }

 private:
  const Space* space_;
  PointId anchor_;
  std::map<PointId, Dist> table_;  // custom only
  bool use_table_ = false;
};

// Breadth-first ball enumeration: the window of every point at distance <= r
// from center, with horizon r. Throws ResourceError when the point cap is hit.
Window ball(const Space& space, const PointId& center, Dist r, const Limits& limits = {});

// Points at distance exactly r from center.
std::vector<PointId> sphere(const Space& space, const PointId& center, Dist r,
                            const Limits& limits = {});

// Word helpers shared by free groups and trees.
std::string free_reduce(const std::string& word);
std::string free_inverse(const std::string& word);

}  // namespace endslab
