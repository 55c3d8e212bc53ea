#pragma once

#include <utility>
#include <vector>

#include "endslab/core.hpp"
#include "endslab/window.hpp"

namespace endslab::kernels {

enum class Mode { serial, parallel };

// Union-find over dense indices.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);
  int find(int v);
  void unite(int a, int b);

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// Edges of the K-hop graph among `active` window points: pairs (i,j) of
// window indices with i < j and window distance <= K. Hops may pass through
// inactive points; only the endpoints must be active. The parallel path
// splits the truncated searches across threads and yields the same edge set.
std::vector<std::pair<int, int>> khop_edges(const Window& w, const std::vector<int>& active,
                                            Dist k, Mode mode);

// Production partition: union-find over khop_edges. Returns one label per
// window index (-1 for inactive); the label is the smallest window index in
// the class, so results are independent of union order and thread count.
std::vector<int> khop_labels(const Window& w, const std::vector<int>& active, Dist k, Mode mode);

// Reference partition kept for testing: per-point truncated Dijkstra rows
// feed a K-hop adjacency matrix whose transitive closure is computed by
// min-label sweeps to a fixpoint. Serial, quadratic, no shared state with
// the union-find path.
std::vector<int> khop_labels_reference(const Window& w, const std::vector<int>& active, Dist k);

}  // namespace endslab::kernels
