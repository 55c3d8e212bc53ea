#include "endslab/kernels.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace endslab::kernels {

DisjointSet::DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSet::find(int v) {
  while (parent_[static_cast<std::size_t>(v)] != v) {
    parent_[static_cast<std::size_t>(v)] =
        parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
    v = parent_[static_cast<std::size_t>(v)];
  }
  return v;
}

void DisjointSet::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
  parent_[static_cast<std::size_t>(b)] = a;
  size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
}

namespace {

// Active endpoints within K of `from` (window metric), hops through anything.
void khop_targets(const Window& w, const std::vector<char>& active_mask, int from, Dist k,
                  std::vector<std::pair<int, int>>& out) {
  auto row = w.distance_row(from, k);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == kUnreachable || row[j] > k) continue;
    int idx = static_cast<int>(j);
    if (idx > from && active_mask[j]) out.push_back({from, idx});
  }
}

// K == 1 on unit-weight windows is plain adjacency; skip the Dijkstra.
void unit_hop_targets(const Window& w, const std::vector<char>& active_mask, int from,
                      std::vector<std::pair<int, int>>& out) {
  for (const auto& [j, weight] : w.neighbors(from)) {
    if (weight <= 1 && j > from && active_mask[static_cast<std::size_t>(j)]) {
      out.push_back({from, j});
    }
  }
}

}  // namespace

std::vector<std::pair<int, int>> khop_edges(const Window& w, const std::vector<int>& active,
                                            Dist k, Mode mode) {
  std::vector<char> mask(w.size(), 0);
  for (int i : active) mask[static_cast<std::size_t>(i)] = 1;

  std::vector<std::pair<int, int>> edges;
#ifdef _OPENMP
  if (mode == Mode::parallel) {
    std::vector<std::vector<std::pair<int, int>>> local;
#pragma omp parallel
    {
#pragma omp single
      local.resize(static_cast<std::size_t>(omp_get_num_threads()));
      auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(active.size()); ++idx) {
        int from = active[static_cast<std::size_t>(idx)];
        if (k == 1) {
          unit_hop_targets(w, mask, from, mine);
        } else {
          khop_targets(w, mask, from, k, mine);
        }
      }
    }
    for (auto& chunk : local) {
      edges.insert(edges.end(), chunk.begin(), chunk.end());
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  }
#else
  (void)mode;
#endif
  for (int from : active) {
    if (k == 1) {
      unit_hop_targets(w, mask, from, edges);
    } else {
      khop_targets(w, mask, from, k, edges);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<int> khop_labels(const Window& w, const std::vector<int>& active, Dist k, Mode mode) {
  auto edges = khop_edges(w, active, k, mode);
  DisjointSet ds(w.size());
  for (const auto& [a, b] : edges) ds.unite(a, b);

  std::vector<int> label(w.size(), -1);
  std::vector<int> rep_min(w.size(), -1);
  for (int i : active) {
    int r = ds.find(i);
    if (rep_min[static_cast<std::size_t>(r)] < 0) rep_min[static_cast<std::size_t>(r)] = i;
  }
  for (int i : active) label[static_cast<std::size_t>(i)] = rep_min[static_cast<std::size_t>(ds.find(i))];
  return label;
}

std::vector<int> khop_labels_reference(const Window& w, const std::vector<int>& active, Dist k) {
  std::vector<char> mask(w.size(), 0);
  for (int i : active) mask[static_cast<std::size_t>(i)] = 1;

  // K-hop adjacency among active points, one truncated row per point.
  std::vector<std::vector<int>> adj(w.size());
  for (int from : active) {
    auto row = w.distance_row(from, k);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == kUnreachable || row[j] > k) continue;
      if (mask[j] && static_cast<int>(j) != from) adj[static_cast<std::size_t>(from)].push_back(static_cast<int>(j));
    }
  }

  std::vector<int> label(w.size(), -1);
  for (int i : active) label[static_cast<std::size_t>(i)] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i : active) {
      for (int j : adj[static_cast<std::size_t>(i)]) {
        int m = std::min(label[static_cast<std::size_t>(i)], label[static_cast<std::size_t>(j)]);
        if (label[static_cast<std::size_t>(i)] != m || label[static_cast<std::size_t>(j)] != m) {
          label[static_cast<std::size_t>(i)] = m;
          label[static_cast<std::size_t>(j)] = m;
          changed = true;
        }
      }
    }
  }
  return label;
}

}  // namespace endslab::kernels
