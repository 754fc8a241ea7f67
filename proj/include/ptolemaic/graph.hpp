// Copyright 2026 The ptolemaic-deletion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptolemaic {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Raised when a structural precondition of an algorithm does not hold
/// (e.g. an inter-clique digraph that is not laminar).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void normalize(VertexSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline VertexSet normalized(VertexSet s) {
  normalize(s);
  return s;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// FNV-style hash over a sorted id list; used to deduplicate sets.
struct VertexSetHash {
  std::size_t operator()(const std::vector<int>& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : s) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Simple undirected graph on vertices 0..n-1 with nonnegative vertex weights.
///
/// Neighbor lists are kept sorted; an adjacency matrix backs O(1) edge tests.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  explicit WeightedGraph(int n, double default_weight = 1.0)
      : n_(n),
        adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
        neighbors_(static_cast<std::size_t>(n)),
        weights_(static_cast<std::size_t>(n), default_weight) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    check_weight(default_weight);
  }

  static WeightedGraph from_edges(int n, std::span<const std::pair<int, int>> edges,
                                  std::span<const double> weights = {}) {
    WeightedGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    if (!weights.empty()) {
      if (static_cast<int>(weights.size()) != n)
        throw std::invalid_argument("weight vector length differs from vertex count");
      for (int v = 0; v < n; ++v) g.set_weight(v, weights[static_cast<std::size_t>(v)]);
    }
    return g;
  }

  static WeightedGraph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  int size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }

  /// Adds {u, v}; adding an existing edge is a no-op.
  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (adjacent(u, v)) return;
    adj_[index(u, v)] = adj_[index(v, u)] = 1;
    insert_sorted(neighbors_[static_cast<std::size_t>(u)], v);
    insert_sorted(neighbors_[static_cast<std::size_t>(v)], u);
    ++m_;
  }

  void set_weight(Vertex v, double w) {
    check_vertex(v);
    check_weight(w);
    weights_[static_cast<std::size_t>(v)] = w;
  }

  bool adjacent(Vertex u, Vertex v) const { return adj_[index(u, v)] != 0; }
  const VertexSet& neighbors(Vertex v) const { return neighbors_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  double weight(Vertex v) const { return weights_[static_cast<std::size_t>(v)]; }
  std::span<const double> weights() const noexcept { return weights_; }

  VertexSet closed_neighborhood(Vertex v) const {
    VertexSet out = neighbors(v);
    insert_sorted(out, v);
    return out;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
      for (int v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  VertexSet vertices() const {
    VertexSet out(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) out[static_cast<std::size_t>(v)] = v;
    return out;
  }

  /// Subgraph induced by `keep` (sorted), relabeled densely in the order of `keep`.
  WeightedGraph induced(const VertexSet& keep) const {
    WeightedGraph h(static_cast<int>(keep.size()));
    std::vector<int> local(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      check_vertex(keep[i]);
      local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
      h.weights_[i] = weight(keep[i]);
    }
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (int w : neighbors(keep[i]))
        if (local[static_cast<std::size_t>(w)] > static_cast<int>(i))
          h.add_edge(static_cast<int>(i), local[static_cast<std::size_t>(w)]);
    return h;
  }

  /// Subgraph after removing `removed`; also returns the surviving original ids.
  std::pair<WeightedGraph, VertexSet> without(const VertexSet& removed) const {
    VertexSet keep = set_difference(vertices(), normalized(removed));
    return {induced(keep), keep};
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_ && a.weights_ == b.weights_;
  }

 private:
  std::size_t index(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
  }
  static void check_weight(double w) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("vertex weights must be finite and nonnegative");
  }
  static void insert_sorted(VertexSet& s, Vertex v) { s.insert(std::lower_bound(s.begin(), s.end(), v), v); }

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<char> adj_;
  std::vector<VertexSet> neighbors_;
  std::vector<double> weights_;
};

inline double total_weight(const WeightedGraph& g, const VertexSet& s) {
  double w = 0.0;
  for (int v : s) w += g.weight(v);
  return w;
}

inline bool is_clique(const WeightedGraph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.adjacent(s[i], s[j])) return false;
  return true;
}

/// Maps ids of an induced subgraph back to the parent graph.
inline VertexSet lift_ids(const VertexSet& local, const VertexSet& original_ids) {
  VertexSet out;
  out.reserve(local.size());
  for (int v : local) out.push_back(original_ids[static_cast<std::size_t>(v)]);
  normalize(out);
  return out;
}

}  // namespace ptolemaic
