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

// Exact exponential-time solvers for ground truth at small sizes.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptolemaic/fvsp.hpp"
#include "ptolemaic/graph.hpp"
#include "ptolemaic/obstructions.hpp"

namespace ptolemaic::oracle {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  int max_vertices = 14;
  int max_nodes = 18;
  std::chrono::milliseconds time_cap{0};  // zero: unlimited
};

struct ExactResult {
  double weight = 0.0;
  std::vector<int> set;
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds cap)
      : cap_(cap), start_(std::chrono::steady_clock::now()) {}
  void check() const {
    if (cap_.count() > 0 && std::chrono::steady_clock::now() - start_ > cap_)
      throw BudgetExceeded("oracle time cap of " + std::to_string(cap_.count()) + " ms exceeded");
  }

 private:
  std::chrono::milliseconds cap_;
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<int> mask_to_set(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask >> i; ++i)
    if (mask >> i & 1) out.push_back(i);
  return out;
}

// All subsets of {0..n-1} ordered by (weight, lexicographic member list);
// returns the first accepted one.
inline ExactResult first_feasible_by_weight(int n, std::span<const double> weights,
                                            const std::function<bool(std::uint32_t)>& feasible,
                                            const Deadline& deadline) {
  struct Entry {
    double weight;
    std::uint32_t mask;
  };
  std::vector<Entry> subsets(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < subsets.size(); ++mask) {
    double w = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) w += weights[i];
    subsets[mask] = {w, mask};
  }
  std::sort(subsets.begin(), subsets.end(), [](const Entry& a, const Entry& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return mask_to_set(a.mask) < mask_to_set(b.mask);
  });
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    if ((k & 255) == 0) deadline.check();
    if (feasible(subsets[k].mask)) return {subsets[k].weight, mask_to_set(subsets[k].mask)};
  }
  throw std::logic_error("no feasible subset");  // the full set is always feasible
}

}  // namespace detail

/// Minimum-weight S with G − S ptolemaic.
inline ExactResult exact_ptolemaic_deletion(const WeightedGraph& g, const OracleBudget& budget = {}) {
  if (g.size() > budget.max_vertices || g.size() > 30)
    throw BudgetExceeded("graph has " + std::to_string(g.size()) + " vertices, oracle budget is " +
                         std::to_string(budget.max_vertices));
  const detail::Deadline deadline(budget.time_cap);
  const VertexSet all = g.vertices();
  return detail::first_feasible_by_weight(
      g.size(), g.weights(),
      [&](std::uint32_t mask) {
        VertexSet keep;
        for (Vertex v : all)
          if (!(mask >> v & 1)) keep.push_back(v);
        return is_ptolemaic(g.induced(keep)).ptolemaic;
      },
      deadline);
}

/// Minimum-weight vertex set meeting every induced C4 and gem.
inline ExactResult exact_c4gem_hitting(const WeightedGraph& g, const OracleBudget& budget = {}) {
  if (g.size() > budget.max_vertices || g.size() > 30)
    throw BudgetExceeded("graph has " + std::to_string(g.size()) + " vertices, oracle budget is " +
                         std::to_string(budget.max_vertices));
  const detail::Deadline deadline(budget.time_cap);
  std::vector<std::uint32_t> obstructions;
  auto add = [&](const VertexSet& s) {
    std::uint32_t m = 0;
    for (Vertex v : s) m |= std::uint32_t{1} << v;
    obstructions.push_back(m);
  };
  for (const VertexSet& s : enumerate_induced_c4(g)) add(s);
  for (const VertexSet& s : enumerate_induced_gems(g)) add(s);
  return detail::first_feasible_by_weight(
      g.size(), g.weights(),
      [&](std::uint32_t mask) {
        return std::all_of(obstructions.begin(), obstructions.end(), [&](std::uint32_t o) { return (o & mask) != 0; });
      },
      deadline);
}

/// Every downward-closed node set, generated by deciding nodes children
/// first: a node may join only once all its children have.
inline void for_each_downward_closed(const FvspInstance& inst, const std::function<void(std::uint32_t)>& visit) {
  const int n = inst.size();
  if (n > 30) throw BudgetExceeded("too many nodes to enumerate downward-closed sets");
  auto topo = inst.graph.topological_order();
  if (!topo) throw std::invalid_argument("instance digraph has a directed cycle");
  std::vector<NodeId> order(topo->rbegin(), topo->rend());
  std::vector<std::uint32_t> child_mask(n, 0);
  for (const Arc& a : inst.graph.arcs()) child_mask[a.tail] |= std::uint32_t{1} << a.head;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t mask) {
    if (i == order.size()) {
      visit(mask);
      return;
    }
    const NodeId v = order[i];
    rec(i + 1, mask);
    if ((child_mask[v] & mask) == child_mask[v]) rec(i + 1, mask | std::uint32_t{1} << v);
  };
  rec(0, 0);
}

/// Minimum-weight feasible FVSP solution (downward-closed, forest remainder);
/// ties go to the lexicographically smallest node list.
inline ExactResult exact_fvsp(const FvspInstance& inst, const OracleBudget& budget = {}) {
  if (inst.size() > budget.max_nodes)
    throw BudgetExceeded("instance has " + std::to_string(inst.size()) + " nodes, oracle budget is " +
                         std::to_string(budget.max_nodes));
  const detail::Deadline deadline(budget.time_cap);
  std::optional<ExactResult> best;
  std::size_t visited = 0;
  for_each_downward_closed(inst, [&](std::uint32_t mask) {
    if ((++visited & 1023) == 0) deadline.check();
    double w = 0.0;
    for (NodeId v = 0; v < inst.size(); ++v)
      if (mask >> v & 1) w += inst.weight[v];
    if (best && w > best->weight) return;
    DisjointSets dsu(inst.size());
    for (const Arc& a : inst.graph.arcs())
      if (!(mask >> a.tail & 1) && !(mask >> a.head & 1) && !dsu.unite(a.tail, a.head)) return;
    std::vector<int> set = detail::mask_to_set(mask);
    if (!best || w < best->weight || set < best->set) best = ExactResult{w, std::move(set)};
  });
  return *best;
}

/// Greedily drops vertices (ascending id) from a deletion set while the
/// remainder stays ptolemaic, yielding an inclusion-minimal deletion set.
inline VertexSet minimalize_deletion_set(const WeightedGraph& g, VertexSet s) {
  for (std::size_t i = 0; i < s.size();) {
    VertexSet trial = s;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (is_ptolemaic(g.without(trial).first).ptolemaic) s = std::move(trial);
    else ++i;
  }
  return s;
}

}  // namespace ptolemaic::oracle
