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

#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptolemaic/graph.hpp"

namespace ptolemaic {

using NodeId = int;
using NodeSet = std::vector<NodeId>;  // sorted, duplicate-free
using NodeMask = std::vector<char>;

struct Arc {
  NodeId tail;
  NodeId head;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Directed graph with dense node ids and indexed arcs.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n), out_(static_cast<std::size_t>(n)), in_(static_cast<std::size_t>(n)) {
    if (n < 0) throw std::invalid_argument("node count must be nonnegative");
  }

  int size() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const Arc& arc(std::size_t e) const { return arcs_[e]; }

  /// Returns the new arc's index. Parallel arcs and self-loops are rejected.
  std::size_t add_arc(NodeId tail, NodeId head) {
    check(tail);
    check(head);
    if (tail == head) throw std::invalid_argument("self-loop at node " + std::to_string(tail));
    for (std::size_t e : out_[static_cast<std::size_t>(tail)])
      if (arcs_[e].head == head)
        throw std::invalid_argument("duplicate arc " + std::to_string(tail) + "->" + std::to_string(head));
    arcs_.push_back({tail, head});
    const std::size_t e = arcs_.size() - 1;
    out_[static_cast<std::size_t>(tail)].push_back(e);
    in_[static_cast<std::size_t>(head)].push_back(e);
    return e;
  }

  /// Arc indices leaving / entering a node, in insertion order.
  const std::vector<std::size_t>& out_arcs(NodeId v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<std::size_t>& in_arcs(NodeId v) const { return in_[static_cast<std::size_t>(v)]; }

  NodeSet children(NodeId v) const {
    NodeSet out;
    for (std::size_t e : out_arcs(v)) out.push_back(arcs_[e].head);
    normalize(out);
    return out;
  }
  NodeSet parents(NodeId v) const {
    NodeSet out;
    for (std::size_t e : in_arcs(v)) out.push_back(arcs_[e].tail);
    normalize(out);
    return out;
  }

  /// Kahn order; nothing if the digraph has a directed cycle.
  std::optional<std::vector<NodeId>> topological_order() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_));
    for (const Arc& a : arcs_) ++indeg[static_cast<std::size_t>(a.head)];
    std::vector<NodeId> order;
    for (NodeId v = 0; v < n_; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t e : out_arcs(order[i]))
        if (--indeg[static_cast<std::size_t>(arcs_[e].head)] == 0) order.push_back(arcs_[e].head);
    if (static_cast<int>(order.size()) != n_) return std::nullopt;
    return order;
  }

  bool is_acyclic() const { return topological_order().has_value(); }

  /// Nodes reachable from v by a directed path of length ≥ 1.
  NodeMask descendants_mask(NodeId v) const { return reach(v, true); }
  NodeMask ancestors_mask(NodeId v) const { return reach(v, false); }

  NodeSet descendants(NodeId v) const { return to_set(descendants_mask(v)); }
  NodeSet ancestors(NodeId v) const { return to_set(ancestors_mask(v)); }

  static NodeSet to_set(const NodeMask& m) {
    NodeSet out;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) out.push_back(static_cast<NodeId>(i));
    return out;
  }
  NodeMask to_mask(const NodeSet& s) const {
    NodeMask m(static_cast<std::size_t>(n_), 0);
    for (NodeId v : s) {
      check(v);
      m[static_cast<std::size_t>(v)] = 1;
    }
    return m;
  }

 private:
  NodeMask reach(NodeId v, bool forward) const {
    check(v);
    NodeMask seen(static_cast<std::size_t>(n_), 0);
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (std::size_t e : forward ? out_arcs(u) : in_arcs(u)) {
        const NodeId w = forward ? arcs_[e].head : arcs_[e].tail;
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }
  void check(NodeId v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }

  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

/// First node v (by id) whose ancestors together with v do not induce an
/// in-tree rooted at v, i.e. some ancestor has out-degree other than one
/// inside anc(v) ∪ {v}. Nothing when every node passes.
inline std::optional<NodeId> find_ancestor_in_tree_violation(const Digraph& d) {
  for (NodeId v = 0; v < d.size(); ++v) {
    NodeMask inside = d.ancestors_mask(v);
    inside[static_cast<std::size_t>(v)] = 1;
    for (NodeId u = 0; u < d.size(); ++u) {
      if (u == v || !inside[static_cast<std::size_t>(u)]) continue;
      int outdeg = 0;
      for (std::size_t e : d.out_arcs(u)) outdeg += inside[static_cast<std::size_t>(d.arc(e).head)];
      if (outdeg != 1) return v;
    }
  }
  return std::nullopt;
}

/// Union-find over node ids.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

/// Cyclomatic number (edges − nodes + components) of each connected component
/// of the underlying undirected graph restricted to `alive`, keyed by the
/// component's smallest node. Dead nodes map to −1.
struct ComponentCycles {
  std::vector<int> component;  // node -> representative, −1 if dead
  std::vector<int> cycles;     // representative -> cyclomatic number
};

inline ComponentCycles component_cycles(const Digraph& d, const NodeMask& alive) {
  const int n = d.size();
  DisjointSets dsu(n);
  for (const Arc& a : d.arcs())
    if (alive[static_cast<std::size_t>(a.tail)] && alive[static_cast<std::size_t>(a.head)]) dsu.unite(a.tail, a.head);
  ComponentCycles out{std::vector<int>(static_cast<std::size_t>(n), -1), std::vector<int>(static_cast<std::size_t>(n), 0)};
  for (NodeId v = 0; v < n; ++v) {
    if (!alive[static_cast<std::size_t>(v)]) continue;
    out.component[static_cast<std::size_t>(v)] = dsu.find(v);
    --out.cycles[static_cast<std::size_t>(dsu.find(v))];
  }
  for (NodeId v = 0; v < n; ++v)
    if (alive[static_cast<std::size_t>(v)] && out.component[static_cast<std::size_t>(v)] == v) ++out.cycles[static_cast<std::size_t>(v)];
  for (const Arc& a : d.arcs())
    if (alive[static_cast<std::size_t>(a.tail)] && alive[static_cast<std::size_t>(a.head)])
      ++out.cycles[static_cast<std::size_t>(dsu.find(a.tail))];
  return out;
}

/// Whether the underlying undirected graph on `alive` nodes is a forest.
/// Antiparallel arcs count as a 2-cycle.
inline bool underlying_is_forest(const Digraph& d, const NodeMask& alive) {
  DisjointSets dsu(d.size());
  for (const Arc& a : d.arcs())
    if (alive[static_cast<std::size_t>(a.tail)] && alive[static_cast<std::size_t>(a.head)] && !dsu.unite(a.tail, a.head))
      return false;
  return true;
}

inline bool underlying_is_forest(const Digraph& d) {
  return underlying_is_forest(d, NodeMask(static_cast<std::size_t>(d.size()), 1));
}

/// An arc leaving `set` (member tail, non-member head), if any.
inline std::optional<Arc> find_downward_closure_violation(const Digraph& d, const NodeMask& set) {
  for (const Arc& a : d.arcs())
    if (set[static_cast<std::size_t>(a.tail)] && !set[static_cast<std::size_t>(a.head)]) return a;
  return std::nullopt;
}

inline bool is_downward_closed(const Digraph& d, const NodeMask& set) {
  return !find_downward_closure_violation(d, set).has_value();
}

/// Adds every descendant of every member.
inline NodeMask downward_closure(const Digraph& d, NodeMask set) {
  std::vector<NodeId> stack = Digraph::to_set(set);
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (std::size_t e : d.out_arcs(u)) {
      const NodeId w = d.arc(e).head;
      if (!set[static_cast<std::size_t>(w)]) {
        set[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return set;
}

}  // namespace ptolemaic
