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

// Inter-clique digraphs: the Hasse diagram of all nonempty intersections of
// maximal cliques, ordered by inclusion, with arcs from superset to subset.
//
// Every node is identified by its clique; the src-set of a node is the set of
// maximal cliques containing it, and a node's clique is the intersection of
// its src-set. Each vertex v maps to its canonical clique, the smallest node
// containing v, whose preimage is v's true twin class.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "ptolemaic/cliques.hpp"
#include "ptolemaic/digraph.hpp"
#include "ptolemaic/graph.hpp"
#include "ptolemaic/obstructions.hpp"

namespace ptolemaic {

/// Sorted indices into the maximal clique list.
using SrcSet = std::vector<int>;

struct IcdNode {
  VertexSet clique;
  SrcSet src;
  VertexSet phi_inv;  // vertices whose canonical clique is this node
  double weight = 0.0;

  friend bool operator==(const IcdNode&, const IcdNode&) = default;
};

struct InterCliqueDigraph {
  int vertex_count = 0;
  std::vector<VertexSet> max_cliques;
  std::vector<IcdNode> nodes;
  Digraph hasse;            // arc parent -> child means child ⊊ parent
  std::vector<NodeId> phi;  // vertex -> canonical clique node

  int size() const { return static_cast<int>(nodes.size()); }

  std::optional<NodeId> find_node(const VertexSet& clique) const {
    for (NodeId x = 0; x < size(); ++x)
      if (nodes[x].clique == clique) return x;
    return std::nullopt;
  }

  std::vector<double> weights() const {
    std::vector<double> w;
    for (const IcdNode& node : nodes) w.push_back(node.weight);
    return w;
  }

  /// Union of the preimages of `nodes_in` under φ.
  VertexSet preimage(const NodeSet& nodes_in) const {
    VertexSet out;
    for (NodeId x : nodes_in) out.insert(out.end(), nodes[x].phi_inv.begin(), nodes[x].phi_inv.end());
    normalize(out);
    return out;
  }

  /// φ(S) as a sorted node set.
  NodeSet image(const VertexSet& s) const {
    NodeSet out;
    for (Vertex v : s) out.push_back(phi[v]);
    normalize(out);
    return out;
  }
};

namespace detail {

// Canonical node order: larger cliques first, then lexicographic.
inline bool clique_order(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

inline SrcSet src_of(const std::vector<VertexSet>& max_cliques, const VertexSet& s) {
  SrcSet out;
  for (int i = 0; i < static_cast<int>(max_cliques.size()); ++i)
    if (is_subset(s, max_cliques[i])) out.push_back(i);
  return out;
}

inline VertexSet intersect_all(const std::vector<VertexSet>& max_cliques, const SrcSet& src) {
  if (src.empty()) return {};
  VertexSet acc = max_cliques[src.front()];
  for (std::size_t k = 1; k < src.size() && !acc.empty(); ++k) acc = set_intersection(acc, max_cliques[src[k]]);
  return acc;
}

// Hasse arcs of a strict partial order given as a dense relation matrix:
// below[a][b] means a precedes b. Arcs are emitted a -> b in index order.
inline std::vector<Arc> cover_relation(const std::vector<std::vector<char>>& below) {
  const int n = static_cast<int>(below.size());
  std::vector<Arc> arcs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool covered = true;
      for (int c = 0; c < n && covered; ++c)
        if (below[a][c] && below[c][b]) covered = false;
      if (covered) arcs.push_back({a, b});
    }
  return arcs;
}

inline void attach_weights(const WeightedGraph& g, InterCliqueDigraph& icd) {
  for (IcdNode& node : icd.nodes) {
    node.phi_inv.clear();
    node.weight = 0.0;
  }
  for (Vertex v = 0; v < g.size(); ++v) icd.nodes[icd.phi[v]].phi_inv.push_back(v);
  for (IcdNode& node : icd.nodes)
    for (Vertex v : node.phi_inv) node.weight += g.weight(v);
}

}  // namespace detail

struct StructureCheck {
  bool ok = true;
  std::vector<NodeId> witness;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// For every maximal clique M, the nodes contained in M must form a laminar
/// family whose induced subdigraph is an out-tree rooted at M.
inline StructureCheck check_laminar_out_trees(const InterCliqueDigraph& icd) {
  for (int i = 0; i < static_cast<int>(icd.max_cliques.size()); ++i) {
    const VertexSet& m = icd.max_cliques[i];
    const std::optional<NodeId> root = icd.find_node(m);
    if (!root) return {false, {}, "maximal clique " + std::to_string(i) + " has no node"};
    NodeMask inside(icd.size(), 0);
    NodeSet members;
    for (NodeId x = 0; x < icd.size(); ++x)
      if (is_subset(icd.nodes[x].clique, m)) {
        inside[x] = 1;
        members.push_back(x);
      }
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const VertexSet& ca = icd.nodes[members[a]].clique;
        const VertexSet& cb = icd.nodes[members[b]].clique;
        if (!set_intersection(ca, cb).empty() && !is_subset(ca, cb) && !is_subset(cb, ca))
          return {false, {members[a], members[b]}, "overlapping cliques below maximal clique " + std::to_string(i)};
      }
    for (NodeId x : members) {
      int indeg = 0;
      for (std::size_t e : icd.hasse.in_arcs(x)) indeg += inside[icd.hasse.arc(e).tail];
      if (indeg != (x == *root ? 0 : 1))
        return {false, {*root, x}, "nodes below maximal clique " + std::to_string(i) + " do not form an out-tree"};
    }
  }
  return {};
}

/// For every node v, anc(v) ∪ {v} must induce an in-tree rooted at v.
inline StructureCheck check_anc_in_trees(const Digraph& d) {
  if (auto v = find_ancestor_in_tree_violation(d)) return {false, {*v}, "ancestors do not induce an in-tree"};
  return {};
}

inline StructureCheck check_anc_in_trees(const InterCliqueDigraph& icd) { return check_anc_in_trees(icd.hasse); }

/// Inter-clique digraph of a (C4, gem)-free graph, built from twin-class
/// src-sets by closing under pairwise intersection.
///
/// Throws StructureError when the result betrays a violated precondition:
/// more than n^2 maximal cliques, intersection rounds beyond the height bound
/// n, more than 2n^3 nodes, a src-set not closed under its own intersection,
/// or a non-laminar family below some maximal clique.
inline InterCliqueDigraph build_icd(const WeightedGraph& g) {
  const int n = g.size();
  InterCliqueDigraph icd;
  icd.vertex_count = n;
  icd.max_cliques = maximal_cliques(g, CliqueOptions::c4_free(n));
  const std::size_t node_cap = 2 * static_cast<std::size_t>(n) * n * n;

  std::set<SrcSet> family;
  for (const VertexSet& z : twin_classes(g)) family.insert(detail::src_of(icd.max_cliques, z));
  std::vector<SrcSet> all(family.begin(), family.end());
  std::size_t fresh_from = 0;  // members at index ≥ fresh_from were added last round
  int rounds = 0;
  while (true) {
    std::vector<SrcSet> added;
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = std::max(a + 1, fresh_from); b < all.size(); ++b) {
        SrcSet both;
        std::set_intersection(all[a].begin(), all[a].end(), all[b].begin(), all[b].end(), std::back_inserter(both));
        if (both.empty() || family.contains(both)) continue;
        family.insert(both);
        added.push_back(std::move(both));
        if (family.size() > node_cap)
          throw StructureError("inter-clique digraph exceeds 2n^3 = " + std::to_string(node_cap) + " nodes");
      }
    }
    if (added.empty()) break;
    if (++rounds > n) throw StructureError("intersection closure did not stabilize within n rounds");
    fresh_from = all.size();
    all.insert(all.end(), std::make_move_iterator(added.begin()), std::make_move_iterator(added.end()));
  }

  for (const SrcSet& src : family) {
    VertexSet clique = detail::intersect_all(icd.max_cliques, src);
    if (detail::src_of(icd.max_cliques, clique) != src)
      throw StructureError("src-set is not the full set of maximal cliques containing its intersection");
    icd.nodes.push_back({std::move(clique), src, {}, 0.0});
  }
  std::sort(icd.nodes.begin(), icd.nodes.end(),
            [](const IcdNode& a, const IcdNode& b) { return detail::clique_order(a.clique, b.clique); });

  // C ⊋ C' iff src(C) ⊊ src(C').
  const int size = icd.size();
  std::vector<std::vector<char>> below(size, std::vector<char>(size, 0));
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      below[a][b] = a != b && icd.nodes[a].src.size() < icd.nodes[b].src.size() &&
                    std::includes(icd.nodes[b].src.begin(), icd.nodes[b].src.end(), icd.nodes[a].src.begin(),
                                  icd.nodes[a].src.end());
  icd.hasse = Digraph(size);
  for (const Arc& arc : detail::cover_relation(below)) icd.hasse.add_arc(arc.tail, arc.head);

  std::map<SrcSet, NodeId> by_src;
  for (NodeId x = 0; x < size; ++x) by_src[icd.nodes[x].src] = x;
  icd.phi.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    auto it = by_src.find(detail::src_of(icd.max_cliques, {v}));
    if (it == by_src.end()) throw StructureError("no canonical clique for vertex " + std::to_string(v));
    icd.phi[v] = it->second;
  }
  detail::attach_weights(g, icd);

  if (StructureCheck lam = check_laminar_out_trees(icd); !lam) throw StructureError("not laminar: " + lam.reason);
  return icd;
}

struct BruteForceOptions {
  std::size_t max_cliques = 20;
};

/// Inter-clique digraph straight from the definition: every nonempty
/// intersection of a nonempty subfamily of maximal cliques, with arcs of the
/// inclusion order's transitive reduction. No structural assumptions.
inline InterCliqueDigraph brute_force_icd(const WeightedGraph& g, const BruteForceOptions& opts = {}) {
  const int n = g.size();
  InterCliqueDigraph icd;
  icd.vertex_count = n;
  icd.max_cliques = maximal_cliques(g);
  const std::size_t k = icd.max_cliques.size();
  if (k > opts.max_cliques)
    throw std::invalid_argument("brute-force inter-clique digraph limited to " + std::to_string(opts.max_cliques) +
                                " maximal cliques, got " + std::to_string(k));

  std::set<VertexSet> cliques;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    VertexSet acc;
    bool first = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1)) continue;
      acc = first ? icd.max_cliques[i] : set_intersection(acc, icd.max_cliques[i]);
      first = false;
      if (acc.empty()) break;
    }
    if (!acc.empty()) cliques.insert(std::move(acc));
  }
  for (const VertexSet& c : cliques) icd.nodes.push_back({c, detail::src_of(icd.max_cliques, c), {}, 0.0});
  std::sort(icd.nodes.begin(), icd.nodes.end(),
            [](const IcdNode& a, const IcdNode& b) { return detail::clique_order(a.clique, b.clique); });

  const int size = icd.size();
  std::vector<std::vector<char>> below(size, std::vector<char>(size, 0));
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      below[a][b] = a != b && is_subset(icd.nodes[b].clique, icd.nodes[a].clique);
  icd.hasse = Digraph(size);
  for (const Arc& arc : detail::cover_relation(below)) icd.hasse.add_arc(arc.tail, arc.head);

  // Canonical clique: the unique inclusion-minimal node containing v.
  icd.phi.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    for (NodeId x = 0; x < size; ++x) {
      if (!std::binary_search(icd.nodes[x].clique.begin(), icd.nodes[x].clique.end(), v)) continue;
      if (icd.phi[v] < 0 || is_subset(icd.nodes[x].clique, icd.nodes[icd.phi[v]].clique)) icd.phi[v] = x;
    }
  }
  detail::attach_weights(g, icd);
  return icd;
}

/// Equality of two inter-clique digraphs with cliques as node identities.
/// Returns an explanation of the first difference, or nothing when equal.
inline std::optional<std::string> compare_icds(const InterCliqueDigraph& a, const InterCliqueDigraph& b) {
  auto label_map = [](const InterCliqueDigraph& icd) {
    std::map<VertexSet, std::vector<VertexSet>> out;  // clique -> src as cliques
    for (const IcdNode& node : icd.nodes) {
      std::vector<VertexSet> src;
      for (int i : node.src) src.push_back(icd.max_cliques[i]);
      std::sort(src.begin(), src.end());
      out[node.clique] = std::move(src);
    }
    return out;
  };
  auto arc_set = [](const InterCliqueDigraph& icd) {
    std::set<std::pair<VertexSet, VertexSet>> out;
    for (const Arc& arc : icd.hasse.arcs()) out.emplace(icd.nodes[arc.tail].clique, icd.nodes[arc.head].clique);
    return out;
  };
  if (a.vertex_count != b.vertex_count) return "vertex counts differ";
  if (label_map(a) != label_map(b)) return "node cliques or src-sets differ";
  if (arc_set(a) != arc_set(b)) return "arcs differ";
  for (Vertex v = 0; v < a.vertex_count; ++v) {
    if (a.nodes[a.phi[v]].clique != b.nodes[b.phi[v]].clique) return "canonical clique of vertex " + std::to_string(v) + " differs";
  }
  for (NodeId x = 0; x < a.size(); ++x) {
    const NodeId y = *b.find_node(a.nodes[x].clique);
    if (a.nodes[x].phi_inv != b.nodes[y].phi_inv || a.nodes[x].weight != b.nodes[y].weight)
      return "preimage or weight differs at a node";
  }
  return std::nullopt;
}

/// Ptolemaic iff the inter-clique digraph's underlying graph is a forest.
/// Uses build_icd on (C4, gem)-free graphs and the brute-force construction
/// otherwise; the latter throws beyond its maximal-clique budget.
inline bool is_ptolemaic_via_icd(const WeightedGraph& g) {
  const InterCliqueDigraph icd = is_c4_gem_free(g) ? build_icd(g) : brute_force_icd(g);
  return underlying_is_forest(icd.hasse);
}

}  // namespace ptolemaic
