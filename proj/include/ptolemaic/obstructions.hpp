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

// Forbidden induced subgraphs of ptolemaic graphs: holes (induced cycles of
// length at least four) and gems. A graph is ptolemaic iff it has neither.

#pragma once

#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "ptolemaic/graph.hpp"

namespace ptolemaic {

namespace detail {

// Calls visit(set) for each induced C4 until visit returns true.
// Each C4 a-b-c-d is reported once: a < c are one non-adjacent pair,
// b < d the other, and a < b.
template <typename Visit>
bool for_each_induced_c4(const WeightedGraph& g, Visit&& visit) {
  const int n = g.size();
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) {
      if (g.adjacent(a, c)) continue;
      VertexSet common = set_intersection(g.neighbors(a), g.neighbors(c));
      for (std::size_t i = 0; i < common.size(); ++i) {
        const int b = common[i];
        if (b < a) continue;
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          const int d = common[j];
          if (g.adjacent(b, d)) continue;
          if (visit(normalized({a, b, c, d}))) return true;
        }
      }
    }
  }
  return false;
}

// Calls visit(set) for each induced gem until visit returns true. The gem's
// dominating vertex is unique (the only one of degree 4), and the induced P4
// in its neighborhood is reported with endpoints p1 < p4.
template <typename Visit>
bool for_each_induced_gem(const WeightedGraph& g, Visit&& visit) {
  const int n = g.size();
  for (int c = 0; c < n; ++c) {
    const VertexSet& nc = g.neighbors(c);
    for (int p2 : nc) {
      for (int p3 : nc) {
        if (p2 == p3 || !g.adjacent(p2, p3)) continue;
        for (int p1 : nc) {
          if (p1 == p2 || p1 == p3 || !g.adjacent(p1, p2) || g.adjacent(p1, p3)) continue;
          for (int p4 : nc) {
            if (p4 <= p1 || p4 == p2 || p4 == p3) continue;
            if (!g.adjacent(p4, p3) || g.adjacent(p4, p2) || g.adjacent(p4, p1)) continue;
            if (visit(normalized({c, p1, p2, p3, p4}))) return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace detail

inline std::optional<VertexSet> find_induced_c4(const WeightedGraph& g) {
  std::optional<VertexSet> found;
  detail::for_each_induced_c4(g, [&](VertexSet s) {
    found = std::move(s);
    return true;
  });
  return found;
}

/// Every induced C4, each once, in lexicographic order.
inline std::vector<VertexSet> enumerate_induced_c4(const WeightedGraph& g) {
  std::vector<VertexSet> out;
  detail::for_each_induced_c4(g, [&](VertexSet s) {
    out.push_back(std::move(s));
    return false;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<VertexSet> find_induced_gem(const WeightedGraph& g) {
  std::optional<VertexSet> found;
  detail::for_each_induced_gem(g, [&](VertexSet s) {
    found = std::move(s);
    return true;
  });
  return found;
}

inline std::vector<VertexSet> enumerate_induced_gems(const WeightedGraph& g) {
  std::vector<VertexSet> out;
  detail::for_each_induced_gem(g, [&](VertexSet s) {
    out.push_back(std::move(s));
    return false;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_c4_gem_free(const WeightedGraph& g) { return !find_induced_c4(g) && !find_induced_gem(g); }

/// Lexicographic breadth-first search (partition refinement). The reverse of
/// the returned order is a perfect elimination ordering iff g is chordal.
inline std::vector<Vertex> lex_bfs(const WeightedGraph& g) {
  const int n = g.size();
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  // Ordered partition of unvisited vertices; the front cell is picked next.
  std::deque<std::vector<Vertex>> cells;
  if (n > 0) cells.emplace_back(g.vertices());
  while (!cells.empty()) {
    std::vector<Vertex>& front = cells.front();
    const Vertex v = front.front();
    front.erase(front.begin());
    if (front.empty()) cells.pop_front();
    order.push_back(v);
    std::deque<std::vector<Vertex>> refined;
    for (auto& cell : cells) {
      std::vector<Vertex> in, out;
      for (Vertex w : cell) (g.adjacent(v, w) ? in : out).push_back(w);
      if (!in.empty()) refined.push_back(std::move(in));
      if (!out.empty()) refined.push_back(std::move(out));
    }
    cells = std::move(refined);
  }
  return order;
}

/// `order` lists vertices in elimination order: each vertex's later neighbors
/// must form a clique.
inline bool is_perfect_elimination_ordering(const WeightedGraph& g, const std::vector<Vertex>& order) {
  const int n = g.size();
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  for (Vertex v : order) {
    // Checking the earliest later neighbor against the rest suffices.
    Vertex parent = -1;
    for (Vertex w : g.neighbors(v))
      if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] &&
          (parent < 0 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(parent)]))
        parent = w;
    if (parent < 0) continue;
    for (Vertex w : g.neighbors(v))
      if (w != parent && pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] && !g.adjacent(parent, w))
        return false;
  }
  return true;
}

inline bool is_chordal(const WeightedGraph& g) {
  std::vector<Vertex> order = lex_bfs(g);
  std::reverse(order.begin(), order.end());
  return is_perfect_elimination_ordering(g, order);
}

/// A shortest hole, as a cyclic vertex sequence.
///
/// For every induced path a-b-c, a shortest a-c path avoiding N[b] (except a
/// and c) closes a hole through b; the minimum over all such paths is a
/// shortest hole.
inline std::optional<std::vector<Vertex>> shortest_hole(const WeightedGraph& g) {
  const int n = g.size();
  std::optional<std::vector<Vertex>> best;
  std::vector<int> prev(static_cast<std::size_t>(n));
  std::vector<char> blocked(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    const VertexSet& nb = g.neighbors(b);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const int a = nb[i], c = nb[j];
        if (g.adjacent(a, c)) continue;
        std::fill(blocked.begin(), blocked.end(), 0);
        blocked[static_cast<std::size_t>(b)] = 1;
        for (int w : nb)
          if (w != a && w != c) blocked[static_cast<std::size_t>(w)] = 1;
        std::fill(prev.begin(), prev.end(), -1);
        std::deque<int> queue{a};
        prev[static_cast<std::size_t>(a)] = a;
        while (!queue.empty() && prev[static_cast<std::size_t>(c)] < 0) {
          const int u = queue.front();
          queue.pop_front();
          for (int w : g.neighbors(u)) {
            if (blocked[static_cast<std::size_t>(w)] || prev[static_cast<std::size_t>(w)] >= 0) continue;
            prev[static_cast<std::size_t>(w)] = u;
            queue.push_back(w);
          }
        }
        if (prev[static_cast<std::size_t>(c)] < 0) continue;
        std::vector<Vertex> cycle{b};
        for (int u = c; u != a; u = prev[static_cast<std::size_t>(u)]) cycle.push_back(u);
        cycle.push_back(a);
        if (!best || cycle.size() < best->size()) best = std::move(cycle);
        if (best->size() == 4) return best;
      }
    }
  }
  return best;
}

/// Some hole of g (a shortest one), or nothing iff g is chordal.
inline std::optional<std::vector<Vertex>> find_hole(const WeightedGraph& g) {
  if (is_chordal(g)) return std::nullopt;
  auto hole = shortest_hole(g);
  if (!hole) throw StructureError("LexBFS rejected the graph but no hole was found");
  return hole;
}

enum class ObstructionKind { kHole, kGem };

inline std::string_view to_string(ObstructionKind k) { return k == ObstructionKind::kHole ? "hole" : "gem"; }

struct Obstruction {
  ObstructionKind kind;
  /// Hole: cyclic order. Gem: sorted.
  std::vector<Vertex> vertices;
};

struct PtolemaicCheck {
  bool ptolemaic = true;
  std::optional<Obstruction> obstruction;
  explicit operator bool() const noexcept { return ptolemaic; }
};

/// Ptolemaic iff chordal and gem-free.
inline PtolemaicCheck is_ptolemaic(const WeightedGraph& g) {
  if (auto hole = find_hole(g)) return {false, Obstruction{ObstructionKind::kHole, std::move(*hole)}};
  if (auto gem = find_induced_gem(g)) return {false, Obstruction{ObstructionKind::kGem, std::move(*gem)}};
  return {};
}

}  // namespace ptolemaic
