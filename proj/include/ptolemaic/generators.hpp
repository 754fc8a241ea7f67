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

// Named small graphs and seeded random instances.

#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptolemaic/fvsp.hpp"
#include "ptolemaic/graph.hpp"
#include "ptolemaic/obstructions.hpp"

namespace ptolemaic {

inline WeightedGraph cycle_graph(int n) {
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline WeightedGraph path_graph(int n) {
  WeightedGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline WeightedGraph complete_graph(int n) {
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline const std::vector<std::string_view>& fixture_names() {
  static const std::vector<std::string_view> names{"diamond", "gem", "house", "domino", "bull", "dart",
                                                   "c4",      "c5",  "c6",    "p3",     "p4",   "k3", "k4"};
  return names;
}

/// Unit-weight fixture graphs.
///   diamond: K4 minus the edge {2,3}; 0 and 1 have degree 3.
///   gem:     path 0-1-2-3 plus 4 adjacent to all of it.
///   house:   square 0-1-2-3 with roof 4 on edge {0,1}.
///   domino:  two squares 0-1-4-3 and 1-2-5-4 sharing edge {1,4}.
///   bull:    triangle 0,1,2 with horns 3 (at 0) and 4 (at 1).
///   dart:    diamond plus a pendant 4 at degree-3 vertex 0.
inline std::optional<WeightedGraph> fixture(std::string_view name) {
  using E = std::pair<int, int>;
  auto make = [](int n, std::initializer_list<E> edges) { return WeightedGraph::from_edges(n, edges); };
  if (name == "diamond") return make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  if (name == "gem") return make(5, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
  if (name == "house") return make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}});
  if (name == "domino") return make(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
  if (name == "bull") return make(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}});
  if (name == "dart") return make(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}});
  if (name == "c4") return cycle_graph(4);
  if (name == "c5") return cycle_graph(5);
  if (name == "c6") return cycle_graph(6);
  if (name == "p3") return path_graph(3);
  if (name == "p4") return path_graph(4);
  if (name == "k3") return complete_graph(3);
  if (name == "k4") return complete_graph(4);
  return std::nullopt;
}

/// The four-node instance s1→t1, s2→t1, s2→t2, s1→t2 (ids s1=0, s2=1,
/// t1=2, t2=3): acyclic, valid, and its underlying graph is a 4-cycle.
inline FvspInstance st_instance(double w = 1.0) {
  FvspInstance inst(4, w);
  inst.add_arc(0, 2);
  inst.add_arc(1, 2);
  inst.add_arc(1, 3);
  inst.add_arc(0, 3);
  return inst;
}

/// G(n, p) with weights uniform in [lo, hi].
template <typename Rng>
WeightedGraph erdos_renyi(int n, double p, Rng& rng, double lo = 1.0, double hi = 1.0) {
  WeightedGraph g(n);
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> weight(lo, hi);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  for (int v = 0; v < n; ++v) g.set_weight(v, lo == hi ? lo : weight(rng));
  return g;
}

/// A (C4, gem)-free graph: edges are offered in random order, each kept with
/// probability p unless it would create an induced C4 or gem.
template <typename Rng>
WeightedGraph random_c4_gem_free(int n, double p, Rng& rng, double lo = 1.0, double hi = 1.0) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::bernoulli_distribution coin(p);
  WeightedGraph g(n);
  for (auto [u, v] : pairs) {
    if (!coin(rng)) continue;
    WeightedGraph trial = g;
    trial.add_edge(u, v);
    if (is_c4_gem_free(trial)) g = std::move(trial);
  }
  std::uniform_real_distribution<double> weight(lo, hi);
  for (int v = 0; v < n; ++v) g.set_weight(v, lo == hi ? lo : weight(rng));
  return g;
}

/// A valid FVSP instance: arcs u→v with u < v are offered in random order
/// and kept with probability p when the ancestor in-tree property survives.
/// Weights are uniform in [lo, hi]; a `zero_fraction` share are set to 0.
template <typename Rng>
FvspInstance random_fvsp_instance(int n, double p, Rng& rng, double lo = 0.0, double hi = 10.0,
                                  double zero_fraction = 0.1) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::bernoulli_distribution coin(p), zero(zero_fraction);
  std::uniform_real_distribution<double> weight(lo, hi);
  Digraph d(n);
  for (auto [u, v] : pairs) {
    if (!coin(rng)) continue;
    Digraph trial = d;
    trial.add_arc(u, v);
    if (!find_ancestor_in_tree_violation(trial)) d = std::move(trial);
  }
  std::vector<double> w(n);
  for (double& x : w) x = zero(rng) ? 0.0 : weight(rng);
  return FvspInstance(std::move(d), std::move(w));
}

}  // namespace ptolemaic
