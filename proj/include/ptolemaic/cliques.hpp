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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptolemaic/graph.hpp"

namespace ptolemaic {

/// True twin classes: u and v share a class iff N[u] = N[v]. Classes are
/// sorted internally and ordered by their smallest member.
using TwinPartition = std::vector<VertexSet>;

inline TwinPartition twin_classes(const WeightedGraph& g) {
  std::map<VertexSet, VertexSet> by_closed_nbhd;
  for (int v = 0; v < g.size(); ++v) by_closed_nbhd[g.closed_neighborhood(v)].push_back(v);
  TwinPartition out;
  out.reserve(by_closed_nbhd.size());
  for (auto& [_, cls] : by_closed_nbhd) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end());
  return out;
}

struct CliqueOptions {
  /// Fail once more than this many maximal cliques are found.
  std::optional<std::size_t> max_count;

  /// Guard for graphs declared C4-free, which have at most n^2 maximal cliques.
  static CliqueOptions c4_free(int n) {
    return {static_cast<std::size_t>(n) * static_cast<std::size_t>(n)};
  }
};

namespace detail {

class BronKerbosch {
 public:
  BronKerbosch(const WeightedGraph& g, const CliqueOptions& opts) : g_(g), opts_(opts) {}

  std::vector<VertexSet> run() {
    VertexSet r, x;
    VertexSet p = g_.vertices();
    expand(r, p, x);
    for (auto& c : out_) normalize(c);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  // Tomita pivoting: choose u in P ∪ X maximizing |P ∩ N(u)|.
  void expand(VertexSet& r, VertexSet p, VertexSet x) {
    if (p.empty()) {
      if (x.empty()) {
        out_.push_back(r);
        if (opts_.max_count && out_.size() > *opts_.max_count)
          throw StructureError("maximal clique count exceeds guard of " + std::to_string(*opts_.max_count));
      }
      return;
    }
    Vertex pivot = -1;
    std::size_t best = 0;
    for (const VertexSet* side : {&p, &x}) {
      for (Vertex u : *side) {
        const std::size_t k = set_intersection(p, g_.neighbors(u)).size();
        if (pivot < 0 || k > best) {
          pivot = u;
          best = k;
        }
      }
    }
    const VertexSet candidates = set_difference(p, g_.neighbors(pivot));
    for (Vertex v : candidates) {
      r.push_back(v);
      expand(r, set_intersection(p, g_.neighbors(v)), set_intersection(x, g_.neighbors(v)));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const WeightedGraph& g_;
  const CliqueOptions& opts_;
  std::vector<VertexSet> out_;
};

}  // namespace detail

/// All inclusion-maximal cliques, each sorted, in lexicographic order.
/// The empty graph has no maximal cliques.
inline std::vector<VertexSet> maximal_cliques(const WeightedGraph& g, const CliqueOptions& opts = {}) {
  if (g.size() == 0) return {};
  return detail::BronKerbosch(g, opts).run();
}

}  // namespace ptolemaic
