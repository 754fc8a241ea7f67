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

// Weighted ptolemaic deletion in three stages:
//
//  1. Hit every induced C4 and gem: solve the covering LP
//     min Σ ω_v x_v  s.t.  Σ_{v∈A} x_v ≥ 1 for each induced C4/gem A,
//     and delete X = {v : x_v ≥ 1/5}. Costs at most 5·OPT.
//  2. On G' = G − X, which is (C4, gem)-free, build the inter-clique digraph
//     and solve feedback vertex set with precedence constraints on it, node
//     weights being the total weight of each node's preimage under φ.
//  3. Lift the node solution R back to ⋃_{x∈R} φ⁻¹(x).
//
// Total weight is at most 5·OPT + 63·OPT = 68·OPT.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ptolemaic/fvsp.hpp"
#include "ptolemaic/icd.hpp"
#include "ptolemaic/lp.hpp"
#include "ptolemaic/obstructions.hpp"

namespace ptolemaic {

inline constexpr double kHittingThreshold = 0.2;
inline constexpr double kHittingSlack = 1e-9;

/// Covering LP over all induced C4s and gems; constraint i covers obstructions[i].
struct HittingLp {
  std::vector<VertexSet> obstructions;
  lp::LinearProgram program;
};

inline HittingLp build_hitting_lp(const WeightedGraph& g) {
  HittingLp h;
  h.obstructions = enumerate_induced_c4(g);
  for (VertexSet& gem : enumerate_induced_gems(g)) h.obstructions.push_back(std::move(gem));
  for (Vertex v = 0; v < g.size(); ++v) h.program.add_variable(g.weight(v), 1.0);
  for (const VertexSet& a : h.obstructions) {
    std::vector<lp::Term> terms;
    for (Vertex v : a) terms.push_back({v, 1.0});
    h.program.add_constraint(std::move(terms), lp::Sense::kGreaterEqual, 1.0);
  }
  return h;
}

struct HittingResult {
  VertexSet removed;
  std::vector<double> x;  // LP optimum
  double lp_value = 0.0;
  std::size_t constraint_count = 0;
  std::size_t repairs = 0;  // vertices added because round-off left an obstruction
};

/// X = {v : x*_v ≥ 0.2}; G − X is (C4, gem)-free. If round-off leaves an
/// obstruction, its vertex with the largest x* (then smallest id) is added.
inline HittingResult hit_c4_gem(const WeightedGraph& g) {
  HittingResult out;
  const HittingLp h = build_hitting_lp(g);
  out.constraint_count = h.obstructions.size();
  out.x.assign(g.size(), 0.0);
  if (!h.obstructions.empty()) {
    const lp::Solution sol = lp::solve(h.program);
    out.x = sol.x;
    out.lp_value = sol.objective;
  }
  NodeMask in_x(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v)
    if (out.x[v] >= kHittingThreshold - kHittingSlack) in_x[v] = 1;
  for (const VertexSet& a : h.obstructions) {
    bool hit = false;
    for (Vertex v : a) hit = hit || in_x[v];
    if (hit) continue;
    Vertex pick = a.front();
    for (Vertex v : a)
      if (out.x[v] > out.x[pick]) pick = v;
    in_x[pick] = 1;
    ++out.repairs;
  }
  out.removed = Digraph::to_set(in_x);
  return out;
}

struct Reduction {
  InterCliqueDigraph icd;
  FvspInstance instance;
};

/// Inter-clique digraph of a (C4, gem)-free graph as an FVSP instance.
/// Throws StructureError when construction fails or the instance violates
/// the ancestor in-tree property.
inline Reduction reduce_to_fvsp(const WeightedGraph& g) {
  Reduction r;
  r.icd = build_icd(g);
  r.instance = FvspInstance(r.icd.hasse, r.icd.weights());
  if (StructureCheck check = check_anc_in_trees(r.icd); !check)
    throw StructureError("inter-clique digraph violates the ancestor in-tree property at node " +
                         std::to_string(check.witness.front()));
  return r;
}

/// Least superset R* of R such that (a) every descendant of R* with zero
/// weight is in R*, and (b) every node with empty preimage whose immediate
/// descendants all lie in R* is in R*.
inline NodeSet closure(const InterCliqueDigraph& icd, const NodeSet& r) {
  const Digraph& d = icd.hasse;
  NodeMask in = d.to_mask(r);
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId x = 0; x < d.size(); ++x) {
      if (!in[x]) continue;
      const NodeMask below = d.descendants_mask(x);
      for (NodeId y = 0; y < d.size(); ++y)
        if (below[y] && !in[y] && icd.nodes[y].weight == 0.0) in[y] = changed = 1;
    }
    for (NodeId x = 0; x < d.size(); ++x) {
      if (in[x] || !icd.nodes[x].phi_inv.empty()) continue;
      bool all = true;
      for (std::size_t e : d.out_arcs(x)) all = all && in[d.arc(e).head];
      if (all) in[x] = changed = 1;
    }
  }
  return Digraph::to_set(in);
}

/// ⋃_{x∈R} φ⁻¹(x) for a downward-closed R; throws std::invalid_argument otherwise.
inline VertexSet lift(const InterCliqueDigraph& icd, const NodeSet& r) {
  if (auto arc = find_downward_closure_violation(icd.hasse, icd.hasse.to_mask(r)))
    throw std::invalid_argument("node set is not downward-closed: node " + std::to_string(arc->head) +
                                " is missing below node " + std::to_string(arc->tail));
  return icd.preimage(r);
}

enum class Stage { kHitting, kReduction, kFvsp, kLifting, kVerification };

inline std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kHitting: return "hitting";
    case Stage::kReduction: return "reduction";
    case Stage::kFvsp: return "fvsp";
    case Stage::kLifting: return "lifting";
    case Stage::kVerification: return "verification";
  }
  return "unknown";
}

class PipelineError : public std::runtime_error {
 public:
  PipelineError(Stage stage, const std::string& what)
      : std::runtime_error(std::string(to_string(stage)) + ": " + what), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct PipelineResult {
  VertexSet deleted;
  double weight = 0.0;

  HittingResult hitting;
  double hitting_weight = 0.0;

  VertexSet kept;  // ids of G' = G − X in G; icd vertex i is kept[i]
  InterCliqueDigraph icd;
  FvspSolution fvsp;
  VertexSet lifted;  // in ids of G
  double lifted_weight = 0.0;

  bool c4_gem_free_after_hitting = false;
  bool ptolemaic_by_forbidden_subgraphs = false;
  bool ptolemaic_by_icd = false;
};

inline PipelineResult solve_ptolemaic_deletion(const WeightedGraph& g, const RoundingParams& params = {}) {
  if (auto bad = params.violation()) throw std::invalid_argument("rounding parameters violate " + *bad);
  auto stage = [](Stage s, auto&& fn) {
    try {
      return fn();
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& ex) {
      throw PipelineError(s, ex.what());
    }
  };

  PipelineResult res;
  res.hitting = stage(Stage::kHitting, [&] { return hit_c4_gem(g); });
  res.hitting_weight = total_weight(g, res.hitting.removed);

  auto [reduced, kept] = g.without(res.hitting.removed);
  res.kept = kept;
  res.c4_gem_free_after_hitting = is_c4_gem_free(reduced);
  Reduction red = stage(Stage::kReduction, [&] { return reduce_to_fvsp(reduced); });
  res.fvsp = stage(Stage::kFvsp, [&] { return solve_fvsp(red.instance, params); });
  res.lifted = stage(Stage::kLifting, [&] { return lift_ids(lift(red.icd, res.fvsp.deleted), kept); });
  res.lifted_weight = total_weight(g, res.lifted);
  res.icd = std::move(red.icd);

  res.deleted = set_union(res.hitting.removed, res.lifted);
  res.weight = total_weight(g, res.deleted);

  stage(Stage::kVerification, [&] {
    const WeightedGraph rest = g.without(res.deleted).first;
    res.ptolemaic_by_forbidden_subgraphs = is_ptolemaic(rest).ptolemaic;
    res.ptolemaic_by_icd = is_ptolemaic_via_icd(rest);
    if (!res.ptolemaic_by_forbidden_subgraphs || !res.ptolemaic_by_icd)
      throw StructureError("remaining graph is not ptolemaic");
    return 0;
  });
  return res;
}

}  // namespace ptolemaic
