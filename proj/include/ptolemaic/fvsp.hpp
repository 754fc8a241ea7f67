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

// Feedback vertex set with precedence constraints.
//
// Input: an acyclic digraph whose every node v has anc(v) ∪ {v} inducing an
// in-tree rooted at v, with nonnegative node weights. Output: a minimum-weight
// node set S that is downward-closed (v ∈ S implies des(v) ⊆ S) and whose
// removal leaves an undirected forest.
//
// The solver rounds an LP relaxation with variables z_v (node deleted) and
// x_{ue}, x_{ve} for each arc e = (u, v) (e is the edge from that endpoint to
// its parent in the remaining forest):
//
//   minimize   Σ ω_v z_v
//   subject to z_v + x_{ue} + x_{ve} = 1       for every arc e = (u, v)
//              z_v + Σ_{e ∋ v} x_{ve} ≤ 1      for every node v
//              z_u ≤ z_v                       for every arc e = (u, v)
//              0 ≤ x, z ≤ 1
//
// Rounding with parameters (ε, α, β) and a threshold θ ∈ [α, β], writing
// x̄ = 1 − x and y_e = z_v − z_u:
//   (i)   delete every v with z_v ≥ ε;
//   (iii) for each arc e = (u, v): if θ ∈ [x̄_{ve} − y_e, x̄_{ve}] delete v and
//         des(v) ("v is directly deleted by e"); otherwise v points to e when
//         θ > x̄_{ve} and u points to e when θ > x̄_{ue}.
// Afterwards every component has at most one cycle, which a cleanup pass
// breaks optimally. θ is chosen deterministically by trying every breakpoint
// of the behavior and one point inside every open interval between them.
//
// With 2α ≥ 1 + ε and 3(1 − β) ≥ 1 + 8ε the result costs at most
// (1/ε + 2/(β − α) + 1) times the optimum, under 63 for the defaults.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptolemaic/digraph.hpp"
#include "ptolemaic/lp.hpp"

namespace ptolemaic {

struct FvspInstance {
  Digraph graph;
  std::vector<double> weight;

  FvspInstance() = default;
  explicit FvspInstance(int n, double w = 1.0) : graph(n), weight(n, w) {}
  FvspInstance(Digraph d, std::vector<double> w) : graph(std::move(d)), weight(std::move(w)) {
    if (static_cast<int>(weight.size()) != graph.size())
      throw std::invalid_argument("weight vector length differs from node count");
    for (double x : weight)
      if (!std::isfinite(x) || x < 0) throw std::invalid_argument("node weights must be finite and nonnegative");
  }

  int size() const { return graph.size(); }
  std::size_t arc_count() const { return graph.arc_count(); }
  std::size_t add_arc(NodeId u, NodeId v) { return graph.add_arc(u, v); }

  double weight_of(const NodeSet& s) const {
    double w = 0.0;
    for (NodeId v : s) w += weight[v];
    return w;
  }
};

struct InstanceCheck {
  bool ok = true;
  std::optional<NodeId> witness;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

/// Acyclicity and the per-node ancestor in-tree property; never throws.
inline InstanceCheck validate_instance(const FvspInstance& inst) {
  if (static_cast<int>(inst.weight.size()) != inst.size()) return {false, std::nullopt, "weight vector length differs from node count"};
  for (NodeId v = 0; v < inst.size(); ++v)
    if (!std::isfinite(inst.weight[v]) || inst.weight[v] < 0) return {false, v, "negative or non-finite weight"};
  if (!inst.graph.is_acyclic()) {
    // Report some node on a directed cycle: one that is its own descendant.
    for (NodeId v = 0; v < inst.size(); ++v)
      if (inst.graph.descendants_mask(v)[v]) return {false, v, "digraph has a directed cycle"};
  }
  if (auto v = find_ancestor_in_tree_violation(inst.graph))
    return {false, *v, "ancestors of node " + std::to_string(*v) + " do not induce an in-tree rooted at it"};
  return {};
}

/// Admission slack for the parameter constraints. The published defaults are
/// rounded to six or seven digits and miss 3(1 - β) ≥ 1 + 8ε by 1.4e-6.
inline constexpr double kParamSlack = 1e-5;

struct RoundingParams {
  double epsilon = 0.0293258;
  double alpha = 0.514663;
  double beta = 0.588465;

  /// The violated constraint in words, or nothing when the triple is usable.
  std::optional<std::string> violation() const {
    auto in_unit = [](double t) { return t > 0.0 && t < 1.0; };
    if (!in_unit(epsilon) || !in_unit(alpha) || !in_unit(beta)) return "epsilon, alpha and beta must lie in (0, 1)";
    if (!(alpha < beta)) return "alpha < beta";
    if (2 * alpha < 1 + epsilon - kParamSlack) return "2*alpha >= 1 + epsilon";
    if (3 * (1 - beta) < 1 + 8 * epsilon - kParamSlack) return "3*(1 - beta) >= 1 + 8*epsilon";
    return std::nullopt;
  }

  /// Approximation factor 1/ε + 2/(β − α) + 1.
  double ratio_bound() const { return 1.0 / epsilon + 2.0 / (beta - alpha) + 1.0; }
};

/// LP relaxation with the variable layout z_v = v, x_{tail,e} = n + 2e,
/// x_{head,e} = n + 2e + 1.
struct FvspLpModel {
  lp::LinearProgram program;
  int node_count = 0;
  std::size_t arc_count = 0;

  int z(NodeId v) const { return v; }
  int x_tail(std::size_t e) const { return node_count + 2 * static_cast<int>(e); }
  int x_head(std::size_t e) const { return node_count + 2 * static_cast<int>(e) + 1; }
};

inline FvspLpModel build_lp(const FvspInstance& inst) {
  FvspLpModel model;
  model.node_count = inst.size();
  model.arc_count = inst.arc_count();
  lp::LinearProgram& p = model.program;
  for (NodeId v = 0; v < inst.size(); ++v) p.add_variable(inst.weight[v], 1.0);
  for (std::size_t e = 0; e < inst.arc_count(); ++e) {
    p.add_variable(0.0, 1.0);
    p.add_variable(0.0, 1.0);
  }
  for (std::size_t e = 0; e < inst.arc_count(); ++e) {
    const NodeId v = inst.graph.arc(e).head;
    p.add_constraint({{model.z(v), 1.0}, {model.x_tail(e), 1.0}, {model.x_head(e), 1.0}}, lp::Sense::kEqual, 1.0);
  }
  for (NodeId v = 0; v < inst.size(); ++v) {
    std::vector<lp::Term> terms{{model.z(v), 1.0}};
    for (std::size_t e : inst.graph.out_arcs(v)) terms.push_back({model.x_tail(e), 1.0});
    for (std::size_t e : inst.graph.in_arcs(v)) terms.push_back({model.x_head(e), 1.0});
    p.add_constraint(std::move(terms), lp::Sense::kLessEqual, 1.0);
  }
  for (std::size_t e = 0; e < inst.arc_count(); ++e) {
    const Arc a = inst.graph.arc(e);
    p.add_constraint({{model.z(a.tail), 1.0}, {model.z(a.head), -1.0}}, lp::Sense::kLessEqual, 0.0);
  }
  return model;
}

struct FvspLpSolution {
  std::vector<double> z;
  std::vector<std::array<double, 2>> x;  // per arc: {x_tail, x_head}
  double objective = 0.0;
  double residual = 0.0;  // largest constraint violation

  double x_tail(std::size_t e) const { return x[e][0]; }
  double x_head(std::size_t e) const { return x[e][1]; }
};

inline FvspLpSolution unpack_lp_solution(const FvspLpModel& model, const std::vector<double>& values) {
  FvspLpSolution sol;
  sol.z.assign(values.begin(), values.begin() + model.node_count);
  sol.x.resize(model.arc_count);
  for (std::size_t e = 0; e < model.arc_count; ++e) sol.x[e] = {values[model.x_tail(e)], values[model.x_head(e)]};
  sol.objective = lp::objective_value(model.program, values);
  sol.residual = lp::max_violation(model.program, values);
  return sol;
}

/// Optimal LP solution. Throws lp::LpError if the solver fails; the program
/// itself is always feasible (all z = 1).
inline FvspLpSolution solve_lp(const FvspLpModel& model) {
  return unpack_lp_solution(model, lp::solve(model.program).x);
}

inline FvspLpSolution solve_lp(const FvspInstance& inst) { return solve_lp(build_lp(inst)); }

/// Comparison slack so LP round-off cannot flip rounding decisions.
inline constexpr double kStepOneSlack = 1e-9;
inline constexpr double kIntervalSlack = 1e-12;

struct RoundingOutcome {
  double theta = 0.0;
  NodeMask step1;                                // z_v ≥ ε, closed downward
  NodeMask step3;                                // removed by direct deletion, not in step1
  std::vector<std::size_t> direct_arcs;          // arcs e whose head was directly deleted by e
  std::vector<std::vector<std::size_t>> points;  // L_v; cleared for deleted nodes

  NodeMask deleted() const {
    NodeMask d(step1.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = step1[i] || step3[i];
    return d;
  }
};

namespace detail {

// des(v) ∪ {v} for every node.
inline std::vector<NodeMask> closed_descendants(const Digraph& d) {
  std::vector<NodeMask> out(d.size());
  for (NodeId v = 0; v < d.size(); ++v) {
    out[v] = d.descendants_mask(v);
    out[v][v] = 1;
  }
  return out;
}

inline RoundingOutcome round_with(const FvspInstance& inst, const std::vector<NodeMask>& des, const FvspLpSolution& lp,
                                  const RoundingParams& params, double theta) {
  const int n = inst.size();
  RoundingOutcome out;
  out.theta = theta;
  out.step1.assign(n, 0);
  out.step3.assign(n, 0);
  out.points.assign(n, {});
  for (NodeId v = 0; v < n; ++v)
    if (lp.z[v] >= params.epsilon - kStepOneSlack) out.step1[v] = 1;
  out.step1 = downward_closure(inst.graph, std::move(out.step1));

  for (std::size_t e = 0; e < inst.arc_count(); ++e) {
    const auto [u, v] = inst.graph.arc(e);
    if (out.step1[v]) continue;  // step1 is downward-closed, so the arc is gone
    const double xbar_v = 1.0 - lp.x_head(e);
    const double xbar_u = 1.0 - lp.x_tail(e);
    const double y = lp.z[v] - lp.z[u];
    if (theta >= xbar_v - y - kIntervalSlack && theta <= xbar_v + kIntervalSlack) {
      out.direct_arcs.push_back(e);
      for (NodeId w = 0; w < n; ++w)
        if (des[v][w] && !out.step1[w]) out.step3[w] = 1;
      continue;
    }
    if (theta > xbar_v + kIntervalSlack) out.points[v].push_back(e);
    if (theta > xbar_u + kIntervalSlack) out.points[u].push_back(e);
  }
  for (NodeId v = 0; v < n; ++v)
    if (out.step1[v] || out.step3[v]) out.points[v].clear();
  return out;
}

}  // namespace detail

/// Steps (i) and (iii) at a fixed threshold θ ∈ [α, β].
inline RoundingOutcome round_at(const FvspInstance& inst, const FvspLpSolution& lp, const RoundingParams& params,
                                double theta) {
  if (theta < params.alpha - kIntervalSlack || theta > params.beta + kIntervalSlack)
    throw std::invalid_argument("theta outside [alpha, beta]");
  return detail::round_with(inst, detail::closed_descendants(inst.graph), lp, params, theta);
}

/// Thresholds covering every distinct rounding behavior: α, β, each
/// breakpoint x̄_{ve}, x̄_{ve} − y_e, x̄_{ue} inside [α, β], and the midpoint
/// of each gap between consecutive ones. At most 6m + 3 values, ascending.
inline std::vector<double> theta_candidates(const FvspInstance& inst, const FvspLpSolution& lp,
                                            const RoundingParams& params) {
  std::vector<double> points{params.alpha, params.beta};
  for (std::size_t e = 0; e < inst.arc_count(); ++e) {
    const auto [u, v] = inst.graph.arc(e);
    const double xbar_v = 1.0 - lp.x_head(e);
    const double xbar_u = 1.0 - lp.x_tail(e);
    for (double t : {xbar_v, xbar_v - (lp.z[v] - lp.z[u]), xbar_u})
      if (t > params.alpha && t < params.beta) points.push_back(t);
  }
  std::sort(points.begin(), points.end());
  std::vector<double> merged;
  for (double t : points)
    if (merged.empty() || t - merged.back() > kIntervalSlack) merged.push_back(t);
  std::vector<double> out;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (i > 0) out.push_back(0.5 * (merged[i - 1] + merged[i]));
    out.push_back(merged[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Breaks the single cycle of each unicyclic component of the remainder by
/// deleting the cheapest des(v) ∪ {v} (restricted to the remainder) over
/// cycle nodes v; ties go to the smallest id. Throws StructureError if some
/// component has two or more independent cycles.
inline NodeSet cleanup_unicyclic(const FvspInstance& inst, const NodeMask& remaining) {
  const int n = inst.size();
  const ComponentCycles cc = component_cycles(inst.graph, remaining);
  NodeSet removed;
  NodeMask on_cycle(n, 0);
  std::vector<int> degree(n, 0);
  for (const Arc& a : inst.graph.arcs())
    if (remaining[a.tail] && remaining[a.head]) {
      ++degree[a.tail];
      ++degree[a.head];
    }
  // Peel degree-1 nodes; what survives in a unicyclic component is its cycle.
  NodeMask peeled(n, 0);
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v)
    if (remaining[v] && degree[v] <= 1) stack.push_back(v);
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (peeled[v]) continue;
    peeled[v] = 1;
    auto visit = [&](NodeId w) {
      if (remaining[w] && !peeled[w] && --degree[w] <= 1) stack.push_back(w);
    };
    for (std::size_t e : inst.graph.out_arcs(v)) visit(inst.graph.arc(e).head);
    for (std::size_t e : inst.graph.in_arcs(v)) visit(inst.graph.arc(e).tail);
  }
  const std::vector<NodeMask> des = detail::closed_descendants(inst.graph);
  for (NodeId rep = 0; rep < n; ++rep) {
    if (!remaining[rep] || cc.component[rep] != rep) continue;
    const int cycles = cc.cycles[rep];
    if (cycles == 0) continue;
    if (cycles > 1)
      throw StructureError("component of node " + std::to_string(rep) + " has " + std::to_string(cycles) +
                           " independent cycles after rounding");
    NodeId best = -1;
    double best_weight = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (!remaining[v] || peeled[v] || cc.component[v] != rep) continue;
      double w = 0.0;
      for (NodeId t = 0; t < n; ++t)
        if (des[v][t] && remaining[t]) w += inst.weight[t];
      if (best < 0 || w < best_weight) {
        best = v;
        best_weight = w;
      }
    }
    for (NodeId t = 0; t < n; ++t)
      if (des[best][t] && remaining[t]) removed.push_back(t);
  }
  normalize(removed);
  return removed;
}

struct FvspSolution {
  NodeSet deleted;
  double weight = 0.0;
  double step1_weight = 0.0;
  double step3_weight = 0.0;
  double cleanup_weight = 0.0;
  double theta = 0.0;
  double lp_objective = 0.0;
  std::size_t candidates = 0;  // thresholds evaluated
};

/// Rounds at every candidate threshold, cleans up, and keeps the cheapest
/// result (ties: lexicographically smallest deleted set).
inline FvspSolution derandomize(const FvspInstance& inst, const FvspLpSolution& lp, const RoundingParams& params) {
  const std::vector<NodeMask> des = detail::closed_descendants(inst.graph);
  const std::vector<double> thetas = theta_candidates(inst, lp, params);
  std::optional<FvspSolution> best;
  for (double theta : thetas) {
    const RoundingOutcome r = detail::round_with(inst, des, lp, params, theta);
    NodeMask remaining = r.deleted();
    for (char& c : remaining) c = !c;
    const NodeSet extra = cleanup_unicyclic(inst, remaining);

    FvspSolution cand;
    cand.theta = theta;
    cand.lp_objective = lp.objective;
    cand.candidates = thetas.size();
    cand.step1_weight = inst.weight_of(Digraph::to_set(r.step1));
    cand.step3_weight = inst.weight_of(Digraph::to_set(r.step3));
    cand.cleanup_weight = inst.weight_of(extra);
    cand.deleted = set_union(Digraph::to_set(r.deleted()), extra);
    cand.weight = inst.weight_of(cand.deleted);
    const bool better = !best || cand.weight < best->weight - 1e-12 ||
                        (cand.weight <= best->weight + 1e-12 && cand.deleted < best->deleted);
    if (better) best = std::move(cand);
  }
  return *best;
}

struct FvspVerification {
  bool ok = true;
  std::string reason;
  std::vector<NodeId> witness;
  explicit operator bool() const noexcept { return ok; }
};

/// Downward closure of `deleted` and acyclicity of the undirected remainder.
inline FvspVerification verify_fvsp_solution(const FvspInstance& inst, const NodeSet& deleted) {
  for (NodeId v : deleted)
    if (v < 0 || v >= inst.size()) return {false, "node id out of range", {v}};
  const NodeMask in_s = inst.graph.to_mask(deleted);
  if (auto arc = find_downward_closure_violation(inst.graph, in_s))
    return {false, "not downward-closed: node " + std::to_string(arc->head) + " is a descendant of deleted node " +
                       std::to_string(arc->tail),
            {arc->tail, arc->head}};
  NodeMask alive(inst.size());
  for (NodeId v = 0; v < inst.size(); ++v) alive[v] = !in_s[v];
  const ComponentCycles cc = component_cycles(inst.graph, alive);
  for (NodeId v = 0; v < inst.size(); ++v)
    if (alive[v] && cc.component[v] == v && cc.cycles[v] > 0)
      return {false, "remainder has a cycle in the component of node " + std::to_string(v), {v}};
  return {};
}

/// LP, derandomized rounding, cleanup and verification. Throws
/// std::invalid_argument for invalid instances or parameters, lp::LpError and
/// StructureError for internal failures.
inline FvspSolution solve_fvsp(const FvspInstance& inst, const RoundingParams& params = {}) {
  if (auto bad = params.violation()) throw std::invalid_argument("rounding parameters violate " + *bad);
  if (InstanceCheck check = validate_instance(inst); !check) throw std::invalid_argument(check.reason);
  const FvspLpSolution lp = solve_lp(inst);
  FvspSolution sol = derandomize(inst, lp, params);
  if (FvspVerification ver = verify_fvsp_solution(inst, sol.deleted); !ver)
    throw StructureError("rounded solution failed verification: " + ver.reason);
  return sol;
}

}  // namespace ptolemaic
