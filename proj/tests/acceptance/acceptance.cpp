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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fvsp_checks.hpp"
#include "oracles.hpp"
#include "ptolemaic/ptolemaic.hpp"

namespace ptolemaic::acceptance {
namespace {

using testing::Mask;

constexpr double kArithmeticSlack = 1e-9;
constexpr double kLpSlack = 1e-7;
constexpr double kWeightSlack = 1e-9;
constexpr double kFvspRatio = 63.0;
constexpr double kPipelineRatio = 68.0;
constexpr double kHittingRatio = 5.0;
constexpr int kFvspNodeBudget = 18;

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  int failures = 0;

  // Records the first few failures; keeps counting the rest.
  void fail(const std::string& what) {
    ok = false;
    if (failures++ < 3) detail << "\n    " << what;
  }
};

// Shared between criteria 2, 4 and 5.
std::vector<FvspInstance> g_icd_instances;

Verdict parameter_arithmetic() {
  Verdict v;
  const RoundingParams p;
  const double param1 = 2 * p.alpha - (1 + p.epsilon);
  const double param2 = 3 * (1 - p.beta) - (1 + 8 * p.epsilon);
  const double ratio = p.ratio_bound();
  v.detail << "2a-1-e = " << param1 << ", 3(1-b)-1-8e = " << param2 << ", 1/e+2/(b-a)+1 = " << ratio;
  if (param1 < -kArithmeticSlack) v.fail("2*alpha >= 1 + epsilon does not hold");
  if (param2 < -kArithmeticSlack) v.fail("3*(1 - beta) >= 1 + 8*epsilon does not hold");
  if (ratio > 62.2 + kArithmeticSlack) v.fail("ratio bound exceeds 62.2");
  return v;
}

Verdict icd_oracle_equivalence() {
  Verdict v;
  std::size_t graphs = 0, max_nodes = 0;
  auto check = [&](const WeightedGraph& g) {
    ++graphs;
    const InterCliqueDigraph fast = build_icd(g);
    const InterCliqueDigraph slow = brute_force_icd(g, BruteForceOptions{64});
    if (auto diff = compare_icds(fast, slow)) v.fail(*diff + " on\n" + io::to_text(g));
    const std::size_t n = g.size();
    max_nodes = std::max<std::size_t>(max_nodes, fast.size());
    if (static_cast<std::size_t>(fast.size()) > 2 * n * n * n) v.fail("node count above 2n^3 on\n" + io::to_text(g));
    g_icd_instances.emplace_back(fast.hasse, fast.weights());
  };
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> weight(0, 3);
  for (int n = 1; n <= 6; ++n)
    testing::for_each_graph(n, [&](const WeightedGraph& g0) {
      if (!testing::is_connected(g0) || !is_c4_gem_free(g0)) return;
      WeightedGraph g = g0;
      for (Vertex x = 0; x < n; ++x) g.set_weight(x, weight(rng));
      check(g);
    });
  for (int i = 0; i < 200; ++i) check(random_c4_gem_free(3 + i % 7, 0.3 + 0.1 * (i % 6), rng, 0.0, 10.0));
  v.detail << graphs << " graphs, largest ICD " << max_nodes << " nodes";
  return v;
}

Verdict recognizer_agreement() {
  Verdict v;
  std::size_t graphs = 0, ptolemaic = 0;
  auto check = [&](const WeightedGraph& g) {
    ++graphs;
    const bool definition = testing::ptolemaic_brute(g);
    const bool chordal_gem_free = is_ptolemaic(g).ptolemaic;
    const bool forest = is_ptolemaic_via_icd(g);
    ptolemaic += definition;
    if (chordal_gem_free != definition || forest != definition) v.fail("recognizers disagree on\n" + io::to_text(g));
  };
  for (int n = 1; n <= 7; ++n) testing::for_each_graph(n, check);
  v.detail << graphs << " labeled graphs (all n <= 7), " << ptolemaic << " ptolemaic";
  return v;
}

std::vector<FvspInstance> random_instances() {
  std::vector<FvspInstance> out;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 150; ++i) out.push_back(random_fvsp_instance(2 + i % 11, 0.2 + 0.1 * (i % 6), rng));
  return out;
}

Verdict fvsp_structure() {
  Verdict v;
  std::size_t instances = 0, thetas = 0;
  auto check = [&](const FvspInstance& inst) {
    ++instances;
    if (!validate_instance(inst).ok) {
      v.fail("invalid instance\n" + io::to_text(inst));
      return;
    }
    const testing::StructureReport rep = testing::check_rounding_structure(inst, solve_lp(inst), RoundingParams{});
    thetas += rep.thetas;
    if (rep.failure) v.fail(*rep.failure + " on\n" + io::to_text(inst));
  };
  for (const FvspInstance& inst : random_instances()) check(inst);
  for (const FvspInstance& inst : g_icd_instances) check(inst);
  v.detail << instances << " instances, " << thetas << " theta candidates";
  return v;
}

Verdict fvsp_ratio() {
  Verdict v;
  std::size_t instances = 0, skipped = 0;
  double worst = 0.0;
  auto check = [&](const FvspInstance& inst) {
    if (inst.size() > kFvspNodeBudget) {
      ++skipped;
      return;
    }
    ++instances;
    const double opt = oracle::exact_fvsp(inst, oracle::OracleBudget{.max_nodes = kFvspNodeBudget}).weight;
    const FvspSolution sol = solve_fvsp(inst);
    if (!verify_fvsp_solution(inst, sol.deleted).ok) v.fail("infeasible output on\n" + io::to_text(inst));
    if (sol.weight < opt - kWeightSlack) v.fail("output below the optimum on\n" + io::to_text(inst));
    if (sol.weight > kFvspRatio * opt + kWeightSlack) v.fail("ratio above 63 on\n" + io::to_text(inst));
    if (sol.lp_objective > opt + kLpSlack) v.fail("LP value above the optimum on\n" + io::to_text(inst));
    if (opt > 0) worst = std::max(worst, sol.weight / opt);
  };
  for (const FvspInstance& inst : random_instances()) check(inst);
  for (const FvspInstance& inst : g_icd_instances) check(inst);
  v.detail << instances << " instances, " << skipped << " above the node budget, worst ratio " << worst;
  return v;
}

struct PipelineCase {
  WeightedGraph g;
  PipelineResult result;
};

std::vector<PipelineCase> g_pipeline_cases;

Verdict end_to_end_ratio() {
  Verdict v;
  std::mt19937_64 rng(6);
  const double ps[] = {0.2, 0.4, 0.6};
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const WeightedGraph g = erdos_renyi(3 + i % 8, ps[i % 3], rng, 0.0, 10.0);
    const PipelineResult r = solve_ptolemaic_deletion(g);
    const double opt = oracle::exact_ptolemaic_deletion(g).weight;
    const WeightedGraph rest = g.without(r.deleted).first;
    if (!is_ptolemaic(rest).ptolemaic || !is_ptolemaic_via_icd(rest)) v.fail("output not ptolemaic on\n" + io::to_text(g));
    if (r.weight > kPipelineRatio * opt + kWeightSlack) v.fail("ratio above 68 on\n" + io::to_text(g));
    if (opt > 0) worst = std::max(worst, r.weight / opt);
    g_pipeline_cases.push_back({g, r});
  }
  const double c5 = solve_ptolemaic_deletion(cycle_graph(5)).weight;
  if (c5 != 1.0) v.fail("C5 weight is " + io::format_number(c5));
  v.detail << "300 graphs, worst ratio " << worst << ", C5 weight " << c5;
  return v;
}

Verdict reduction_correctness() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> weight(0, 3);
  std::size_t forward = 0, backward = 0, skipped = 0;
  for (int i = 0; i < 100; ++i) {
    WeightedGraph g = random_c4_gem_free(3 + i % 6, 0.5 + 0.1 * (i % 4), rng);
    for (Vertex x = 0; x < g.size(); ++x) g.set_weight(x, weight(rng));
    const InterCliqueDigraph icd = build_icd(g);
    const FvspInstance inst(icd.hasse, icd.weights());
    auto node_weight = [&](const NodeSet& r) {
      double w = 0;
      for (NodeId x : r) w += icd.nodes[x].weight;
      return w;
    };

    // (a) forward: minimalized oracle solutions, plus every minimal optimal set.
    std::vector<Mask> solutions = testing::minimal_optimal_deletion_sets(g);
    solutions.push_back(testing::mask_of(
        oracle::minimalize_deletion_set(g, oracle::exact_ptolemaic_deletion(g).set)));
    for (Mask m : solutions) {
      ++forward;
      const VertexSet s = testing::bits(m);
      const NodeSet star = closure(icd, icd.image(s));
      if (!testing::fvsp_feasible(inst, testing::mask_of(star)))
        v.fail("closure of the image is not a feasible FVSP solution on\n" + io::to_text(g));
      if (std::abs(node_weight(star) - total_weight(g, s)) > kWeightSlack) v.fail("weights differ on\n" + io::to_text(g));
    }

    // (b) backward: every downward-closed set with forest remainder lifts.
    if (icd.size() > 16) {
      ++skipped;
      continue;
    }
    oracle::for_each_downward_closed(inst, [&](std::uint32_t mask) {
      if (!testing::fvsp_feasible(inst, mask)) return;
      ++backward;
      const NodeSet r = testing::bits(mask);
      const VertexSet s = lift(icd, r);
      if (!testing::ptolemaic_brute(g.without(s).first)) v.fail("lift is not a deletion set on\n" + io::to_text(g));
      if (std::abs(total_weight(g, s) - node_weight(r)) > kWeightSlack) v.fail("lifted weight differs on\n" + io::to_text(g));
    });
  }
  v.detail << forward << " forward checks, " << backward << " lifted sets, " << skipped
           << " graphs with more than 2^16 candidate sets";
  return v;
}

Verdict hitting_bound() {
  Verdict v;
  if (g_pipeline_cases.empty()) {
    v.fail("criterion 6 produced no inputs");
    return v;
  }
  for (const PipelineCase& c : g_pipeline_cases) {
    const HittingResult& h = c.result.hitting;
    const double w = total_weight(c.g, h.removed);
    const double opt = oracle::exact_c4gem_hitting(c.g).weight;
    if (w > kHittingRatio * h.lp_value + kLpSlack) v.fail("above 5 x LP on\n" + io::to_text(c.g));
    if (w > kHittingRatio * opt + kLpSlack) v.fail("above 5 x optimum on\n" + io::to_text(c.g));
    const WeightedGraph rest = c.g.without(h.removed).first;
    if (!testing::all_c4(rest).empty() || !testing::all_gems(rest).empty())
      v.fail("C4 or gem survives on\n" + io::to_text(c.g));
  }
  v.detail << g_pipeline_cases.size() << " graphs";
  return v;
}

int run() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {"parameter arithmetic", parameter_arithmetic},
      {"ICD oracle equivalence", icd_oracle_equivalence},
      {"ptolemaic recognizer agreement", recognizer_agreement},
      {"FVSP rounding structure", fvsp_structure},
      {"FVSP ratio", fvsp_ratio},
      {"end-to-end ratio", end_to_end_ratio},
      {"reduction correctness", reduction_correctness},
      {"hitting-stage bound", hitting_bound},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].check();
    } catch (const std::exception& ex) {
      v.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.ok;
    std::printf("%s criterion %zu: %s (%.1f s): %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ptolemaic::acceptance

int main() { return ptolemaic::acceptance::run(); }
