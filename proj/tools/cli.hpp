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

// Command dispatch for the `ptolemaic` tool. Kept in a header so tests can
// drive it in-process with string streams.
//
// Exit codes: 0 ok, 1 usage or rejected parameters, 2 parse error,
// 3 structural failure or rejected solution, 4 oracle budget exceeded.

#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptolemaic/ptolemaic.hpp"

namespace ptolemaic::cli {

enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kStructure = 3, kBudget = 4 };

struct RunConfig {
  std::string input;
  std::string solution;
  std::string params_text;
  RoundingParams params;
  int budget = 0;  // 0: library default
  long time_cap_ms = 0;
  std::uint64_t seed = 1;
  std::string format;
  bool oracle = false;
  bool fvsp = false;

  std::string fixture;
  int n = 8;
  double p = 0.4;
  std::string weights = "1,1";
};

namespace detail {

struct Failure {
  int code;
  std::string message;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

inline double to_double(const std::string& s, const std::string& what) {
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw Failure{kUsage, what + ": not a number: '" + s + "'"};
  return v;
}

inline RoundingParams parse_params(const std::string& text) {
  if (text.empty()) return {};
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw Failure{kUsage, "--params expects three values e,a,b"};
  RoundingParams p{to_double(parts[0], "--params"), to_double(parts[1], "--params"), to_double(parts[2], "--params")};
  if (auto bad = p.violation()) throw Failure{kUsage, "rejected parameters: constraint violated: " + *bad};
  return p;
}

template <typename Read>
auto read_input(const std::string& path, Read&& read) {
  try {
    if (path == "-") return read(std::cin);
    std::ifstream in(path);
    if (!in) throw Failure{kParse, "cannot open '" + path + "'"};
    return read(in);
  } catch (const io::ParseError& ex) {
    throw Failure{kParse, path + ": " + ex.what()};
  }
}

// Whitespace- or comma-separated ids, '#' comments; or a JSON object with a
// "deleted" array (as printed by solve/fvsp).
inline std::vector<int> read_id_list(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      const io::Json j = io::Json::parse(text);
      return j.at("deleted").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& ex) {
      throw io::ParseError(0, std::string("bad solution JSON: ") + ex.what());
    }
  }
  std::vector<int> ids;
  std::istringstream lines(text);
  int line = 0;
  for (std::string s; std::getline(lines, s);) {
    ++line;
    if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    for (char& c : s)
      if (c == ',') c = ' ';
    std::istringstream tokens(s);
    for (std::string tok; tokens >> tok;) {
      int v = 0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || end != tok.data() + tok.size()) throw io::ParseError(line, "expected an id, got '" + tok + "'");
      ids.push_back(v);
    }
  }
  return ids;
}

inline std::string witness_text(const std::vector<int>& ids) { return io::join(ids, ' '); }

inline oracle::OracleBudget budget_of(const RunConfig& cfg) {
  oracle::OracleBudget b;
  if (cfg.budget > 0) b.max_vertices = b.max_nodes = cfg.budget;
  b.time_cap = std::chrono::milliseconds(cfg.time_cap_ms);
  return b;
}

inline void print_json(std::ostream& out, const io::Json& j) { out << j.dump(2) << '\n'; }

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const RoundingParams params = parse_params(cfg.params_text);
  const WeightedGraph g = read_input(cfg.input, [](std::istream& in) { return io::read_graph(in); });
  PipelineResult res;
  try {
    res = solve_ptolemaic_deletion(g, params);
  } catch (const PipelineError& ex) {
    throw Failure{kStructure, std::string("stage ") + ex.what()};
  }
  if (cfg.format == "text") {
    out << "weight " << io::format_number(res.weight) << '\n' << "deleted " << witness_text(res.deleted) << '\n';
  } else {
    print_json(out, io::to_json(res));
  }
  return kOk;
}

inline int cmd_icd(const RunConfig& cfg, std::ostream& out) {
  const WeightedGraph g = read_input(cfg.input, [](std::istream& in) { return io::read_graph(in); });
  InterCliqueDigraph icd;
  if (cfg.oracle) {
    try {
      icd = brute_force_icd(g);
    } catch (const std::invalid_argument& ex) {
      throw Failure{kBudget, ex.what()};
    }
  } else {
    if (auto c4 = find_induced_c4(g)) throw Failure{kStructure, "graph is not C4-free: induced C4 on " + witness_text(*c4)};
    if (auto gem = find_induced_gem(g))
      throw Failure{kStructure, "graph is not gem-free: induced gem on " + witness_text(*gem)};
    try {
      icd = build_icd(g);
    } catch (const StructureError& ex) {
      throw Failure{kStructure, ex.what()};
    }
  }
  if (cfg.format == "dot") io::write_icd_dot(out, icd);
  else io::write_icd(out, icd);
  return kOk;
}

inline int cmd_fvsp(const RunConfig& cfg, std::ostream& out) {
  const RoundingParams params = parse_params(cfg.params_text);
  const FvspInstance inst = read_input(cfg.input, [](std::istream& in) { return io::read_fvsp(in); });
  if (InstanceCheck check = validate_instance(inst); !check) {
    std::string msg = "invalid instance: " + check.reason;
    if (check.witness) msg += " (witness node " + std::to_string(*check.witness) + ")";
    throw Failure{kStructure, msg};
  }
  FvspSolution sol;
  try {
    sol = solve_fvsp(inst, params);
  } catch (const std::exception& ex) {
    throw Failure{kStructure, std::string("fvsp: ") + ex.what()};
  }
  if (cfg.format == "text") {
    out << "weight " << io::format_number(sol.weight) << '\n' << "deleted " << witness_text(sol.deleted) << '\n';
  } else {
    print_json(out, io::to_json(sol));
  }
  return kOk;
}

inline int cmd_oracle(const std::string& problem, const RunConfig& cfg, std::ostream& out) {
  oracle::ExactResult r;
  try {
    if (problem == "fvsp") {
      const FvspInstance inst = read_input(cfg.input, [](std::istream& in) { return io::read_fvsp(in); });
      if (InstanceCheck check = validate_instance(inst); !check)
        throw Failure{kStructure, "invalid instance: " + check.reason};
      r = oracle::exact_fvsp(inst, budget_of(cfg));
    } else {
      const WeightedGraph g = read_input(cfg.input, [](std::istream& in) { return io::read_graph(in); });
      r = problem == "pd" ? oracle::exact_ptolemaic_deletion(g, budget_of(cfg))
                          : oracle::exact_c4gem_hitting(g, budget_of(cfg));
    }
  } catch (const oracle::BudgetExceeded& ex) {
    throw Failure{kBudget, ex.what()};
  }
  if (cfg.format == "text") {
    out << "weight " << io::format_number(r.weight) << '\n' << "set " << witness_text(r.set) << '\n';
  } else {
    print_json(out, io::Json{{"problem", problem}, {"weight", r.weight}, {"set", r.set}});
  }
  return kOk;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const std::vector<int> ids = read_input(cfg.solution, [](std::istream& in) { return read_id_list(in); });
  if (cfg.fvsp) {
    const FvspInstance inst = read_input(cfg.input, [](std::istream& in) { return io::read_fvsp(in); });
    const FvspVerification ver = verify_fvsp_solution(inst, normalized(ids));
    if (!ver) throw Failure{kStructure, "infeasible: " + ver.reason};
    out << "ok weight " << io::format_number(inst.weight_of(normalized(ids))) << '\n';
    return kOk;
  }
  const WeightedGraph g = read_input(cfg.input, [](std::istream& in) { return io::read_graph(in); });
  for (int v : ids)
    if (v < 0 || v >= g.size()) throw Failure{kStructure, "vertex " + std::to_string(v) + " out of range"};
  const VertexSet s = normalized(ids);
  auto [rest, kept] = g.without(s);
  const PtolemaicCheck check = is_ptolemaic(rest);
  if (!check) {
    const Obstruction& o = *check.obstruction;
    throw Failure{kStructure, "not ptolemaic: " + std::string(to_string(o.kind)) + " on " +
                                  witness_text(lift_ids(o.vertices, kept))};
  }
  out << "ok weight " << io::format_number(total_weight(g, s)) << '\n';
  return kOk;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.fixture.empty()) {
    if (cfg.fixture == "st") {
      io::write_fvsp(out, st_instance());
      return kOk;
    }
    auto g = fixture(cfg.fixture);
    if (!g) throw Failure{kUsage, "unknown fixture '" + cfg.fixture + "'"};
    io::write_graph(out, *g);
    return kOk;
  }
  const auto w = split(cfg.weights, ',');
  if (w.size() != 2) throw Failure{kUsage, "--weights expects lo,hi"};
  const double lo = to_double(w[0], "--weights"), hi = to_double(w[1], "--weights");
  if (!(lo >= 0 && lo <= hi)) throw Failure{kUsage, "--weights needs 0 <= lo <= hi"};
  if (cfg.n < 0 || !(cfg.p >= 0 && cfg.p <= 1)) throw Failure{kUsage, "need n >= 0 and 0 <= p <= 1"};
  std::mt19937_64 rng(cfg.seed);
  if (cfg.fvsp) io::write_fvsp(out, random_fvsp_instance(cfg.n, cfg.p, rng, lo, hi, 0.0));
  else io::write_graph(out, erdos_renyi(cfg.n, cfg.p, rng, lo, hi));
  return kOk;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted ptolemaic deletion and FVSP approximation", "ptolemaic"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--params", cfg.params_text, "rounding parameters e,a,b");
  };
  auto* solve = app.add_subcommand("solve", "run the full deletion pipeline on a graph");
  solve->add_option("graph", cfg.input, "graph file, '-' for stdin")->required();
  add_params(solve);
  solve->add_option("--format", cfg.format, "json|text")->check(CLI::IsMember({"json", "text"}));

  auto* icd = app.add_subcommand("icd", "dump the inter-clique digraph");
  icd->add_option("graph", cfg.input)->required();
  icd->add_flag("--oracle", cfg.oracle, "use the brute-force construction");
  icd->add_option("--format", cfg.format, "text|dot")->check(CLI::IsMember({"text", "dot"}));

  auto* fvsp = app.add_subcommand("fvsp", "solve an FVSP instance");
  fvsp->add_option("instance", cfg.input)->required();
  add_params(fvsp);
  fvsp->add_option("--format", cfg.format, "json|text")->check(CLI::IsMember({"json", "text"}));

  std::string problem;
  auto* orc = app.add_subcommand("oracle", "exact exponential-time solvers");
  orc->add_option("problem", problem, "pd|hitting|fvsp")->required()->check(CLI::IsMember({"pd", "hitting", "fvsp"}));
  orc->add_option("input", cfg.input)->required();
  orc->add_option("--budget", cfg.budget, "max vertices (pd, hitting) or nodes (fvsp)")->check(CLI::PositiveNumber);
  orc->add_option("--time-cap", cfg.time_cap_ms, "milliseconds, 0 for none")->check(CLI::NonNegativeNumber);
  orc->add_option("--format", cfg.format, "json|text")->check(CLI::IsMember({"json", "text"}));

  auto* check = app.add_subcommand("check", "verify a deletion set");
  check->add_option("input", cfg.input, "graph, or FVSP instance with --fvsp")->required();
  check->add_option("solution", cfg.solution, "ids or a JSON result with \"deleted\"")->required();
  check->add_flag("--fvsp", cfg.fvsp, "input is an FVSP instance");

  auto* gen = app.add_subcommand("gen", "emit a fixture or a random instance");
  gen->add_option("--fixture", cfg.fixture, "diamond|gem|house|domino|bull|dart|c4|c5|c6|p3|p4|k3|k4|st");
  gen->add_option("--n", cfg.n, "vertex count");
  gen->add_option("--p", cfg.p, "edge probability");
  gen->add_option("--weights", cfg.weights, "uniform weight range lo,hi");
  gen->add_option("--seed", cfg.seed, "random seed");
  gen->add_flag("--fvsp", cfg.fvsp, "random valid FVSP instance instead of a graph");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return detail::cmd_solve(cfg, out);
    if (*icd) return detail::cmd_icd(cfg, out);
    if (*fvsp) return detail::cmd_fvsp(cfg, out);
    if (*orc) return detail::cmd_oracle(problem, cfg, out);
    if (*check) return detail::cmd_check(cfg, out);
    if (*gen) return detail::cmd_gen(cfg, out);
  } catch (const detail::Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kStructure;
  }
  return kUsage;
}

}  // namespace ptolemaic::cli
