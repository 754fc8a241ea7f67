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

// Text formats.
//
// Graph:          p <n> <m>         FVSP instance:  d <n> <m>
//                 v <id> [weight]                   n <id> <weight>
//                 e <u> <v>                         a <u> <v>
//
// Ids are 0-based; vertex weights default to 1.0; '#' starts a comment. The
// header must precede all other lines and the edge/arc count must match.

#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "ptolemaic/fvsp.hpp"
#include "ptolemaic/graph.hpp"
#include "ptolemaic/icd.hpp"
#include "ptolemaic/pipeline.hpp"

namespace ptolemaic::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

inline std::string join(const std::vector<int>& ids, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(ids[i]);
  }
  return out;
}

namespace detail {

struct Record {
  int line;
  std::vector<std::string> fields;
};

inline std::vector<Record> tokenize(std::istream& in) {
  std::vector<Record> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    Record r{line, {}};
    for (std::string tok; ss >> tok;) r.fields.push_back(tok);
    if (!r.fields.empty()) out.push_back(std::move(r));
  }
  return out;
}

inline long long parse_int(const Record& r, std::size_t i) {
  if (i >= r.fields.size()) throw ParseError(r.line, "missing field");
  const std::string& s = r.fields[i];
  long long v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError(r.line, "expected an integer, got '" + s + "'");
  return v;
}

inline double parse_double(const Record& r, std::size_t i) {
  if (i >= r.fields.size()) throw ParseError(r.line, "missing field");
  const std::string& s = r.fields[i];
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError(r.line, "expected a number, got '" + s + "'");
  if (!std::isfinite(v) || v < 0) throw ParseError(r.line, "weights must be finite and nonnegative");
  return v;
}

inline void expect_fields(const Record& r, std::size_t lo, std::size_t hi) {
  if (r.fields.size() < lo || r.fields.size() > hi) throw ParseError(r.line, "wrong number of fields");
}

inline int parse_id(const Record& r, std::size_t i, long long n) {
  const long long v = parse_int(r, i);
  if (v < 0 || v >= n) throw ParseError(r.line, "id " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

// Shared reader for both formats: header tag, node tag, link tag.
template <typename OnHeader, typename OnNode, typename OnLink>
void read_records(std::istream& in, char header, char node, char link, OnHeader&& on_header, OnNode&& on_node,
                  OnLink&& on_link) {
  const std::vector<Record> records = tokenize(in);
  if (records.empty()) throw ParseError(0, std::string("missing '") + header + "' header");
  long long n = -1, m = -1, links = 0;
  int last_line = 0;
  for (const Record& r : records) {
    last_line = r.line;
    const std::string& tag = r.fields[0];
    if (tag.size() != 1) throw ParseError(r.line, "unknown record '" + tag + "'");
    if (tag[0] == header) {
      if (n >= 0) throw ParseError(r.line, "duplicate header");
      expect_fields(r, 3, 3);
      n = parse_int(r, 1);
      m = parse_int(r, 2);
      if (n < 0 || m < 0) throw ParseError(r.line, "negative count in header");
      on_header(r, static_cast<int>(n));
    } else if (n < 0) {
      throw ParseError(r.line, std::string("'") + header + "' header must come first");
    } else if (tag[0] == node) {
      on_node(r, n);
    } else if (tag[0] == link) {
      expect_fields(r, 3, 3);
      on_link(r, parse_id(r, 1, n), parse_id(r, 2, n));
      ++links;
    } else {
      throw ParseError(r.line, "unknown record '" + tag + "'");
    }
  }
  if (links != m)
    throw ParseError(last_line, "header announces " + std::to_string(m) + " links, found " + std::to_string(links));
}

}  // namespace detail

inline WeightedGraph read_graph(std::istream& in) {
  WeightedGraph g;
  detail::read_records(
      in, 'p', 'v', 'e', [&](const detail::Record&, int n) { g = WeightedGraph(n); },
      [&](const detail::Record& r, long long n) {
        detail::expect_fields(r, 2, 3);
        const int v = detail::parse_id(r, 1, n);
        g.set_weight(v, r.fields.size() == 3 ? detail::parse_double(r, 2) : 1.0);
      },
      [&](const detail::Record& r, int u, int v) {
        if (u == v) throw ParseError(r.line, "self-loop");
        if (g.adjacent(u, v)) throw ParseError(r.line, "duplicate edge");
        g.add_edge(u, v);
      });
  return g;
}

inline WeightedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << "p " << g.size() << ' ' << g.edge_count() << '\n';
  for (Vertex v = 0; v < g.size(); ++v) out << "v " << v << ' ' << format_number(g.weight(v)) << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

inline std::string to_text(const WeightedGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline FvspInstance read_fvsp(std::istream& in) {
  FvspInstance inst;
  detail::read_records(
      in, 'd', 'n', 'a', [&](const detail::Record&, int n) { inst = FvspInstance(n, 1.0); },
      [&](const detail::Record& r, long long n) {
        detail::expect_fields(r, 3, 3);
        inst.weight[detail::parse_id(r, 1, n)] = detail::parse_double(r, 2);
      },
      [&](const detail::Record& r, int u, int v) {
        try {
          inst.add_arc(u, v);
        } catch (const std::invalid_argument& ex) {
          throw ParseError(r.line, ex.what());
        }
      });
  return inst;
}

inline FvspInstance parse_fvsp(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_fvsp(in);
}

inline void write_fvsp(std::ostream& out, const FvspInstance& inst) {
  out << "d " << inst.size() << ' ' << inst.arc_count() << '\n';
  for (NodeId v = 0; v < inst.size(); ++v) out << "n " << v << ' ' << format_number(inst.weight[v]) << '\n';
  for (const Arc& a : inst.graph.arcs()) out << "a " << a.tail << ' ' << a.head << '\n';
}

inline std::string to_text(const FvspInstance& inst) {
  std::ostringstream out;
  write_fvsp(out, inst);
  return out.str();
}

/// One `node` line per node and one `arc` line per Hasse arc.
inline void write_icd(std::ostream& out, const InterCliqueDigraph& icd) {
  for (NodeId x = 0; x < icd.size(); ++x) {
    const IcdNode& node = icd.nodes[x];
    out << "node " << x << " clique=" << join(node.clique) << " src=" << join(node.src)
        << " w=" << format_number(node.weight) << " phiInv=" << join(node.phi_inv) << '\n';
  }
  for (const Arc& a : icd.hasse.arcs()) out << "arc " << a.tail << ' ' << a.head << '\n';
}

inline void write_icd_dot(std::ostream& out, const InterCliqueDigraph& icd) {
  out << "digraph icd {\n  node [shape=box];\n";
  for (NodeId x = 0; x < icd.size(); ++x) {
    const IcdNode& node = icd.nodes[x];
    out << "  n" << x << " [label=\"{" << join(node.clique) << "}\\nw=" << format_number(node.weight) << '"';
    if (node.phi_inv.empty()) out << " style=dashed";
    out << "];\n";
  }
  for (const Arc& a : icd.hasse.arcs()) out << "  n" << a.tail << " -> n" << a.head << ";\n";
  out << "}\n";
}

using Json = nlohmann::ordered_json;

inline Json to_json(const FvspSolution& sol) {
  return Json{{"deleted", sol.deleted},
              {"weight", sol.weight},
              {"theta", sol.theta},
              {"stages", {{"step1", sol.step1_weight}, {"step3", sol.step3_weight}, {"cleanup", sol.cleanup_weight}}},
              {"lp_objective", sol.lp_objective},
              {"candidates", sol.candidates}};
}

inline Json to_json(const PipelineResult& r) {
  return Json{
      {"deleted", r.deleted},
      {"weight", r.weight},
      {"stages",
       {{"hitting",
         {{"deleted", r.hitting.removed},
          {"weight", r.hitting_weight},
          {"lp_value", r.hitting.lp_value},
          {"constraints", r.hitting.constraint_count},
          {"repairs", r.hitting.repairs}}},
        {"fvsp",
         {{"icd_nodes", r.icd.size()},
          {"icd_arcs", r.icd.hasse.arc_count()},
          {"deleted_nodes", r.fvsp.deleted},
          {"node_weight", r.fvsp.weight},
          {"theta", r.fvsp.theta},
          {"lp_objective", r.fvsp.lp_objective},
          {"step1", r.fvsp.step1_weight},
          {"step3", r.fvsp.step3_weight},
          {"cleanup", r.fvsp.cleanup_weight},
          {"lifted", r.lifted},
          {"lifted_weight", r.lifted_weight}}}}},
      {"verification",
       {{"ptolemaic_forbidden_subgraphs", r.ptolemaic_by_forbidden_subgraphs},
        {"ptolemaic_icd", r.ptolemaic_by_icd},
        {"c4_gem_free_after_hitting", r.c4_gem_free_after_hitting}}}};
}

}  // namespace ptolemaic::io
