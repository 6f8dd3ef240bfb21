#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bestswap/graph.hpp"

namespace bestswap {

struct ParseError : std::runtime_error {
  ParseError(int line_in, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_in) + ": " + msg), line(line_in) {}
  int line;
};

// Instance text format, one record per line, '#' starts a comment:
//   p <n> <m>
//   e <u> <v> <w>     (m lines, 0-indexed endpoints, positive integer weight)
//   t <u> <v>         (n-1 lines, must match an e record)
//   r <root>
inline Instance ParseInstance(std::istream& in) {
  Instance inst;
  std::map<std::pair<VertexId, VertexId>, EdgeId> by_endpoints;
  int n = -1;
  long long m = -1;
  bool have_root = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "p") {
      if (n != -1) throw ParseError(line_no, "duplicate 'p' header");
      if (!(ls >> n >> m) || n <= 0 || m < 0) throw ParseError(line_no, "malformed 'p' header");
      inst.graph = WeightedGraph(n);
    } else if (tag == "e") {
      if (n == -1) throw ParseError(line_no, "'e' before 'p' header");
      long long u, v, w;
      if (!(ls >> u >> v >> w)) throw ParseError(line_no, "malformed 'e' record");
      if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line_no, "edge endpoint out of range");
      if (u == v) throw ParseError(line_no, "self-loop");
      if (w <= 0) throw ParseError(line_no, "edge weight must be a positive integer");
      std::pair<VertexId, VertexId> key{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
      if (by_endpoints.count(key)) throw ParseError(line_no, "duplicate edge");
      const EdgeId id = inst.graph.AddEdge(static_cast<VertexId>(u), static_cast<VertexId>(v),
                                           static_cast<Weight>(w));
      by_endpoints.emplace(key, id);
    } else if (tag == "t") {
      if (n == -1) throw ParseError(line_no, "'t' before 'p' header");
      long long u, v;
      if (!(ls >> u >> v)) throw ParseError(line_no, "malformed 't' record");
      if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line_no, "tree endpoint out of range");
      std::pair<VertexId, VertexId> key{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
      auto it = by_endpoints.find(key);
      if (it == by_endpoints.end()) {
        throw ParseError(line_no, "tree edge does not reference an existing edge");
      }
      inst.tree_edges.push_back(it->second);
    } else if (tag == "r") {
      long long r;
      if (!(ls >> r)) throw ParseError(line_no, "malformed 'r' record");
      if (n == -1 || r < 0 || r >= n) throw ParseError(line_no, "root out of range");
      inst.root = static_cast<VertexId>(r);
      have_root = true;
    } else {
      throw ParseError(line_no, "unknown record '" + tag + "'");
    }
  }
  if (n == -1) throw ParseError(line_no, "missing 'p' header");
  if (inst.graph.EdgeCount() != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " 'e' records, got " +
                                  std::to_string(inst.graph.EdgeCount()));
  }
  if (static_cast<int>(inst.tree_edges.size()) != n - 1) {
    throw ParseError(line_no, "expected " + std::to_string(n - 1) + " 't' records, got " +
                                  std::to_string(inst.tree_edges.size()));
  }
  if (!have_root) throw ParseError(line_no, "missing 'r' record");
  return inst;
}

inline Instance ParseInstance(const std::string& text) {
  std::istringstream in(text);
  return ParseInstance(in);
}

inline void WriteInstance(const Instance& inst, std::ostream& out) {
  out << "p " << inst.graph.VertexCount() << " " << inst.graph.EdgeCount() << "\n";
  for (const Edge& e : inst.graph.Edges()) {
    out << "e " << e.u << " " << e.v << " " << e.w << "\n";
  }
  for (EdgeId id : inst.tree_edges) {
    const Edge& e = inst.graph.EdgeAt(id);
    out << "t " << e.u << " " << e.v << "\n";
  }
  out << "r " << inst.root << "\n";
}

inline std::string WriteInstance(const Instance& inst) {
  std::ostringstream out;
  WriteInstance(inst, out);
  return out.str();
}

}  // namespace bestswap
