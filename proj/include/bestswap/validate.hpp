#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bestswap/graph.hpp"
#include "bestswap/tree.hpp"

namespace bestswap {

enum class ValidationIssue {
  kNotSpanning,
  kNotConnected,
  kHasBridge,
  kNonPositiveWeight,
  kSelfLoop,
  kParallelEdge,
  kBadTreeRef,
  kWeightOverflow,
};

struct ValidationError : std::runtime_error {
  ValidationError(ValidationIssue issue_in, EdgeId edge_in, const std::string& msg)
      : std::runtime_error(msg), issue(issue_in), edge(edge_in) {}
  ValidationIssue issue;
  EdgeId edge = kNoEdge;
};

struct ValidatedInstance {
  Instance instance;
  RootedTree tree;
  std::vector<char> tree_mask;  // per edge id: 1 iff tree edge
};

namespace detail {

// Iterative bridge finding (Tarjan lowlink). Parallel edges are handled by
// skipping the entry edge id rather than the parent vertex.
inline std::vector<EdgeId> FindBridges(const WeightedGraph& g) {
  const int n = g.VertexCount();
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<EdgeId> bridges;
  int timer = 0;
  std::vector<std::tuple<VertexId, EdgeId, size_t>> stack;  // vertex, entry edge, next incidence idx
  for (VertexId s = 0; s < n; ++s) {
    if (tin[s] != -1) continue;
    stack.push_back({s, kNoEdge, 0});
    tin[s] = low[s] = timer++;
    while (!stack.empty()) {
      auto& [v, pe, idx] = stack.back();
      if (idx < g.Incident(v).size()) {
        const EdgeId eid = g.Incident(v)[idx++];
        if (eid == pe) continue;
        const VertexId to = g.Other(eid, v);
        if (tin[to] == -1) {
          tin[to] = low[to] = timer++;
          stack.push_back({to, eid, 0});
        } else {
          low[v] = std::min(low[v], tin[to]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          auto& [pv, ppe, pidx] = stack.back();
          low[pv] = std::min(low[pv], low[v]);
          if (low[v] > tin[pv]) bridges.push_back(pe);
        }
      }
    }
  }
  return bridges;
}

}  // namespace detail

// Sum of weights above which 128-bit cross products could no longer cover the
// stretch comparisons; inputs beyond it are rejected.
constexpr std::int64_t kMaxTotalWeight = std::int64_t(1) << 40;

inline ValidatedInstance Validate(Instance instance) {
  const WeightedGraph& g = instance.graph;
  const int n = g.VertexCount();
  if (n < 2) {
    throw ValidationError(ValidationIssue::kNotConnected, kNoEdge, "instance needs at least 2 vertices");
  }

  std::int64_t total_weight = 0;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(g.EdgeCount());
  for (EdgeId id = 0; id < g.EdgeCount(); ++id) {
    const Edge& e = g.EdgeAt(id);
    if (e.u == e.v) {
      throw ValidationError(ValidationIssue::kSelfLoop, id,
                            "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.w <= 0) {
      throw ValidationError(ValidationIssue::kNonPositiveWeight, id,
                            "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") has non-positive weight");
    }
    total_weight += e.w;
    pairs.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  if (total_weight > kMaxTotalWeight) {
    throw ValidationError(ValidationIssue::kWeightOverflow, kNoEdge,
                          "total edge weight exceeds the exact-arithmetic budget");
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw ValidationError(ValidationIssue::kParallelEdge, kNoEdge, "parallel edges in input");
  }

  if (instance.root < 0 || instance.root >= n) {
    throw ValidationError(ValidationIssue::kBadTreeRef, kNoEdge, "root out of range");
  }
  if (static_cast<int>(instance.tree_edges.size()) != n - 1) {
    throw ValidationError(ValidationIssue::kNotSpanning, kNoEdge,
                          "expected " + std::to_string(n - 1) + " tree edges, got " +
                              std::to_string(instance.tree_edges.size()));
  }
  std::vector<char> mask(g.EdgeCount(), 0);
  for (EdgeId id : instance.tree_edges) {
    if (id < 0 || id >= g.EdgeCount()) {
      throw ValidationError(ValidationIssue::kBadTreeRef, id, "tree edge id out of range");
    }
    if (mask[id]) {
      throw ValidationError(ValidationIssue::kNotSpanning, id, "duplicate tree edge");
    }
    mask[id] = 1;
  }

  // Spanning check: the n-1 tree edges must reach every vertex from the root.
  {
    std::vector<std::vector<VertexId>> adj(n);
    for (EdgeId id : instance.tree_edges) {
      const Edge& e = g.EdgeAt(id);
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{instance.root};
    seen[instance.root] = 1;
    int reached = 0;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      ++reached;
      for (VertexId to : adj[v]) {
        if (!seen[to]) {
          seen[to] = 1;
          stack.push_back(to);
        }
      }
    }
    if (reached != n) {
      throw ValidationError(ValidationIssue::kNotSpanning, kNoEdge,
                            "tree edges do not span the graph");
    }
  }

  const auto bridges = detail::FindBridges(g);
  if (!bridges.empty()) {
    const Edge& e = g.EdgeAt(bridges.front());
    throw ValidationError(ValidationIssue::kHasBridge, bridges.front(),
                          "graph has a bridge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ")");
  }

  RootedTree tree(g, instance.tree_edges, instance.root);
  return ValidatedInstance{std::move(instance), std::move(tree), std::move(mask)};
}

}  // namespace bestswap
