#pragma once

#include <cstdint>
#include <vector>

namespace bestswap {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Weight = std::int64_t;

constexpr EdgeId kNoEdge = -1;
constexpr VertexId kNoVertex = -1;

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Weight w = 0;
};

// Undirected graph as a flat edge list plus per-vertex incidence lists.
// Edge ids are positions in the edge list and stay stable.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n) : incident_(n) {}

  EdgeId AddEdge(VertexId u, VertexId v, Weight w) {
    const EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v, w});
    incident_[u].push_back(id);
    incident_[v].push_back(id);
    return id;
  }

  VertexId AddVertex() {
    incident_.emplace_back();
    return static_cast<VertexId>(incident_.size()) - 1;
  }

  int VertexCount() const { return static_cast<int>(incident_.size()); }
  int EdgeCount() const { return static_cast<int>(edges_.size()); }

  const Edge& EdgeAt(EdgeId id) const { return edges_[id]; }
  const std::vector<Edge>& Edges() const { return edges_; }
  const std::vector<EdgeId>& Incident(VertexId v) const { return incident_[v]; }

  VertexId Other(EdgeId id, VertexId from) const {
    const Edge& e = edges_[id];
    return e.u == from ? e.v : e.u;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

// A problem instance: graph, the spanning-tree edge ids, and the root.
struct Instance {
  WeightedGraph graph;
  std::vector<EdgeId> tree_edges;
  VertexId root = 0;

  bool IsTreeEdgeId(EdgeId id, const std::vector<char>& mask) const {
    return mask[id] != 0;
  }

  std::vector<char> TreeEdgeMask() const {
    std::vector<char> mask(graph.EdgeCount(), 0);
    for (EdgeId id : tree_edges) mask[id] = 1;
    return mask;
  }
};

}  // namespace bestswap
