#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <vector>

#include "bestswap/graph.hpp"

namespace bestswap {

// Rooted spanning tree over a host graph. Precomputes parent links, weighted
// depths, an Euler interval per vertex, O(1) LCA (euler tour + sparse table)
// and binary-lifting ancestor jumps.
class RootedTree {
 public:
  RootedTree() = default;

  RootedTree(const WeightedGraph& graph, const std::vector<EdgeId>& tree_edges, VertexId root)
      : root_(root) {
    const int n = graph.VertexCount();
    parent_.assign(n, kNoVertex);
    parent_edge_.assign(n, kNoEdge);
    depth_.assign(n, 0);
    depth_w_.assign(n, 0);
    tin_.assign(n, -1);
    tout_.assign(n, -1);
    children_.assign(n, {});
    order_.reserve(n);

    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
    for (EdgeId id : tree_edges) {
      const Edge& e = graph.EdgeAt(id);
      adj[e.u].push_back({e.v, id});
      adj[e.v].push_back({e.u, id});
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());

    euler_.reserve(2 * n);
    entry_.assign(n, -1);
    std::vector<std::pair<VertexId, int>> stack;  // (vertex, next child index)
    stack.push_back({root_, 0});
    tin_[root_] = 0;
    int timer = 1;
    entry_[root_] = static_cast<int>(euler_.size());
    euler_.push_back(root_);
    order_.push_back(root_);
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < static_cast<int>(adj[v].size())) {
        auto [to, eid] = adj[v][idx++];
        if (to == parent_[v]) continue;
        parent_[to] = v;
        parent_edge_[to] = eid;
        depth_[to] = depth_[v] + 1;
        depth_w_[to] = depth_w_[v] + graph.EdgeAt(eid).w;
        children_[v].push_back(to);
        tin_[to] = timer++;
        entry_[to] = static_cast<int>(euler_.size());
        euler_.push_back(to);
        order_.push_back(to);
        stack.push_back({to, 0});
      } else {
        tout_[v] = timer - 1;
        stack.pop_back();
        if (!stack.empty()) euler_.push_back(stack.back().first);
      }
    }

    BuildEulerRmq();
    BuildLifting(n);
  }

  VertexId Root() const { return root_; }
  VertexId Parent(VertexId v) const { return parent_[v]; }
  EdgeId ParentEdge(VertexId v) const { return parent_edge_[v]; }
  const std::vector<VertexId>& Children(VertexId v) const { return children_[v]; }
  int Depth(VertexId v) const { return depth_[v]; }
  Weight WeightedDepth(VertexId v) const { return depth_w_[v]; }
  int Tin(VertexId v) const { return tin_[v]; }
  int Tout(VertexId v) const { return tout_[v]; }
  // Vertices in DFS preorder; children before parents when reversed.
  const std::vector<VertexId>& PreOrder() const { return order_; }

  bool InSubtree(VertexId x, VertexId top) const {
    return tin_[top] <= tin_[x] && tin_[x] <= tout_[top];
  }

  VertexId Lca(VertexId a, VertexId b) const {
    int l = entry_[a], r = entry_[b];
    if (l > r) std::swap(l, r);
    return RangeMinVertex(l, r + 1);
  }

  Weight Distance(VertexId a, VertexId b) const {
    const VertexId l = Lca(a, b);
    return depth_w_[a] + depth_w_[b] - 2 * depth_w_[l];
  }

  int HopDistance(VertexId a, VertexId b) const {
    const VertexId l = Lca(a, b);
    return depth_[a] + depth_[b] - 2 * depth_[l];
  }

  VertexId Ancestor(VertexId v, int steps) const {
    for (int k = 0; steps > 0 && v != kNoVertex; ++k, steps >>= 1) {
      if (steps & 1) v = up_[k][v];
    }
    return v;
  }

  VertexId AncestorAtDepth(VertexId v, int depth) const {
    assert(depth <= depth_[v]);
    return Ancestor(v, depth_[v] - depth);
  }

 private:
  void BuildEulerRmq() {
    const int sz = static_cast<int>(euler_.size());
    const int levels = sz > 1 ? std::bit_width(static_cast<unsigned>(sz)) : 1;
    rmq_.assign(levels, std::vector<VertexId>(sz));
    rmq_[0] = euler_;
    for (int k = 1; k < levels; ++k) {
      const int half = 1 << (k - 1);
      for (int i = 0; i + (1 << k) <= sz; ++i) {
        const VertexId a = rmq_[k - 1][i];
        const VertexId b = rmq_[k - 1][i + half];
        rmq_[k][i] = depth_[a] <= depth_[b] ? a : b;
      }
    }
  }

  VertexId RangeMinVertex(int l, int r) const {
    const int k = std::bit_width(static_cast<unsigned>(r - l)) - 1;
    const VertexId a = rmq_[k][l];
    const VertexId b = rmq_[k][r - (1 << k)];
    return depth_[a] <= depth_[b] ? a : b;
  }

  void BuildLifting(int n) {
    int max_depth = 0;
    for (int d : depth_) max_depth = std::max(max_depth, d);
    const int levels =
        std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(std::max(1, max_depth)))));
    up_.assign(levels, std::vector<VertexId>(n));
    for (VertexId v = 0; v < n; ++v) up_[0][v] = parent_[v] == kNoVertex ? root_ : parent_[v];
    for (int k = 1; k < levels; ++k) {
      for (VertexId v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
    }
  }

  VertexId root_ = 0;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<int> depth_;
  std::vector<Weight> depth_w_;
  std::vector<int> tin_, tout_;
  std::vector<VertexId> order_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> euler_;
  std::vector<int> entry_;
  std::vector<std::vector<VertexId>> rmq_;
  std::vector<std::vector<VertexId>> up_;
};

enum class CutSide { kUp, kDown };

// Side of vertex x relative to the failing tree edge whose lower (deeper)
// endpoint is q: kDown iff x lies in the subtree hanging below the edge.
inline CutSide SideOf(const RootedTree& tree, VertexId q, VertexId x) {
  return tree.InSubtree(x, q) ? CutSide::kDown : CutSide::kUp;
}

// The deeper endpoint of a tree edge.
inline VertexId LowerEndpoint(const RootedTree& tree, const Edge& e) {
  return tree.Parent(e.v) == e.u ? e.v : e.u;
}

// True iff g reconnects the two components of the tree minus the tree edge
// below q, i.e. exactly one endpoint of g hangs below q.
inline bool IsSwapEdge(const RootedTree& tree, VertexId q, const Edge& g) {
  return tree.InSubtree(g.u, q) != tree.InSubtree(g.v, q);
}

}  // namespace bestswap
