#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "bestswap/tree.hpp"

namespace bestswap {

using NodeId = std::int32_t;
constexpr NodeId kNoNode = -1;

// Recursive centroid decomposition of a tree. Every node is a connected
// subtree of T; removing a node's centroid yields its child components, plus
// the singleton {centroid} which is kept as an explicit first child. The
// nodes containing a vertex form a root-to-leaf chain, which gives O(1)
// membership and child-towards lookups.
class CentroidDecomposition {
 public:
  struct Node {
    VertexId centroid = kNoVertex;
    NodeId parent = kNoNode;
    int depth = 0;
    int size = 0;
    VertexId top = kNoVertex;  // shallowest member in T
    std::vector<NodeId> children;
    std::vector<int> tins;  // sorted Euler tins of members
  };

  explicit CentroidDecomposition(const RootedTree& tree) : tree_(&tree) {
    const int n = static_cast<int>(tree.PreOrder().size());
    adj_.assign(n, {});
    for (VertexId v = 0; v < n; ++v) {
      if (tree.Parent(v) != kNoVertex) {
        const Weight w = tree.WeightedDepth(v) - tree.WeightedDepth(tree.Parent(v));
        adj_[v].push_back({tree.Parent(v), w});
        adj_[tree.Parent(v)].push_back({v, w});
      }
    }
    for (auto& lst : adj_) std::sort(lst.begin(), lst.end());
    removed_.assign(n, 0);
    size_.assign(n, 0);
    chain_.assign(n, {});
    centroid_dist_.assign(n, {});
    nodes_.reserve(2 * n);
    root_ = BuildNode(tree.Root(), kNoNode, 0);
    adj_.clear();
    removed_.clear();
    size_.clear();
  }

  NodeId RootNode() const { return root_; }
  int NodeCount() const { return static_cast<int>(nodes_.size()); }
  const Node& At(NodeId id) const { return nodes_[id]; }

  // Chain of nodes containing v, from the decomposition root down.
  const std::vector<NodeId>& Chain(VertexId v) const { return chain_[v]; }
  NodeId LeafOf(VertexId v) const { return chain_[v].back(); }

  bool Contains(NodeId id, VertexId v) const {
    const int d = nodes_[id].depth;
    return d < static_cast<int>(chain_[v].size()) && chain_[v][d] == id;
  }

  // The child of `id` whose member set contains v; kNoNode when `id` is
  // already v's leaf. Requires Contains(id, v).
  NodeId ChildToward(NodeId id, VertexId v) const {
    assert(Contains(id, v));
    const int d = nodes_[id].depth + 1;
    return d < static_cast<int>(chain_[v].size()) ? chain_[v][d] : kNoNode;
  }

  // d_T(v, centroid of chain_[v][depth]).
  Weight CentroidDistance(VertexId v, int depth) const { return centroid_dist_[v][depth]; }

  // Anchor vertex used by the line decomposition: a singleton group anchors
  // at its own vertex, any other group at its parent's centroid. Undefined
  // for the decomposition root.
  VertexId AnchorOf(NodeId id) const {
    const Node& nd = nodes_[id];
    if (nd.size == 1) return nd.centroid;
    assert(nd.parent != kNoNode);
    return nodes_[nd.parent].centroid;
  }

  // d_T(v, AnchorOf(node)) for a member v of `node`.
  Weight AnchorDistance(NodeId id, VertexId v) const {
    const Node& nd = nodes_[id];
    assert(Contains(id, v));
    if (nd.size == 1) return 0;
    return centroid_dist_[v][nd.depth - 1];
  }

  // First vertex of the T-path from y to the node's centroid that is a
  // member of the node.
  VertexId EntryVertex(NodeId id, VertexId y) const {
    if (Contains(id, y)) return y;
    const Node& nd = nodes_[id];
    if (!tree_->InSubtree(y, nd.top)) return nd.top;
    // y hangs below the node's top but is not a member. Its member
    // ancestors form a contiguous depth range ending at the top, so lift
    // through non-members (staying at or below the top) and step once.
    const int top_depth = tree_->Depth(nd.top);
    VertexId x = y;
    int remaining = tree_->Depth(y) - top_depth;
    int k = 0;
    while ((2 << k) <= remaining) ++k;
    for (; k >= 0; --k) {
      if ((1 << k) > remaining) continue;
      const VertexId cand = tree_->Ancestor(x, 1 << k);
      if (!Contains(id, cand) && tree_->Depth(cand) >= top_depth) {
        remaining = tree_->Depth(cand) - top_depth;
        x = cand;
      }
    }
    return tree_->Parent(x);
  }

  // The component of node minus its centroid that contains the first
  // node-member on the path from y; kNoNode when that member is the
  // centroid itself.
  NodeId CyTree(NodeId id, VertexId y) const {
    const VertexId z = EntryVertex(id, y);
    if (z == nodes_[id].centroid) return kNoNode;
    return ChildToward(id, z);
  }

  // True iff the node has a member with Euler tin inside [lo, hi].
  bool IntersectsRange(NodeId id, int lo, int hi) const {
    const auto& tins = nodes_[id].tins;
    auto it = std::lower_bound(tins.begin(), tins.end(), lo);
    return it != tins.end() && *it <= hi;
  }

  // Max chain length.
  int Height() const {
    int h = 0;
    for (const auto& c : chain_) h = std::max(h, static_cast<int>(c.size()));
    return h;
  }

  // Centroid of a connected vertex set of `tree`: minimizes the maximum
  // component size after removal, ties to the smallest vertex id.
  static VertexId FindCentroid(const RootedTree& tree, const std::vector<VertexId>& members) {
    assert(!members.empty());
    std::vector<VertexId> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    auto in_set = [&](VertexId v) {
      return std::binary_search(sorted.begin(), sorted.end(), v);
    };
    const int total = static_cast<int>(sorted.size());
    // Subtree sizes within the member set; preorder reversed visits children
    // before parents.
    std::vector<int> size(tree.PreOrder().size(), 0);
    std::vector<VertexId> order;
    for (VertexId v : tree.PreOrder()) {
      if (in_set(v)) order.push_back(v);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      size[*it] += 1;
      const VertexId p = tree.Parent(*it);
      if (p != kNoVertex && in_set(p)) size[p] += size[*it];
    }
    VertexId best = kNoVertex;
    int best_worst = total + 1;
    for (VertexId v : order) {
      int w = total - size[v];
      for (VertexId c : tree.Children(v)) {
        if (in_set(c)) w = std::max(w, size[c]);
      }
      if (w < best_worst || (w == best_worst && v < best)) {
        best = v;
        best_worst = w;
      }
    }
    return best;
  }

 private:
  NodeId BuildNode(VertexId seed, NodeId parent, int depth) {
    // Collect the component reachable from seed.
    std::vector<VertexId> members;
    {
      if (component_mark_.size() < adj_.size()) component_mark_.assign(adj_.size(), 0);
      std::vector<char>& mark = component_mark_;
      std::vector<VertexId> dfs{seed};
      mark[seed] = 1;
      while (!dfs.empty()) {
        const VertexId v = dfs.back();
        dfs.pop_back();
        members.push_back(v);
        for (auto [to, w] : adj_[v]) {
          if (!removed_[to] && !mark[to]) {
            mark[to] = 1;
            dfs.push_back(to);
          }
        }
      }
      for (VertexId v : members) mark[v] = 0;
    }

    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
    Node& nd = nodes_[id];
    nd.parent = parent;
    nd.depth = depth;
    nd.size = static_cast<int>(members.size());
    nd.centroid = nd.size == 1 ? members.front() : ComponentCentroid(members);
    nd.top = members.front();
    for (VertexId v : members) {
      if (tree_->Depth(v) < tree_->Depth(nd.top)) nd.top = v;
      chain_[v].push_back(id);
    }
    nd.tins.reserve(members.size());
    for (VertexId v : members) nd.tins.push_back(tree_->Tin(v));
    std::sort(nd.tins.begin(), nd.tins.end());

    // Distances from the centroid to every member, aligned with the chains.
    {
      std::vector<std::pair<VertexId, Weight>> dfs{{nd.centroid, 0}};
      std::vector<char>& mark = component_mark_;
      mark[nd.centroid] = 1;
      std::vector<VertexId> visited{nd.centroid};
      while (!dfs.empty()) {
        auto [v, dist] = dfs.back();
        dfs.pop_back();
        centroid_dist_[v].push_back(dist);
        for (auto [to, w] : adj_[v]) {
          if (!removed_[to] && !mark[to]) {
            mark[to] = 1;
            visited.push_back(to);
            dfs.push_back({to, dist + w});
          }
        }
      }
      for (VertexId v : visited) mark[v] = 0;
    }

    if (nd.size == 1) return id;

    const VertexId c = nd.centroid;
    removed_[c] = 1;
    // The singleton {centroid} child comes first, then the split components
    // in adjacency order.
    const NodeId self_child = BuildSingleton(c, id, depth + 1);
    nodes_[id].children.push_back(self_child);
    for (auto [to, w] : adj_[c]) {
      if (!removed_[to]) {
        const NodeId child = BuildNode(to, id, depth + 1);
        nodes_[id].children.push_back(child);
      }
    }
    return id;
  }

  NodeId BuildSingleton(VertexId v, NodeId parent, int depth) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
    Node& nd = nodes_[id];
    nd.parent = parent;
    nd.depth = depth;
    nd.size = 1;
    nd.centroid = v;
    nd.top = v;
    nd.tins = {tree_->Tin(v)};
    chain_[v].push_back(id);
    centroid_dist_[v].push_back(0);
    return id;
  }

  VertexId ComponentCentroid(const std::vector<VertexId>& members) {
    const int total = static_cast<int>(members.size());
    // Sizes rooted at members.front(); iterative post-order accumulation.
    for (VertexId v : members) size_[v] = 1;
    std::vector<std::pair<VertexId, VertexId>> order;  // (vertex, parent in walk)
    order.reserve(members.size());
    std::vector<VertexId> stack{members.front()};
    std::vector<char>& mark = component_mark_;
    mark[members.front()] = 1;
    std::vector<std::pair<VertexId, VertexId>> walk{{members.front(), kNoVertex}};
    while (!walk.empty()) {
      auto [v, par] = walk.back();
      walk.pop_back();
      order.push_back({v, par});
      for (auto [to, w] : adj_[v]) {
        if (!removed_[to] && to != par && !mark[to]) {
          mark[to] = 1;
          walk.push_back({to, v});
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (it->second != kNoVertex) size_[it->second] += size_[it->first];
    }
    VertexId best = kNoVertex;
    int best_worst = total + 1;
    for (auto [v, par] : order) {
      int w = total - size_[v];
      for (auto [to, ew] : adj_[v]) {
        if (!removed_[to] && to != par) w = std::max(w, size_[to]);
      }
      if (w < best_worst || (w == best_worst && v < best)) {
        best = v;
        best_worst = w;
      }
    }
    for (auto [v, par] : order) mark[v] = 0;
    return best;
  }

  const RootedTree* tree_;
  std::vector<std::vector<std::pair<VertexId, Weight>>> adj_;
  std::vector<char> removed_;
  std::vector<char> component_mark_;
  std::vector<int> size_;
  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> chain_;
  std::vector<std::vector<Weight>> centroid_dist_;
  NodeId root_ = kNoNode;
};

}  // namespace bestswap
