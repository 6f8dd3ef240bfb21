#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bestswap/centroid.hpp"
#include "bestswap/graph.hpp"
#include "bestswap/tree.hpp"

namespace bestswap {

// Per-vertex structures answering, for the failing tree edge below q and a
// target c in the hanging component: the non-tree edge f = (v,u) with u in
// that component minimizing w(f) + d_T(u, c), ties to the smallest edge id.
//
// The forest interface is cut-then-undo only: Cut(q) restricts queries to
// the subtree below q, Link() lifts the restriction. Internally the fast
// path stores, per (v, decomposition node), the attachment leaves bucketed
// and indexed for range-minimum by Euler tin, and answers a query by
// scanning the target's decomposition chain; the exact answer surfaces at
// the node separating the target from the optimal attachment.
class SwapForests {
 public:
  struct Hit {
    EdgeId edge = kNoEdge;
    Weight value = 0;
  };

  SwapForests(const WeightedGraph& graph, const RootedTree& tree,
              const CentroidDecomposition& decomp, const std::vector<char>& tree_mask,
              bool use_fast = true)
      : graph_(&graph), tree_(&tree), decomp_(&decomp), tree_mask_(&tree_mask), fast_(use_fast) {
    const int n = graph.VertexCount();
    has_attachments_.assign(n, 0);
    for (EdgeId id = 0; id < graph.EdgeCount(); ++id) {
      if (tree_mask[id]) continue;
      const Edge& e = graph.EdgeAt(id);
      has_attachments_[e.u] = 1;
      has_attachments_[e.v] = 1;
    }
    if (fast_) BuildBuckets();
  }

  bool HasAttachments(VertexId v) const { return has_attachments_[v] != 0; }
  bool FastPathEnabled() const { return fast_; }

  void Cut(VertexId q) {
    assert(!cut_active_);
    cut_active_ = true;
    lo_ = tree_->Tin(q);
    hi_ = tree_->Tout(q);
  }

  void Link() {
    assert(cut_active_);
    cut_active_ = false;
  }

  std::optional<Hit> MinSwapTo(VertexId v, VertexId target) const {
    return fast_ ? FastMinSwapTo(v, target) : ReferenceMinSwapTo(v, target);
  }

  // Linear scan over v's incident non-tree edges; the independent reference.
  std::optional<Hit> ReferenceMinSwapTo(VertexId v, VertexId target) const {
    assert(cut_active_);
    std::optional<Hit> best;
    for (EdgeId id : graph_->Incident(v)) {
      if ((*tree_mask_)[id]) continue;
      const VertexId u = graph_->Other(id, v);
      const int t = tree_->Tin(u);
      if (t < lo_ || t > hi_) continue;
      const Weight val = graph_->EdgeAt(id).w + tree_->Distance(u, target);
      if (!best || val < best->value || (val == best->value && id < best->edge)) {
        best = Hit{id, val};
      }
    }
    return best;
  }

  std::optional<Hit> FastMinSwapTo(VertexId v, VertexId target) const {
    assert(cut_active_);
    std::optional<Hit> best;
    const auto& chain = decomp_->Chain(target);
    for (int d = 0; d < static_cast<int>(chain.size()); ++d) {
      const auto it = buckets_.find(Key(v, chain[d]));
      if (it == buckets_.end()) continue;
      const Bucket& b = it->second;
      const auto lo = std::lower_bound(b.tin.begin(), b.tin.end(), lo_);
      const auto hi = std::upper_bound(b.tin.begin(), b.tin.end(), hi_);
      if (lo == hi) continue;
      const int l = static_cast<int>(lo - b.tin.begin());
      const int r = static_cast<int>(hi - b.tin.begin()) - 1;
      const int idx = b.RangeArgMin(l, r);
      const Weight val = b.value[idx] + decomp_->CentroidDistance(target, d);
      const EdgeId edge = b.edge[idx];
      if (!best || val < best->value || (val == best->value && edge < best->edge)) {
        best = Hit{edge, val};
      }
    }
    return best;
  }

 private:
  struct Bucket {
    std::vector<int> tin;       // sorted ascending
    std::vector<Weight> value;  // w(f) + d_T(u, centroid of the node)
    std::vector<EdgeId> edge;
    std::vector<std::vector<std::int32_t>> table;  // sparse argmin over (value, edge)

    bool Less(int a, int b) const {
      return value[a] < value[b] || (value[a] == value[b] && edge[a] < edge[b]);
    }

    void Finalize() {
      const int s = static_cast<int>(tin.size());
      std::vector<int> perm(s);
      for (int i = 0; i < s; ++i) perm[i] = i;
      std::sort(perm.begin(), perm.end(), [&](int a, int b) { return tin[a] < tin[b]; });
      Apply(perm);
      int levels = 1;
      while ((1 << levels) <= s) ++levels;
      table.assign(levels, {});
      table[0].resize(s);
      for (int i = 0; i < s; ++i) table[0][i] = i;
      for (int k = 1; k < levels; ++k) {
        const int len = 1 << k;
        table[k].resize(s - len + 1);
        for (int i = 0; i + len <= s; ++i) {
          const int a = table[k - 1][i];
          const int b = table[k - 1][i + (len >> 1)];
          table[k][i] = Less(a, b) ? a : b;
        }
      }
    }

    int RangeArgMin(int l, int r) const {
      int k = 0;
      while ((2 << k) <= r - l + 1) ++k;
      const int a = table[k][l];
      const int b = table[k][r - (1 << k) + 1];
      return Less(a, b) ? a : b;
    }

   private:
    void Apply(const std::vector<int>& perm) {
      std::vector<int> t2(perm.size());
      std::vector<Weight> v2(perm.size());
      std::vector<EdgeId> e2(perm.size());
      for (size_t i = 0; i < perm.size(); ++i) {
        t2[i] = tin[perm[i]];
        v2[i] = value[perm[i]];
        e2[i] = edge[perm[i]];
      }
      tin.swap(t2);
      value.swap(v2);
      edge.swap(e2);
    }
  };

  static std::uint64_t Key(VertexId v, NodeId node) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) << 32) |
           static_cast<std::uint32_t>(node);
  }

  void BuildBuckets() {
    for (EdgeId id = 0; id < graph_->EdgeCount(); ++id) {
      if ((*tree_mask_)[id]) continue;
      const Edge& e = graph_->EdgeAt(id);
      AddAttachment(e.u, e.v, id, e.w);
      AddAttachment(e.v, e.u, id, e.w);
    }
    for (auto& [key, bucket] : buckets_) bucket.Finalize();
  }

  void AddAttachment(VertexId v, VertexId u, EdgeId id, Weight w) {
    const auto& chain = decomp_->Chain(u);
    for (int d = 0; d < static_cast<int>(chain.size()); ++d) {
      Bucket& b = buckets_[Key(v, chain[d])];
      b.tin.push_back(tree_->Tin(u));
      b.value.push_back(w + decomp_->CentroidDistance(u, d));
      b.edge.push_back(id);
    }
  }

  const WeightedGraph* graph_;
  const RootedTree* tree_;
  const CentroidDecomposition* decomp_;
  const std::vector<char>* tree_mask_;
  bool fast_;
  std::vector<char> has_attachments_;
  std::unordered_map<std::uint64_t, Bucket> buckets_;
  bool cut_active_ = false;
  int lo_ = 0, hi_ = 0;
};

}  // namespace bestswap
