#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "bestswap/rational.hpp"
#include "bestswap/validate.hpp"

namespace bestswap {

// Quadratic-time references used to pin down expected values for the fast
// path. Everything here is exact and deliberately simple.
class Oracle {
 public:
  explicit Oracle(const ValidatedInstance& vi)
      : inst_(vi.instance), tree_(vi.tree), tree_mask_(vi.tree_mask) {
    const int n = inst_.graph.VertexCount();
    tree_dist_.assign(n, std::vector<Weight>(n, 0));
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        tree_dist_[a][b] = tree_dist_[b][a] = tree_.Distance(a, b);
      }
    }
    for (EdgeId id = 0; id < inst_.graph.EdgeCount(); ++id) {
      if (!tree_mask_[id]) nontree_.push_back(id);
    }
  }

  const RootedTree& Tree() const { return tree_; }

  // Swap candidates for the tree edge below q, ascending edge id.
  std::vector<EdgeId> SwapEdges(VertexId q) const {
    std::vector<EdgeId> out;
    for (EdgeId id : nontree_) {
      if (IsSwapEdge(tree_, q, inst_.graph.EdgeAt(id))) out.push_back(id);
    }
    return out;
  }

  // phi(f, g) = (d_T(x,v) + w(f) + d_T(u,y)) / w(g) with v,x above the cut
  // and u,y below it.
  Rational Phi(VertexId q, EdgeId f, EdgeId g) const {
    const auto [v, u] = Oriented(q, f);
    const auto [x, y] = Oriented(q, g);
    const Weight num = tree_dist_[x][v] + inst_.graph.EdgeAt(f).w + tree_dist_[u][y];
    return Rational{num, inst_.graph.EdgeAt(g).w};
  }

  // max_g phi(f, g) over the swap set of the edge below q.
  Rational CutObjective(VertexId q, EdgeId f) const {
    Rational best = Rational::NegInfinity();
    for (EdgeId g : SwapEdges(q)) {
      const Rational p = Phi(q, f, g);
      if (Compare(p, best) > 0) best = p;
    }
    return best;
  }

  // Exhaustive best cut edge: argmin_f max_g phi(f,g), ties by edge id.
  std::optional<std::pair<EdgeId, Rational>> BruteBestCutEdge(VertexId q) const {
    std::optional<std::pair<EdgeId, Rational>> best;
    for (EdgeId f : SwapEdges(q)) {
      const Rational val = CutObjective(q, f);
      if (!best || Compare(val, best->second) < 0) best = {f, val};
    }
    if (best) best->second.Reduce();
    return best;
  }

  // Same restricted to swap edges incident to v.
  std::optional<std::pair<EdgeId, Rational>> BruteVertexBestCutEdge(VertexId q, VertexId v) const {
    std::optional<std::pair<EdgeId, Rational>> best;
    for (EdgeId f : SwapEdges(q)) {
      const Edge& fe = inst_.graph.EdgeAt(f);
      if (fe.u != v && fe.v != v) continue;
      const Rational val = CutObjective(q, f);
      if (!best || Compare(val, best->second) < 0) best = {f, val};
    }
    if (best) best->second.Reduce();
    return best;
  }

  // Exact stretch of the swap tree in the graph minus the failing edge:
  // max over vertex pairs of d_swap / d_{G-e}.
  Rational TrueStretch(VertexId q, EdgeId f) const {
    const auto& sp = ShortestPathsWithout(q);
    return StretchAgainst(q, f, sp);
  }

  // argmin_f of TrueStretch, ties by edge id.
  std::optional<std::pair<EdgeId, Rational>> BruteBestSwapEdge(VertexId q) const {
    const auto& sp = ShortestPathsWithout(q);
    std::optional<std::pair<EdgeId, Rational>> best;
    for (EdgeId f : SwapEdges(q)) {
      const Rational val = StretchAgainst(q, f, sp);
      if (!best || Compare(val, best->second) < 0) best = {f, val};
    }
    if (best) best->second.Reduce();
    return best;
  }

  Rational MinTrueStretch(VertexId q) const {
    auto best = BruteBestSwapEdge(q);
    assert(best);
    return best->second;
  }

  // (v, u) with v above the cut below q and u below it.
  std::pair<VertexId, VertexId> Oriented(VertexId q, EdgeId id) const {
    const Edge& e = inst_.graph.EdgeAt(id);
    return tree_.InSubtree(e.v, q) ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u);
  }

  const std::vector<EdgeId>& NonTreeEdges() const { return nontree_; }
  Weight TreeDist(VertexId a, VertexId b) const { return tree_dist_[a][b]; }

 private:
  // All-pairs shortest paths on the graph minus the tree edge below q.
  const std::vector<std::vector<Weight>>& ShortestPathsWithout(VertexId q) const {
    if (sp_cache_q_ == q) return sp_cache_;
    const int n = inst_.graph.VertexCount();
    const EdgeId removed = tree_.ParentEdge(q);
    sp_cache_.assign(n, std::vector<Weight>(n, kUnreached));
    using Item = std::pair<Weight, VertexId>;
    for (VertexId s = 0; s < n; ++s) {
      auto& dist = sp_cache_[s];
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      dist[s] = 0;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d != dist[v]) continue;
        for (EdgeId id : inst_.graph.Incident(v)) {
          if (id == removed) continue;
          const VertexId to = inst_.graph.Other(id, v);
          const Weight nd = d + inst_.graph.EdgeAt(id).w;
          if (nd < dist[to]) {
            dist[to] = nd;
            pq.push({nd, to});
          }
        }
      }
    }
    sp_cache_q_ = q;
    return sp_cache_;
  }

  Rational StretchAgainst(VertexId q, EdgeId f,
                          const std::vector<std::vector<Weight>>& sp) const {
    const int n = inst_.graph.VertexCount();
    const auto [fv, fu] = Oriented(q, f);
    const Weight fw = inst_.graph.EdgeAt(f).w;
    Rational best{0, 1};
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        const bool a_down = tree_.InSubtree(a, q);
        const bool b_down = tree_.InSubtree(b, q);
        Weight swap_dist;
        if (a_down == b_down) {
          swap_dist = tree_dist_[a][b];
        } else {
          const VertexId up = a_down ? b : a;
          const VertexId down = a_down ? a : b;
          swap_dist = tree_dist_[up][fv] + fw + tree_dist_[fu][down];
        }
        const Rational r{swap_dist, sp[a][b]};
        if (Compare(r, best) > 0) best = r;
      }
    }
    return best;
  }

  static constexpr Weight kUnreached = std::numeric_limits<Weight>::max() / 4;

  const Instance& inst_;
  const RootedTree& tree_;
  const std::vector<char>& tree_mask_;
  std::vector<EdgeId> nontree_;
  std::vector<std::vector<Weight>> tree_dist_;
  mutable VertexId sp_cache_q_ = kNoVertex;
  mutable std::vector<std::vector<Weight>> sp_cache_;
};

// Shared desk-scale fixture: a 5-vertex caterpillar with two chords.
// Edge ids: 0..3 tree, 4 = (0,3,2), 5 = (1,4,1).
inline Instance FixtureG2() {
  Instance inst;
  inst.graph = WeightedGraph(5);
  inst.graph.AddEdge(0, 1, 1);
  inst.graph.AddEdge(1, 2, 1);
  inst.graph.AddEdge(2, 3, 1);
  inst.graph.AddEdge(2, 4, 1);
  inst.graph.AddEdge(0, 3, 2);
  inst.graph.AddEdge(1, 4, 1);
  inst.tree_edges = {0, 1, 2, 3};
  inst.root = 0;
  return inst;
}

// Unit-weight 4-cycle with the path tree 0-1-2-3.
inline Instance FixtureC4() {
  Instance inst;
  inst.graph = WeightedGraph(4);
  inst.graph.AddEdge(0, 1, 1);
  inst.graph.AddEdge(1, 2, 1);
  inst.graph.AddEdge(2, 3, 1);
  inst.graph.AddEdge(3, 0, 1);
  inst.tree_edges = {0, 1, 2};
  inst.root = 0;
  return inst;
}

}  // namespace bestswap
