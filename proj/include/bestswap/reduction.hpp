#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "bestswap/graph.hpp"
#include "bestswap/validate.hpp"

namespace bestswap {

// Rewrites the instance so that every tree vertex has at most two children,
// by splicing a zero-weight binary gadget between each high-degree vertex
// and its children. Non-tree edges are untouched; each rerouted tree edge
// (u, v_i) becomes (x_i, v_i) with the original weight, where x_i is a
// gadget leaf, so swap sets and all distances between original vertices are
// preserved.
struct ReductionResult {
  Instance reduced;
  RootedTree tree;                    // rooted tree of the reduced instance
  std::vector<char> tree_mask;        // per reduced edge id
  std::vector<EdgeId> to_original;    // reduced edge id -> original id, kNoEdge for gadget edges
  std::vector<EdgeId> tree_image;     // index over original tree_edges -> reduced edge id
  std::vector<VertexId> vertex_origin;  // reduced vertex -> original vertex, kNoVertex for gadget
  bool identity = false;
};

inline ReductionResult ReduceToBinary(const ValidatedInstance& vi) {
  const Instance& inst = vi.instance;
  const RootedTree& tree = vi.tree;
  const int n = inst.graph.VertexCount();

  bool needs_work = false;
  for (VertexId v = 0; v < n && !needs_work; ++v) {
    needs_work = tree.Children(v).size() > 2;
  }

  ReductionResult out;
  out.vertex_origin.resize(n);
  for (VertexId v = 0; v < n; ++v) out.vertex_origin[v] = v;

  WeightedGraph g(n);
  std::vector<EdgeId> new_tree_edges;
  out.tree_image.assign(inst.tree_edges.size(), kNoEdge);

  // Index of each original tree edge within inst.tree_edges.
  std::vector<int> tree_pos(inst.graph.EdgeCount(), -1);
  for (size_t i = 0; i < inst.tree_edges.size(); ++i) tree_pos[inst.tree_edges[i]] = static_cast<int>(i);

  // Attachment point for each original tree edge: either kept as-is or
  // rerouted through a gadget leaf computed below.
  std::vector<VertexId> reroute_leaf(inst.graph.EdgeCount(), kNoVertex);

  if (needs_work) {
    for (VertexId u = 0; u < n; ++u) {
      const auto& kids = tree.Children(u);
      if (kids.size() <= 2) continue;
      // Balanced binary gadget rooted at u with one leaf per child; all
      // internal edges weigh 0.
      struct Range {
        VertexId attach;
        int lo, hi;  // child index range [lo, hi)
      };
      std::vector<Range> todo{{u, 0, static_cast<int>(kids.size())}};
      while (!todo.empty()) {
        auto [attach, lo, hi] = todo.back();
        todo.pop_back();
        if (hi - lo == 1) {
          const VertexId leaf = g.AddVertex();
          out.vertex_origin.push_back(kNoVertex);
          const EdgeId ge = g.AddEdge(attach, leaf, 0);
          out.to_original.resize(ge + 1, kNoEdge);
          new_tree_edges.push_back(ge);
          reroute_leaf[tree.ParentEdge(kids[lo])] = leaf;
          continue;
        }
        const int mid = (lo + hi) / 2;
        for (auto [l, h] : {std::pair{lo, mid}, std::pair{mid, hi}}) {
          if (h - l == 1) {
            todo.push_back({attach, l, h});
          } else {
            const VertexId inner = g.AddVertex();
            out.vertex_origin.push_back(kNoVertex);
            const EdgeId ge = g.AddEdge(attach, inner, 0);
            out.to_original.resize(ge + 1, kNoEdge);
            new_tree_edges.push_back(ge);
            todo.push_back({inner, l, h});
          }
        }
      }
    }
  }

  // Copy original edges in id order; rerouted tree edges attach at their
  // gadget leaf instead of the original parent.
  for (EdgeId id = 0; id < inst.graph.EdgeCount(); ++id) {
    const Edge& e = inst.graph.EdgeAt(id);
    EdgeId new_id;
    if (tree_pos[id] >= 0 && reroute_leaf[id] != kNoVertex) {
      const VertexId child = LowerEndpoint(tree, e);
      new_id = g.AddEdge(reroute_leaf[id], child, e.w);
    } else {
      new_id = g.AddEdge(e.u, e.v, e.w);
    }
    out.to_original.resize(std::max<size_t>(out.to_original.size(), new_id + 1), kNoEdge);
    out.to_original[new_id] = id;
    if (tree_pos[id] >= 0) {
      new_tree_edges.push_back(new_id);
      out.tree_image[tree_pos[id]] = new_id;
    }
  }

  out.reduced.graph = std::move(g);
  out.reduced.tree_edges = std::move(new_tree_edges);
  out.reduced.root = inst.root;
  out.identity = !needs_work;
  out.tree_mask.assign(out.reduced.graph.EdgeCount(), 0);
  for (EdgeId id : out.reduced.tree_edges) out.tree_mask[id] = 1;
  out.tree = RootedTree(out.reduced.graph, out.reduced.tree_edges, out.reduced.root);

  // Map original non-tree ids 1:1 (their endpoints were never moved).
  return out;
}

}  // namespace bestswap
