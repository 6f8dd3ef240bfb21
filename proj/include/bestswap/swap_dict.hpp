#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "bestswap/centroid.hpp"
#include "bestswap/envelope.hpp"
#include "bestswap/graph.hpp"
#include "bestswap/tree.hpp"

namespace bestswap {

// Payload of an oriented swap-edge function: edge id plus which stored
// endpoint is on the upper (root) side of the failing cut.
inline std::uint64_t MakePayload(EdgeId g, bool upper_is_v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 1) | (upper_is_v ? 1u : 0u);
}
inline EdgeId PayloadEdge(std::uint64_t payload) { return static_cast<EdgeId>(payload >> 1); }

struct MissingEnvelopeError : std::logic_error {
  MissingEnvelopeError() : std::logic_error("dictionary: expected envelope is missing") {}
};

struct DictInstrumentation {
  std::uint64_t total_inserts = 0;
  std::uint64_t total_moves = 0;
  std::uint64_t distinct_functions = 0;  // keyed oriented copies ever inserted
  std::uint32_t max_line_moves = 0;
  std::uint64_t max_virtual_size = 0;
  std::uint64_t live_lines = 0;
  std::uint64_t peak_live_lines = 0;
  std::vector<char> orientation_inserted;  // indexed by payload

  void Reset(int edge_count) {
    total_inserts = total_moves = distinct_functions = 0;
    max_line_moves = 0;
    max_virtual_size = 0;
    live_lines = peak_live_lines = 0;
    orientation_inserted.assign(2 * static_cast<size_t>(edge_count), 0);
  }

  void OnLineAdded() {
    ++live_lines;
    peak_live_lines = std::max(peak_live_lines, live_lines);
  }
  void OnLineRemoved() { --live_lines; }
};

// Sorted view of a dictionary for audits: key pair -> (payload, A, den)
// triples, ascending.
using DictSnapshot =
    std::map<std::pair<NodeId, NodeId>, std::vector<std::tuple<std::uint64_t, std::int64_t, std::int64_t>>>;

// Dictionaries of upper envelopes keyed by decomposition-node pairs, one per
// processed tree edge, maintained bottom-up: the dictionary for the edge
// above q is built by draining the children's dictionaries into the one with
// the largest virtual size (small-to-large), then deleting the functions of
// chords whose endpoints' lowest common ancestor is q and inserting the
// functions of chords that attach at q itself.
class SwapDictionaries {
 public:
  struct Dict {
    std::unordered_map<std::uint64_t, UpperEnvelope> table;
    std::uint64_t virtual_size = 0;
  };
  using DictPtr = std::unique_ptr<Dict>;

  SwapDictionaries(const WeightedGraph& graph, const RootedTree& tree,
                   const CentroidDecomposition& decomp, const std::vector<char>& tree_mask,
                   DictInstrumentation* counters)
      : graph_(&graph), tree_(&tree), decomp_(&decomp), tree_mask_(&tree_mask), counters_(counters) {
    Weight total = 0, max_w = 0;
    for (EdgeId id = 0; id < graph.EdgeCount(); ++id) {
      const Edge& e = graph.EdgeAt(id);
      if (tree_mask[id]) total += e.w;
      max_w = std::max(max_w, e.w);
    }
    t_max_ = 2 * total + max_w;
    lca_bucket_.assign(graph.VertexCount(), {});
    for (EdgeId id = 0; id < graph.EdgeCount(); ++id) {
      if (tree_mask[id]) continue;
      const Edge& e = graph.EdgeAt(id);
      lca_bucket_[tree.Lca(e.u, e.v)].push_back(id);
    }
    if (counters_) counters_->Reset(graph.EdgeCount());
  }

  std::int64_t TMax() const { return t_max_; }

  // Dictionary for the tree edge above leaf q.
  DictPtr BuildLeaf(VertexId q) {
    assert(tree_->Children(q).empty());
    return Merge(q, {});
  }

  // Join the children's dictionaries and apply the update step for the tree
  // edge above q. Consumes the inputs.
  DictPtr Merge(VertexId q, std::vector<DictPtr> kids) {
    DictPtr base;
    if (kids.empty()) {
      base = std::make_unique<Dict>();
    } else {
      size_t keep = 0;
      for (size_t i = 1; i < kids.size(); ++i) {
        if (kids[i]->virtual_size > kids[keep]->virtual_size) keep = i;
      }
      base = std::move(kids[keep]);
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i == keep) continue;
        MoveInto(*base, *kids[i]);
        base->virtual_size += kids[i]->virtual_size;
      }
    }

    // Deletions: both orientations of every chord whose endpoints meet at q.
    // An orientation whose lower endpoint is q itself was never created.
    for (EdgeId g : lca_bucket_[q]) {
      const Edge& e = graph_->EdgeAt(g);
      if (e.v != q) EraseFunction(*base, g, e.u, e.v);
      if (e.u != q) EraseFunction(*base, g, e.v, e.u);
    }
    // Insertions: chords attached at q whose other endpoint is above the cut.
    for (EdgeId g : graph_->Incident(q)) {
      if ((*tree_mask_)[g]) continue;
      const VertexId other = graph_->Other(g, q);
      if (!tree_->InSubtree(other, q)) InsertFunction(*base, g, other, q);
    }
    if (counters_) {
      counters_->max_virtual_size = std::max(counters_->max_virtual_size, base->virtual_size);
    }
    return base;
  }

  // Envelope query for the key (psi, lambda) at t = d(b, v) + w(f) + d(u, c)
  // where b and c anchor the two groups; nullopt when the key holds nothing.
  std::optional<EdgeId> Query(Dict& dict, VertexId v, VertexId u, Weight wf, NodeId psi,
                              NodeId lambda) const {
    const auto it = dict.table.find(Pack(psi, lambda));
    if (it == dict.table.end()) return std::nullopt;
    const VertexId b = decomp_->AnchorOf(psi);
    const VertexId c = decomp_->AnchorOf(lambda);
    const std::int64_t t = tree_->Distance(b, v) + wf + tree_->Distance(u, c);
    const auto line = it->second.MaxAt(t);
    if (!line) return std::nullopt;
    return PayloadEdge(line->payload);
  }

  static DictSnapshot SnapshotOf(const Dict& dict) {
    DictSnapshot snap;
    for (const auto& [key, env] : dict.table) {
      if (env.Empty()) continue;
      auto& lines = snap[Unpack(key)];
      env.ForEachLive([&](const EnvelopeLine& line, std::uint32_t) {
        lines.emplace_back(line.payload, line.intercept, line.den);
      });
      std::sort(lines.begin(), lines.end());
    }
    return snap;
  }

  // From-scratch reference content for the tree edge below-cut q: direct
  // enumeration of the swap set and of all non-root node pairs.
  static DictSnapshot EnumerateContent(const WeightedGraph& graph, const RootedTree& tree,
                                       const CentroidDecomposition& decomp,
                                       const std::vector<char>& tree_mask, VertexId q) {
    DictSnapshot snap;
    for (EdgeId id = 0; id < graph.EdgeCount(); ++id) {
      if (tree_mask[id]) continue;
      const Edge& e = graph.EdgeAt(id);
      if (!IsSwapEdge(tree, q, e)) continue;
      const bool v_down = tree.InSubtree(e.v, q);
      const VertexId upper = v_down ? e.u : e.v;
      const VertexId lower = v_down ? e.v : e.u;
      const std::uint64_t payload = MakePayload(id, upper == e.v);
      const auto& cu = decomp.Chain(upper);
      const auto& cl = decomp.Chain(lower);
      for (size_t i = 1; i < cu.size(); ++i) {
        for (size_t j = 1; j < cl.size(); ++j) {
          const Weight a = tree.Distance(upper, decomp.AnchorOf(cu[i])) +
                           tree.Distance(decomp.AnchorOf(cl[j]), lower);
          snap[{cu[i], cl[j]}].emplace_back(payload, a, e.w);
        }
      }
    }
    for (auto& [key, lines] : snap) std::sort(lines.begin(), lines.end());
    return snap;
  }

 private:
  static std::uint64_t Pack(NodeId psi, NodeId lambda) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(psi)) << 32) |
           static_cast<std::uint32_t>(lambda);
  }
  static std::pair<NodeId, NodeId> Unpack(std::uint64_t key) {
    return {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu)};
  }

  void InsertFunction(Dict& dict, EdgeId g, VertexId upper, VertexId lower) {
    const Edge& e = graph_->EdgeAt(g);
    const std::uint64_t payload = MakePayload(g, upper == e.v);
    if (counters_) {
      assert(!counters_->orientation_inserted[payload]);
      counters_->orientation_inserted[payload] = 1;
    }
    const auto& cu = decomp_->Chain(upper);
    const auto& cl = decomp_->Chain(lower);
    for (size_t i = 1; i < cu.size(); ++i) {
      const Weight du = decomp_->AnchorDistance(cu[i], upper);
      for (size_t j = 1; j < cl.size(); ++j) {
        const Weight a = du + decomp_->AnchorDistance(cl[j], lower);
        auto [it, fresh] = dict.table.try_emplace(Pack(cu[i], cl[j]), t_max_);
        it->second.Insert(EnvelopeLine{a, e.w, payload});
        ++dict.virtual_size;
        if (counters_) {
          ++counters_->total_inserts;
          ++counters_->distinct_functions;
          counters_->OnLineAdded();
        }
      }
    }
  }

  void EraseFunction(Dict& dict, EdgeId g, VertexId upper, VertexId lower) {
    const Edge& e = graph_->EdgeAt(g);
    const std::uint64_t payload = MakePayload(g, upper == e.v);
    const auto& cu = decomp_->Chain(upper);
    const auto& cl = decomp_->Chain(lower);
    for (size_t i = 1; i < cu.size(); ++i) {
      for (size_t j = 1; j < cl.size(); ++j) {
        const auto it = dict.table.find(Pack(cu[i], cl[j]));
        if (it == dict.table.end()) throw MissingEnvelopeError();
        it->second.Erase(payload);
        if (counters_) counters_->OnLineRemoved();
        if (it->second.Empty()) dict.table.erase(it);
      }
    }
  }

  void MoveInto(Dict& dst, Dict& src) {
    for (auto& [key, env] : src.table) {
      auto [it, fresh] = dst.table.try_emplace(key, t_max_);
      UpperEnvelope& target = it->second;
      env.ForEachLive([&](const EnvelopeLine& line, std::uint32_t moves) {
        target.Insert(line, moves + 1);
        if (counters_) {
          ++counters_->total_moves;
          counters_->max_line_moves = std::max(counters_->max_line_moves, moves + 1);
        }
      });
    }
    src.table.clear();
  }

  const WeightedGraph* graph_;
  const RootedTree* tree_;
  const CentroidDecomposition* decomp_;
  const std::vector<char>* tree_mask_;
  DictInstrumentation* counters_;
  std::int64_t t_max_ = 0;
  std::vector<std::vector<EdgeId>> lca_bucket_;
};

}  // namespace bestswap
