#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bestswap/centroid.hpp"
#include "bestswap/graph.hpp"
#include "bestswap/rational.hpp"
#include "bestswap/swap_dict.hpp"
#include "bestswap/swap_forest.hpp"
#include "bestswap/tree.hpp"

namespace bestswap {

struct EngineOptions {
  bool use_fast_forest = true;
  bool fault_injection = false;  // corrupts one result, for harness self-checks
  // Fires for each failing edge after the dictionary update, before the
  // vertex sub-phases; the engine's per-phase entry points are valid inside.
  std::function<void(VertexId q, const SwapDictionaries::Dict&)> phase_hook;
};

struct EdgeSolution {
  EdgeId best = kNoEdge;     // chosen swap edge
  EdgeId witness = kNoEdge;  // a critical edge of `best`
  Rational objective = Rational::Infinity();
};

struct EngineStats {
  int max_search_depth = 0;       // deepest descent over the decomposition
  double merge_seconds = 0;       // dictionary build/join/update time
  double subphase_seconds = 0;    // per-vertex search time
  std::uint64_t envelope_queries = 0;
  std::uint64_t cmv_queries = 0;
};

// The phase loop: processes tree edges children-first, maintains the swap
// dictionary for the current failing edge, and computes for every vertex
// above the cut its best cut edge, keeping the per-edge minimum. All
// argmin/argmax ties fall to the smaller edge id so results are
// reproducible and match the exhaustive references edge-for-edge.
class Engine {
 public:
  Engine(const Instance& reduced, const RootedTree& tree, const std::vector<char>& tree_mask,
         const EngineOptions& options = {})
      : inst_(&reduced),
        tree_(&tree),
        tree_mask_(&tree_mask),
        options_(options),
        decomp_(tree),
        forests_(reduced.graph, tree, decomp_, tree_mask, options.use_fast_forest),
        dicts_(reduced.graph, tree, decomp_, tree_mask, &counters_) {
    edge_index_.assign(reduced.graph.EdgeCount(), -1);
    for (size_t i = 0; i < reduced.tree_edges.size(); ++i) {
      edge_index_[reduced.tree_edges[i]] = static_cast<int>(i);
    }
  }

  // Results indexed like the instance's tree_edges.
  std::vector<EdgeSolution> SolveAll() {
    using Clock = std::chrono::steady_clock;
    const int n = inst_->graph.VertexCount();
    std::vector<EdgeSolution> results(inst_->tree_edges.size());
    std::vector<SwapDictionaries::DictPtr> pending(n);

    std::vector<VertexId> with_chords;
    for (VertexId v = 0; v < n; ++v) {
      if (forests_.HasAttachments(v)) with_chords.push_back(v);
    }

    const auto& order = tree_->PreOrder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId q = *it;
      if (q == tree_->Root()) continue;
      const auto merge_start = Clock::now();
      std::vector<SwapDictionaries::DictPtr> kids;
      for (VertexId c : tree_->Children(q)) {
        assert(pending[c]);
        kids.push_back(std::move(pending[c]));
      }
      auto dict = dicts_.Merge(q, std::move(kids));
      stats_.merge_seconds += std::chrono::duration<double>(Clock::now() - merge_start).count();

      BeginPhase(q, dict.get());
      if (options_.phase_hook) options_.phase_hook(q, *dict);

      const auto sub_start = Clock::now();
      EdgeSolution best;
      for (VertexId v : with_chords) {
        if (tree_->InSubtree(v, q)) continue;
        const auto found = FindBestCutEdge(v);
        if (!found) continue;
        if (Compare(found->objective, best.objective) < 0 ||
            (Compare(found->objective, best.objective) == 0 && found->best < best.best)) {
          best = *found;
        }
      }
      results[edge_index_[tree_->ParentEdge(q)]] = best;
      stats_.subphase_seconds += std::chrono::duration<double>(Clock::now() - sub_start).count();

      EndPhase();
      pending[q] = std::move(dict);
    }

    if (options_.fault_injection) {
      for (auto& r : results) {
        if (r.best != kNoEdge) {
          r.objective.num += r.objective.den;  // off-by-one stretch value
          break;
        }
      }
    }
    return results;
  }

  // ---- per-phase entry points (valid between BeginPhase/EndPhase, e.g.
  // inside the phase hook) ----

  void BeginPhase(VertexId q, SwapDictionaries::Dict* dict) {
    q_ = q;
    lo_ = tree_->Tin(q);
    hi_ = tree_->Tout(q);
    dict_ = dict;
    forests_.Cut(q);
    critical_memo_.clear();
  }

  void EndPhase() {
    forests_.Link();
    dict_ = nullptr;
  }

  bool Below(VertexId x) const { return tree_->Tin(x) >= lo_ && tree_->Tin(x) <= hi_; }

  // (upper, lower) endpoints of a swap edge for the current phase.
  std::pair<VertexId, VertexId> Oriented(EdgeId id) const {
    const Edge& e = inst_->graph.EdgeAt(id);
    return Below(e.v) ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u);
  }

  Rational Phi(EdgeId f, EdgeId g) const {
    const auto [v, u] = Oriented(f);
    const auto [x, y] = Oriented(g);
    const Weight num = tree_->Distance(x, v) + inst_->graph.EdgeAt(f).w + tree_->Distance(u, y);
    return Rational{num, inst_->graph.EdgeAt(g).w};
  }

  // Best cut edge restricted to the chords at v, with its critical edge and
  // objective; nullopt when v has no swap edge for the current cut.
  std::optional<EdgeSolution> FindBestCutEdge(VertexId v) {
    EdgeSolution best;
    NodeId node = decomp_.RootNode();
    int depth = 0;
    while (node != kNoNode) {
      stats_.max_search_depth = std::max(stats_.max_search_depth, ++depth);
      const auto& nd = decomp_.At(node);
      if (!Below(nd.centroid)) {
        // The cut lives in exactly one child component.
        assert(decomp_.Contains(node, q_));
        node = decomp_.ChildToward(node, q_);
        continue;
      }
      ++stats_.cmv_queries;
      const auto hit = forests_.MinSwapTo(v, nd.centroid);
      if (!hit) break;  // no chord at v reaches below the cut at all
      const EdgeId f = hit->edge;
      const EdgeId g = FindCriticalEdge(f);
      const Rational phi = Phi(f, g);
      if (best.best == kNoEdge || Compare(phi, best.objective) < 0 ||
          (Compare(phi, best.objective) == 0 && f < best.best)) {
        best = EdgeSolution{f, g, phi};
      }
      node = decomp_.CyTree(node, Oriented(g).second);
    }
    if (best.best == kNoEdge) return std::nullopt;
    return best;
  }

  // A critical edge for f over the whole swap set, memoized per phase.
  EdgeId FindCriticalEdge(EdgeId f) {
    const auto memo = critical_memo_.find(f);
    if (memo != critical_memo_.end()) return memo->second;
    const auto [fv, fu] = Oriented(f);
    EdgeId best = kNoEdge;
    Rational best_phi = Rational::NegInfinity();
    auto consider = [&](EdgeId g) {
      if (g == kNoEdge) return;
      const Rational phi = Phi(f, g);
      const int cmp = Compare(phi, best_phi);
      if (best == kNoEdge || cmp > 0 || (cmp == 0 && g < best)) {
        best = g;
        best_phi = phi;
      }
    };
    NodeId node = decomp_.RootNode();
    int depth = 0;
    while (true) {
      stats_.max_search_depth = std::max(stats_.max_search_depth, ++depth);
      const auto& nd = decomp_.At(node);
      if (nd.size == 1) {
        consider(FindCriticalCandidate(f, decomp_.RootNode(), node));
        break;
      }
      const NodeId towards = decomp_.ChildToward(node, fu);
      if (!Below(nd.centroid)) {
        node = towards;
        continue;
      }
      for (NodeId child : nd.children) {
        if (child != towards) consider(FindCriticalCandidate(f, decomp_.RootNode(), child));
      }
      node = towards;
    }
    assert(best != kNoEdge);  // f itself is always a candidate
    critical_memo_.emplace(f, best);
    return best;
  }

  // Critical-edge candidate with one endpoint in psi's group and the other
  // in lambda's; kNoEdge when the pair holds nothing for this cut.
  EdgeId FindCriticalCandidate(EdgeId f, NodeId psi, NodeId lambda) {
    if (!decomp_.IntersectsRange(lambda, lo_, hi_)) return kNoEdge;
    const auto [fv, fu] = Oriented(f);
    const Weight wf = inst_->graph.EdgeAt(f).w;
    EdgeId best = kNoEdge;
    Rational best_phi = Rational::NegInfinity();
    auto consider = [&](std::optional<EdgeId> g) {
      if (!g) return;
      const Rational phi = Phi(f, *g);
      const int cmp = Compare(phi, best_phi);
      if (best == kNoEdge || cmp > 0 || (cmp == 0 && *g < best)) {
        best = *g;
        best_phi = phi;
      }
    };
    NodeId node = psi;
    int depth = 0;
    while (true) {
      stats_.max_search_depth = std::max(stats_.max_search_depth, ++depth);
      const auto& nd = decomp_.At(node);
      if (nd.size == 1) {
        assert(nd.centroid == fv);
        ++stats_.envelope_queries;
        consider(dicts_.Query(*dict_, fv, fu, wf, node, lambda));
        break;
      }
      const NodeId towards = decomp_.ChildToward(node, fv);
      if (Below(nd.centroid)) {
        node = towards;
        continue;
      }
      for (NodeId child : nd.children) {
        if (child == towards) continue;
        ++stats_.envelope_queries;
        consider(dicts_.Query(*dict_, fv, fu, wf, child, lambda));
      }
      node = towards;
    }
    return best;
  }

  const Instance& Inst() const { return *inst_; }
  const RootedTree& Tree() const { return *tree_; }
  const std::vector<char>& TreeMask() const { return *tree_mask_; }
  const CentroidDecomposition& Decomposition() const { return decomp_; }
  const SwapForests& Forests() const { return forests_; }
  SwapForests& MutableForests() { return forests_; }
  const SwapDictionaries& Dictionaries() const { return dicts_; }
  const DictInstrumentation& Counters() const { return counters_; }
  const EngineStats& Stats() const { return stats_; }
  std::int64_t TMax() const { return dicts_.TMax(); }

 private:
  const Instance* inst_;
  const RootedTree* tree_;
  const std::vector<char>* tree_mask_;
  EngineOptions options_;
  CentroidDecomposition decomp_;
  SwapForests forests_;
  DictInstrumentation counters_;
  SwapDictionaries dicts_;
  EngineStats stats_;
  std::vector<int> edge_index_;

  // phase state
  VertexId q_ = kNoVertex;
  int lo_ = 0, hi_ = -1;
  SwapDictionaries::Dict* dict_ = nullptr;
  std::unordered_map<EdgeId, EdgeId> critical_memo_;
};

}  // namespace bestswap
