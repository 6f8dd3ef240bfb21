#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bestswap/engine.hpp"
#include "bestswap/oracle.hpp"
#include "bestswap/reduction.hpp"
#include "bestswap/validate.hpp"

namespace bestswap {

struct CounterReport {
  int reduced_n = 0;
  int reduced_m = 0;
  int nontree_count = 0;
  int decomp_height = 0;
  int max_search_depth = 0;
  std::uint64_t total_inserts = 0;
  std::uint64_t total_moves = 0;
  std::uint64_t distinct_functions = 0;
  std::uint64_t function_bound = 0;  // 2 * nontree * (floor(log2 n) + 1)^2
  std::uint32_t max_inserts_per_function = 0;
  std::uint32_t max_line_moves = 0;
  std::uint32_t moves_bound = 0;  // ceil(log2(max virtual size))
  std::uint64_t max_virtual_size = 0;
  std::uint64_t peak_live_lines = 0;
  std::uint64_t envelope_queries = 0;
  std::uint64_t cmv_queries = 0;
  double merge_seconds = 0;
  double subphase_seconds = 0;

  std::string ToText() const {
    std::string s;
    auto kv = [&s](const std::string& k, auto v) { s += k + "=" + std::to_string(v) + "\n"; };
    kv("reduced_n", reduced_n);
    kv("reduced_m", reduced_m);
    kv("nontree_count", nontree_count);
    kv("decomp_height", decomp_height);
    kv("max_search_depth", max_search_depth);
    kv("total_inserts", total_inserts);
    kv("total_moves", total_moves);
    kv("distinct_functions", distinct_functions);
    kv("function_bound", function_bound);
    kv("max_inserts_per_function", max_inserts_per_function);
    kv("max_line_moves", max_line_moves);
    kv("moves_bound", moves_bound);
    kv("max_virtual_size", max_virtual_size);
    kv("peak_live_lines", peak_live_lines);
    kv("envelope_queries", envelope_queries);
    kv("cmv_queries", cmv_queries);
    return s;
  }
};

struct TreeEdgeReport {
  EdgeId tree_edge = kNoEdge;  // original edge id
  EdgeId best_swap = kNoEdge;  // original edge id, kNoEdge when no swap exists
  Rational objective = Rational::Infinity();
};

struct SolveOptions {
  bool use_fast_forest = true;
  bool fault_injection = false;
  // Audit hook on the reduced instance, fired per failing edge post-update:
  // (lower endpoint, dictionary, engine). Used by content audits and tests.
  std::function<void(VertexId, const SwapDictionaries::Dict&, Engine&)> phase_hook;
};

struct SolveReport {
  std::vector<TreeEdgeReport> rows;  // aligned with the instance's tree_edges
  CounterReport counters;
  bool reduced = false;
};

// Max inserts any single (edge, anchor-pair) function contributed, derived
// from which orientations were actually inserted: a second insert of the
// same anchors can only come from the opposite orientation.
inline std::uint32_t MaxInsertsPerFunction(const WeightedGraph& graph,
                                           const CentroidDecomposition& decomp,
                                           const std::vector<char>& tree_mask,
                                           const std::vector<char>& orientation_inserted) {
  std::uint32_t worst = 0;
  for (EdgeId id = 0; id < graph.EdgeCount(); ++id) {
    if (tree_mask[id]) continue;
    const Edge& e = graph.EdgeAt(id);
    const bool fwd = orientation_inserted[MakePayload(id, /*upper_is_v=*/false)];
    const bool rev = orientation_inserted[MakePayload(id, /*upper_is_v=*/true)];
    if (!fwd && !rev) continue;
    if (!(fwd && rev)) {
      worst = std::max<std::uint32_t>(worst, 1);
      continue;
    }
    auto anchors = [&](VertexId v) {
      std::set<VertexId> out;
      const auto& chain = decomp.Chain(v);
      for (size_t i = 1; i < chain.size(); ++i) out.insert(decomp.AnchorOf(chain[i]));
      return out;
    };
    const auto bu = anchors(e.u), bv = anchors(e.v);
    std::vector<VertexId> common;
    std::set_intersection(bu.begin(), bu.end(), bv.begin(), bv.end(), std::back_inserter(common));
    worst = std::max<std::uint32_t>(worst, common.empty() ? 1 : 2);
  }
  return worst;
}

inline SolveReport Solve(const ValidatedInstance& vi, const SolveOptions& options = {}) {
  SolveReport report;
  const ReductionResult red = ReduceToBinary(vi);
  report.reduced = !red.identity;

  EngineOptions eopt;
  eopt.use_fast_forest = options.use_fast_forest;
  eopt.fault_injection = options.fault_injection;
  Engine* engine_ptr = nullptr;
  if (options.phase_hook) {
    auto user = options.phase_hook;
    eopt.phase_hook = [&engine_ptr, user](VertexId q, const SwapDictionaries::Dict& dict) {
      user(q, dict, *engine_ptr);
    };
  }
  Engine engine(red.reduced, red.tree, red.tree_mask, eopt);
  engine_ptr = &engine;

  const auto solutions = engine.SolveAll();

  // Map the reduced results back to original ids, skipping gadget edges.
  std::vector<int> reduced_pos(red.reduced.graph.EdgeCount(), -1);
  for (size_t i = 0; i < red.reduced.tree_edges.size(); ++i) {
    reduced_pos[red.reduced.tree_edges[i]] = static_cast<int>(i);
  }
  report.rows.resize(vi.instance.tree_edges.size());
  for (size_t i = 0; i < vi.instance.tree_edges.size(); ++i) {
    const EdgeId reduced_edge = red.tree_image[i];
    const EdgeSolution& sol = solutions[reduced_pos[reduced_edge]];
    TreeEdgeReport row;
    row.tree_edge = vi.instance.tree_edges[i];
    row.best_swap = sol.best == kNoEdge ? kNoEdge : red.to_original[sol.best];
    row.objective = sol.objective.Reduced();
    report.rows[i] = row;
  }

  // Counters.
  const auto& c = engine.Counters();
  CounterReport& out = report.counters;
  out.reduced_n = red.reduced.graph.VertexCount();
  out.reduced_m = red.reduced.graph.EdgeCount();
  out.nontree_count = out.reduced_m - static_cast<int>(red.reduced.tree_edges.size());
  out.decomp_height = engine.Decomposition().Height();
  out.max_search_depth = engine.Stats().max_search_depth;
  out.total_inserts = c.total_inserts;
  out.total_moves = c.total_moves;
  out.distinct_functions = c.distinct_functions;
  const std::uint64_t h = std::bit_width(static_cast<std::uint64_t>(out.reduced_n));
  out.function_bound = 2ull * out.nontree_count * h * h;
  out.max_inserts_per_function = MaxInsertsPerFunction(red.reduced.graph, engine.Decomposition(),
                                                       red.tree_mask, c.orientation_inserted);
  out.max_line_moves = c.max_line_moves;
  out.moves_bound = c.max_virtual_size <= 1
                        ? 0
                        : static_cast<std::uint32_t>(std::bit_width(c.max_virtual_size - 1));
  out.max_virtual_size = c.max_virtual_size;
  out.peak_live_lines = c.peak_live_lines;
  out.envelope_queries = engine.Stats().envelope_queries;
  out.cmv_queries = engine.Stats().cmv_queries;
  out.merge_seconds = engine.Stats().merge_seconds;
  out.subphase_seconds = engine.Stats().subphase_seconds;
  return report;
}

}  // namespace bestswap
