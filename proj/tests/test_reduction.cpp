#include <catch2/catch_amalgamated.hpp>
#include <limits>
#include <queue>
#include <random>

#include "bestswap/generator.hpp"
#include "bestswap/oracle.hpp"
#include "bestswap/reduction.hpp"

using namespace bestswap;

namespace {

std::vector<Weight> Dijkstra(const WeightedGraph& g, VertexId s) {
  std::vector<Weight> dist(g.VertexCount(), std::numeric_limits<Weight>::max() / 4);
  using Item = std::pair<Weight, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != dist[v]) continue;
    for (EdgeId id : g.Incident(v)) {
      const VertexId to = g.Other(id, v);
      if (d + g.EdgeAt(id).w < dist[to]) {
        dist[to] = d + g.EdgeAt(id).w;
        pq.push({d + g.EdgeAt(id).w, to});
      }
    }
  }
  return dist;
}

Instance StarInstance() {
  // center 0 with tree children 1..4 (weight 3), chords forming a cycle
  Instance inst;
  inst.graph = WeightedGraph(5);
  for (VertexId v = 1; v <= 4; ++v) inst.tree_edges.push_back(inst.graph.AddEdge(0, v, 3));
  inst.graph.AddEdge(1, 2, 1);
  inst.graph.AddEdge(2, 3, 1);
  inst.graph.AddEdge(3, 4, 1);
  inst.graph.AddEdge(4, 1, 1);
  inst.root = 0;
  return inst;
}

}  // namespace

TEST_CASE("a 4-child star gains a zero-weight gadget") {
  const auto vi = Validate(StarInstance());
  const auto red = ReduceToBinary(vi);
  CHECK_FALSE(red.identity);
  const int rn = red.reduced.graph.VertexCount();
  CHECK(rn > 5);

  // every vertex has at most two children in the reduced tree
  for (VertexId v = 0; v < rn; ++v) {
    CHECK(red.tree.Children(v).size() <= 2);
  }
  // distances from the center to the original children survive
  for (VertexId v = 1; v <= 4; ++v) {
    CHECK(red.tree.Distance(0, v) == 3);
  }
  // each original tree edge maps to the edge from v_i's new parent
  for (size_t i = 0; i < vi.instance.tree_edges.size(); ++i) {
    const Edge& orig = vi.instance.graph.EdgeAt(vi.instance.tree_edges[i]);
    const VertexId child = LowerEndpoint(vi.tree, orig);
    const Edge& image = red.reduced.graph.EdgeAt(red.tree_image[i]);
    CHECK(LowerEndpoint(red.tree, image) == child);
    CHECK(red.tree.Parent(child) != 0);  // rerouted through a gadget leaf
    CHECK(image.w == 3);
    CHECK(red.vertex_origin[red.tree.Parent(child)] == kNoVertex);
  }
  // gadget edges have weight zero and no original counterpart
  int zero_edges = 0;
  for (EdgeId id = 0; id < red.reduced.graph.EdgeCount(); ++id) {
    if (red.reduced.graph.EdgeAt(id).w == 0) {
      ++zero_edges;
      CHECK(red.to_original[id] == kNoEdge);
      CHECK(red.tree_mask[id]);
    }
  }
  CHECK(zero_edges == 6);  // gadget tree with 4 leaves: 2 inner edges + 4 leaf edges
}

TEST_CASE("already-binary instances pass through unchanged") {
  const auto vi = Validate(FixtureG2());
  const auto red = ReduceToBinary(vi);
  CHECK(red.identity);
  CHECK(red.reduced.graph.VertexCount() == 5);
  CHECK(red.reduced.graph.EdgeCount() == 6);
  for (size_t i = 0; i < vi.instance.tree_edges.size(); ++i) {
    const Edge& a = vi.instance.graph.EdgeAt(vi.instance.tree_edges[i]);
    const Edge& b = red.reduced.graph.EdgeAt(red.tree_image[i]);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.w == b.w);
  }
  CHECK(red.tree.Children(2).size() == 2);
}

TEST_CASE("reduction preserves graph and tree distances between original vertices") {
  std::mt19937_64 seeds(43);
  for (int iter = 0; iter < 12; ++iter) {
    GenConfig cfg;
    cfg.n = 5 + static_cast<int>(seeds() % 36);
    cfg.m = cfg.n + static_cast<long long>(seeds() % (2 * cfg.n));
    const long long complete = static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
    cfg.m = std::min(cfg.m, complete);
    cfg.seed = seeds();
    const auto vi = Validate(GenerateInstance(cfg));
    const auto red = ReduceToBinary(vi);

    for (VertexId a = 0; a < cfg.n; ++a) {
      const auto orig = Dijkstra(vi.instance.graph, a);
      const auto redd = Dijkstra(red.reduced.graph, a);
      for (VertexId b = 0; b < cfg.n; ++b) {
        REQUIRE(orig[b] == redd[b]);
        REQUIRE(vi.tree.Distance(a, b) == red.tree.Distance(a, b));
      }
    }
    for (VertexId v = 0; v < red.reduced.graph.VertexCount(); ++v) {
      REQUIRE(red.tree.Children(v).size() <= 2);
    }
  }
}

TEST_CASE("reduction keeps non-tree edges and their relative order") {
  const auto vi = Validate(StarInstance());
  const auto red = ReduceToBinary(vi);
  std::vector<EdgeId> orig_nontree;
  for (EdgeId id = 0; id < red.reduced.graph.EdgeCount(); ++id) {
    if (!red.tree_mask[id]) {
      REQUIRE(red.to_original[id] != kNoEdge);
      orig_nontree.push_back(red.to_original[id]);
    }
  }
  CHECK(std::is_sorted(orig_nontree.begin(), orig_nontree.end()));
  CHECK(orig_nontree.size() == 4);
}
