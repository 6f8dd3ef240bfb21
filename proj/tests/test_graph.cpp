#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <sstream>

#include "bestswap/io.hpp"
#include "bestswap/oracle.hpp"
#include "bestswap/validate.hpp"

using namespace bestswap;

TEST_CASE("a unit 4-cycle with its path tree validates") {
  const auto vi = Validate(FixtureC4());
  CHECK(vi.tree.Root() == 0);
  CHECK(vi.instance.tree_edges.size() == 3);
}

TEST_CASE("a path graph is rejected: every edge is a bridge") {
  Instance inst;
  inst.graph = WeightedGraph(3);
  inst.graph.AddEdge(0, 1, 1);
  inst.graph.AddEdge(1, 2, 1);
  inst.tree_edges = {0, 1};
  inst.root = 0;
  try {
    Validate(std::move(inst));
    FAIL("expected a bridge rejection");
  } catch (const ValidationError& e) {
    CHECK(e.issue == ValidationIssue::kHasBridge);
  }
}

TEST_CASE("non-positive weights are rejected") {
  Instance inst = FixtureC4();
  Instance bad;
  bad.graph = WeightedGraph(4);
  bad.graph.AddEdge(0, 1, 1);
  bad.graph.AddEdge(1, 2, 0);
  bad.graph.AddEdge(2, 3, 1);
  bad.graph.AddEdge(3, 0, 1);
  bad.tree_edges = {0, 1, 2};
  bad.root = 0;
  try {
    Validate(std::move(bad));
    FAIL("expected weight rejection");
  } catch (const ValidationError& e) {
    CHECK(e.issue == ValidationIssue::kNonPositiveWeight);
    CHECK(e.edge == 1);
  }
}

TEST_CASE("tree distances on the caterpillar fixture") {
  const auto vi = Validate(FixtureG2());
  CHECK(vi.tree.Distance(0, 3) == 3);
  CHECK(vi.tree.Distance(3, 4) == 2);
  for (VertexId x = 0; x < 5; ++x) CHECK(vi.tree.Distance(x, x) == 0);
}

TEST_CASE("cut sides relative to a failing edge") {
  const auto vi = Validate(FixtureG2());
  // edge (1,2): lower endpoint 2
  CHECK(SideOf(vi.tree, 2, 4) == CutSide::kDown);
  CHECK(SideOf(vi.tree, 2, 0) == CutSide::kUp);
  // edge (0,1): the lower endpoint itself hangs below
  CHECK(SideOf(vi.tree, 1, 1) == CutSide::kDown);
}

TEST_CASE("swap edge predicate") {
  const auto vi = Validate(FixtureG2());
  const auto& g = vi.instance.graph;
  CHECK(IsSwapEdge(vi.tree, 2, g.EdgeAt(4)));        // (0,3) swaps for (1,2)
  CHECK_FALSE(IsSwapEdge(vi.tree, 3, g.EdgeAt(5)));  // (1,4) misses (2,3)
  CHECK_FALSE(IsSwapEdge(vi.tree, 1, g.EdgeAt(5)));  // both ends below (0,1)
}

TEST_CASE("lca distances match explicit parent walks on random trees") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int iter = 0; iter < 10; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 199);
    WeightedGraph g(n);
    std::vector<EdgeId> tree;
    std::vector<VertexId> parent(n, kNoVertex);
    std::vector<Weight> pw(n, 0);
    for (VertexId v = 1; v < n; ++v) {
      parent[v] = static_cast<VertexId>(rng() % v);
      pw[v] = 1 + static_cast<Weight>(rng() % 50);
      tree.push_back(g.AddEdge(parent[v], v, pw[v]));
    }
    const RootedTree rt(g, tree, 0);
    auto walk_dist = [&](VertexId a, VertexId b) {
      Weight d = 0;
      while (a != b) {
        if (rt.Depth(a) < rt.Depth(b)) std::swap(a, b);
        d += pw[a];
        a = parent[a];
      }
      return d;
    };
    for (int k = 0; k < 100; ++k) {
      const VertexId a = static_cast<VertexId>(rng() % n);
      const VertexId b = static_cast<VertexId>(rng() % n);
      REQUIRE(rt.Distance(a, b) == walk_dist(a, b));
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("cut sides partition the vertices into the DFS subtree and the rest") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = 3 + static_cast<int>(rng() % 60);
    WeightedGraph g(n);
    std::vector<EdgeId> tree;
    std::vector<VertexId> parent(n, kNoVertex);
    for (VertexId v = 1; v < n; ++v) {
      parent[v] = static_cast<VertexId>(rng() % v);
      tree.push_back(g.AddEdge(parent[v], v, 1 + static_cast<Weight>(rng() % 9)));
    }
    const RootedTree rt(g, tree, 0);
    for (VertexId q = 1; q < n; ++q) {
      int down = 0;
      for (VertexId x = 0; x < n; ++x) {
        const bool below = SideOf(rt, q, x) == CutSide::kDown;
        // reference: walk parents
        bool walk_below = false;
        for (VertexId a = x; a != kNoVertex; a = parent[a]) {
          if (a == q) {
            walk_below = true;
            break;
          }
        }
        REQUIRE(below == walk_below);
        down += below;
      }
      REQUIRE(down >= 1);
      REQUIRE(down <= n - 1);
    }
  }
}

TEST_CASE("instance files round-trip") {
  const Instance inst = FixtureG2();
  const std::string text = WriteInstance(inst);
  const Instance back = ParseInstance(text);
  CHECK(back.graph.VertexCount() == inst.graph.VertexCount());
  CHECK(back.graph.EdgeCount() == inst.graph.EdgeCount());
  CHECK(back.tree_edges == inst.tree_edges);
  CHECK(back.root == inst.root);
  CHECK(WriteInstance(back) == text);
}

TEST_CASE("parse errors carry line numbers") {
  const std::string bad =
      "p 3 3\n"
      "e 0 1 1\n"
      "e 1 2 oops\n"
      "e 2 0 1\n"
      "t 0 1\nt 1 2\nr 0\n";
  try {
    ParseInstance(bad);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("tree records must reference existing edges") {
  const std::string bad =
      "p 3 3\n"
      "e 0 1 1\ne 1 2 1\ne 2 0 1\n"
      "t 0 1\nt 0 2\nt 1 2\nr 0\n";  // too many tree records
  CHECK_THROWS_AS(ParseInstance(bad), ParseError);

  const std::string missing =
      "p 3 3\n"
      "e 0 1 1\ne 1 2 1\ne 2 0 1\n"
      "t 0 1\nt 1 0\nr 0\n";  // duplicate pair references
  CHECK_THROWS_AS(Validate(ParseInstance(missing)), ValidationError);
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# caterpillar\n"
      "p 5 6\n\n"
      "e 0 1 1\ne 1 2 1\ne 2 3 1\ne 2 4 1\n"
      "e 0 3 2  # chord\n"
      "e 1 4 1\n"
      "t 0 1\nt 1 2\nt 2 3\nt 2 4\nr 0\n";
  const Instance inst = ParseInstance(text);
  CHECK(inst.graph.EdgeCount() == 6);
  CHECK_NOTHROW(Validate(inst));
}
