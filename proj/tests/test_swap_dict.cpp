#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bestswap/generator.hpp"
#include "bestswap/oracle.hpp"
#include "bestswap/pipeline.hpp"
#include "bestswap/swap_dict.hpp"

using namespace bestswap;

namespace {

// Drives the dictionaries bottom-up exactly like the solver's phase loop.
struct DictDriver {
  const ValidatedInstance& vi;
  CentroidDecomposition cd;
  DictInstrumentation counters;
  SwapDictionaries dicts;
  std::vector<SwapDictionaries::DictPtr> pending;
  std::vector<std::uint64_t> subtree_inserts;  // per vertex: inserts in its hanging dicts

  explicit DictDriver(const ValidatedInstance& v)
      : vi(v),
        cd(v.tree),
        dicts(v.instance.graph, v.tree, cd, v.tree_mask, &counters),
        pending(v.instance.graph.VertexCount()),
        subtree_inserts(v.instance.graph.VertexCount(), 0) {}

  template <typename Check>
  void Run(Check&& check) {
    const auto& order = vi.tree.PreOrder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId q = *it;
      if (q == vi.tree.Root()) continue;
      std::vector<SwapDictionaries::DictPtr> kids;
      for (VertexId c : vi.tree.Children(q)) {
        kids.push_back(std::move(pending[c]));
        subtree_inserts[q] += subtree_inserts[c];
      }
      const std::uint64_t before = counters.total_inserts;
      pending[q] = dicts.Merge(q, std::move(kids));
      subtree_inserts[q] += counters.total_inserts - before;
      check(q, *pending[q], subtree_inserts[q]);
    }
  }
};

}  // namespace

TEST_CASE("dictionary contents trace the caterpillar fixture") {
  const auto vi = Validate(FixtureG2());
  const CentroidDecomposition cd(vi.tree);
  const NodeId root = cd.RootNode();
  const NodeId n2 = cd.At(root).children[0];
  const NodeId pair01 = cd.At(root).children[1];
  const NodeId n3 = cd.At(root).children[2];
  const NodeId n4 = cd.At(root).children[3];
  const NodeId n0 = cd.At(pair01).children[0];
  const NodeId n1 = cd.At(pair01).children[1];
  const std::uint64_t chord03 = MakePayload(4, false);
  const std::uint64_t chord14 = MakePayload(5, false);

  DictInstrumentation counters;
  SwapDictionaries dicts(vi.instance.graph, vi.tree, cd, vi.tree_mask, &counters);

  // leaf edge (2,3)
  auto q23 = dicts.BuildLeaf(3);
  CHECK(q23->virtual_size == 2);
  {
    const auto snap = SwapDictionaries::SnapshotOf(*q23);
    REQUIRE(snap.size() == 2);
    const auto& a = snap.at({pair01, n3});
    REQUIRE(a.size() == 1);
    CHECK(a[0] == std::make_tuple(chord03, Weight{2}, Weight{2}));  // A = d(0,2), den = 2
    const auto& b = snap.at({n0, n3});
    CHECK(b[0] == std::make_tuple(chord03, Weight{0}, Weight{2}));
  }

  // leaf edge (2,4)
  auto q24 = dicts.BuildLeaf(4);
  CHECK(q24->virtual_size == 2);
  {
    const auto snap = SwapDictionaries::SnapshotOf(*q24);
    REQUIRE(snap.size() == 2);
    CHECK(snap.at({pair01, n4})[0] == std::make_tuple(chord14, Weight{1}, Weight{1}));
    CHECK(snap.at({n1, n4})[0] == std::make_tuple(chord14, Weight{0}, Weight{1}));
  }

  // edge (1,2): join keeps the first input on the virtual-size tie
  std::vector<SwapDictionaries::DictPtr> kids;
  kids.push_back(std::move(q23));
  kids.push_back(std::move(q24));
  auto q12 = dicts.Merge(2, std::move(kids));
  CHECK(q12->virtual_size == 4);
  {
    const auto snap = SwapDictionaries::SnapshotOf(*q12);
    REQUIRE(snap.size() == 4);
    CHECK(snap.count({pair01, n3}));
    CHECK(snap.count({n0, n3}));
    CHECK(snap.count({pair01, n4}));
    CHECK(snap.count({n1, n4}));
  }

  // queries for the failing edge (1,2), candidate f = (1,4)
  CHECK(dicts.Query(*q12, 1, 4, 1, n0, n3) == EdgeId{4});
  CHECK(dicts.Query(*q12, 1, 4, 1, n1, n4) == EdgeId{5});
  CHECK_FALSE(dicts.Query(*q12, 1, 4, 1, pair01, n2));

  // edge (0,1): the chord (1,4) meets its ancestor span and disappears
  kids.clear();
  kids.push_back(std::move(q12));
  auto q01 = dicts.Merge(1, std::move(kids));
  CHECK(q01->virtual_size == 4);  // deletions never shrink the virtual size
  {
    const auto snap = SwapDictionaries::SnapshotOf(*q01);
    REQUIRE(snap.size() == 2);
    CHECK(snap.count({pair01, n3}));
    CHECK(snap.count({n0, n3}));
  }

  CHECK(counters.total_inserts == 4);
  CHECK(counters.distinct_functions == 4);
  CHECK(counters.max_line_moves == 1);
  CHECK(counters.orientation_inserted[chord03]);
  CHECK(counters.orientation_inserted[chord14]);
  CHECK_FALSE(counters.orientation_inserted[MakePayload(4, true)]);
  CHECK_FALSE(counters.orientation_inserted[MakePayload(5, true)]);
}

TEST_CASE("an empty leaf yields an empty dictionary") {
  // path tree 0-1-2-3 with one chord (0,2): the leaf edge (2,3) has no chord
  Instance inst;
  inst.graph = WeightedGraph(4);
  inst.tree_edges.push_back(inst.graph.AddEdge(0, 1, 1));
  inst.tree_edges.push_back(inst.graph.AddEdge(1, 2, 1));
  inst.tree_edges.push_back(inst.graph.AddEdge(2, 3, 1));
  inst.graph.AddEdge(0, 2, 1);
  inst.root = 0;
  // not 2-edge-connected; the dictionary layer does not care
  const RootedTree tree(inst.graph, inst.tree_edges, 0);
  std::vector<char> mask(4, 1);
  mask[3] = 0;
  const CentroidDecomposition cd(tree);
  SwapDictionaries dicts(inst.graph, tree, cd, mask, nullptr);
  auto dict = dicts.BuildLeaf(3);
  CHECK(dict->virtual_size == 0);
  CHECK(dict->table.empty());

  // merging it upward still works: edge (1,2) inserts the chord at q=2
  std::vector<SwapDictionaries::DictPtr> kids;
  kids.push_back(std::move(dict));
  auto q12 = dicts.Merge(2, std::move(kids));
  CHECK(q12->virtual_size == 2);  // chord (0,2): two upper groups x one lower
}

TEST_CASE("dictionary contents match the from-scratch enumeration everywhere") {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 30; ++iter) {
    GenConfig cfg;
    cfg.n = 4 + static_cast<int>(rng() % 37);
    const long long complete = static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
    cfg.m = std::min<long long>(complete, cfg.n + static_cast<long long>(rng() % (2 * cfg.n)));
    cfg.seed = rng();
    cfg.max_weight = 1 + static_cast<Weight>(rng() % 40);
    const auto vi = Validate(GenerateInstance(cfg));

    DictDriver driver(vi);
    driver.Run([&](VertexId q, const SwapDictionaries::Dict& dict, std::uint64_t subtree) {
      const auto got = SwapDictionaries::SnapshotOf(dict);
      const auto want = SwapDictionaries::EnumerateContent(vi.instance.graph, vi.tree, driver.cd,
                                                           vi.tree_mask, q);
      REQUIRE(got == want);
      REQUIRE(dict.virtual_size == subtree);  // the virtual size is the subtree insert ledger
    });
  }
}

TEST_CASE("instrumentation bounds hold on random instances") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 10; ++iter) {
    GenConfig cfg;
    cfg.n = 6 + static_cast<int>(rng() % 30);
    const long long complete = static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
    cfg.m = std::min<long long>(complete, cfg.n + static_cast<long long>(rng() % (3 * cfg.n)));
    cfg.seed = rng();
    const auto vi = Validate(GenerateInstance(cfg));

    DictDriver driver(vi);
    std::uint64_t max_nu = 0;
    driver.Run([&](VertexId, const SwapDictionaries::Dict& dict, std::uint64_t) {
      max_nu = std::max(max_nu, dict.virtual_size);
    });

    const auto& c = driver.counters;
    const int h = driver.cd.Height();
    const int nontree = vi.instance.graph.EdgeCount() - (cfg.n - 1);
    CHECK(c.distinct_functions <= 2ull * nontree * h * h);
    const std::uint32_t per_fn = MaxInsertsPerFunction(vi.instance.graph, driver.cd, vi.tree_mask,
                                                       c.orientation_inserted);
    CHECK(per_fn <= 2);
    if (max_nu > 1) {
      const auto bound = static_cast<std::uint32_t>(std::bit_width(max_nu - 1));
      CHECK(c.max_line_moves <= bound);
    } else {
      CHECK(c.max_line_moves == 0);
    }
  }
}
