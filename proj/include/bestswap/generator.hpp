#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bestswap/graph.hpp"
#include "bestswap/tree.hpp"

namespace bestswap {

struct GenConfig {
  int n = 8;
  long long m = 12;
  Weight max_weight = 100;
  std::uint64_t seed = 1;
  bool mst_tree = false;  // replace the random tree by the graph's MST
};

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// splitmix64: tiny, seedable, identical output on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t Below(std::uint64_t bound) { return Next() % bound; }
  long long Range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(Below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

inline std::vector<std::pair<VertexId, VertexId>> PruferTree(int n, Rng& rng) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  if (n == 2) {
    edges.push_back({0, 1});
    return edges;
  }
  std::vector<int> code(n - 2);
  for (auto& c : code) c = static_cast<int>(rng.Below(n));
  std::vector<int> degree(n, 1);
  for (int c : code) ++degree[c];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  for (int c : code) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back({static_cast<VertexId>(leaf), static_cast<VertexId>(c)});
    if (--degree[c] == 1) leaves.insert(c);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
  return edges;
}

}  // namespace detail

// Seeded random 2-edge-connected instance: a uniform random spanning tree,
// chords pairing its leaves in DFS order (which covers every tree edge), and
// uniform random extra chords. Falls back to a Hamiltonian-path tree when
// the chord budget cannot cover the drawn tree's leaves.
inline Instance GenerateInstance(const GenConfig& cfg) {
  const int n = cfg.n;
  const long long m = cfg.m;
  if (n < 3) throw GenError("n must be at least 3");
  if (cfg.max_weight < 1) throw GenError("max weight must be positive");
  if (m < n) throw GenError("infeasible: need m >= n for 2-edge-connectivity");
  const long long complete = static_cast<long long>(n) * (n - 1) / 2;
  if (m > complete) throw GenError("infeasible: m exceeds n*(n-1)/2");

  detail::Rng rng(cfg.seed);
  const long long budget = m - (n - 1);

  auto tree_pairs = detail::PruferTree(n, rng);

  // Leaves in DFS order from vertex 0; pairing l_i with l_{i+ceil(L/2)}
  // makes the tree bridgeless with ceil(L/2) chords.
  auto leaves_of = [&](const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<std::vector<VertexId>> adj(n);
    for (auto [u, v] : pairs) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    std::vector<VertexId> leaves, stack{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      if (adj[v].size() == 1) leaves.push_back(v);
      for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it) {
        if (!seen[*it]) {
          seen[*it] = 1;
          stack.push_back(*it);
        }
      }
    }
    return leaves;
  };

  std::vector<VertexId> leaves = leaves_of(tree_pairs);
  long long cover = (static_cast<long long>(leaves.size()) + 1) / 2;
  if (cover > budget) {
    // Hamiltonian-path tree: two leaves, one covering chord.
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.Below(i + 1)]);
    }
    tree_pairs.clear();
    for (int i = 0; i + 1 < n; ++i) tree_pairs.push_back({perm[i], perm[i + 1]});
    leaves = {perm.front(), perm.back()};
    cover = 1;
  }

  Instance inst;
  inst.graph = WeightedGraph(n);
  std::set<std::pair<VertexId, VertexId>> used;
  auto add_edge = [&](VertexId u, VertexId v) {
    const std::pair<VertexId, VertexId> key{std::min(u, v), std::max(u, v)};
    used.insert(key);
    return inst.graph.AddEdge(u, v, static_cast<Weight>(rng.Range(1, cfg.max_weight)));
  };

  for (auto [u, v] : tree_pairs) inst.tree_edges.push_back(add_edge(u, v));

  const int L = static_cast<int>(leaves.size());
  const int half = (L + 1) / 2;
  std::vector<std::pair<VertexId, VertexId>> cover_pairs;
  for (int i = 0; i + half < L; ++i) cover_pairs.push_back({leaves[i], leaves[i + half]});
  if (L % 2 == 1 && L >= 3) cover_pairs.push_back({leaves[half - 1], leaves[0]});
  if (L == 2) cover_pairs.push_back({leaves[0], leaves[1]});
  for (auto [u, v] : cover_pairs) {
    const std::pair<VertexId, VertexId> key{std::min(u, v), std::max(u, v)};
    if (!used.count(key)) add_edge(u, v);
  }

  // Fill the remaining budget with uniform random fresh chords.
  long long remaining = m - inst.graph.EdgeCount();
  if (remaining < 0) {
    throw GenError("infeasible: chord budget too small to cover the tree");
  }
  const long long free_pairs = complete - inst.graph.EdgeCount();
  if (remaining > free_pairs / 2) {
    std::vector<std::pair<VertexId, VertexId>> missing;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (!used.count({u, v})) missing.push_back({u, v});
      }
    }
    for (size_t i = missing.size(); i > 1; --i) {
      std::swap(missing[i - 1], missing[rng.Below(i)]);
    }
    for (long long i = 0; i < remaining; ++i) add_edge(missing[i].first, missing[i].second);
  } else {
    while (remaining > 0) {
      const VertexId u = static_cast<VertexId>(rng.Below(n));
      const VertexId v = static_cast<VertexId>(rng.Below(n));
      if (u == v || used.count({std::min(u, v), std::max(u, v)})) continue;
      add_edge(u, v);
      --remaining;
    }
  }

  inst.root = static_cast<VertexId>(rng.Below(n));

  if (cfg.mst_tree) {
    // Kruskal by (weight, id); the tree becomes the MST of the same graph.
    std::vector<EdgeId> ids(inst.graph.EdgeCount());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](EdgeId a, EdgeId b) {
      return inst.graph.EdgeAt(a).w < inst.graph.EdgeAt(b).w;
    });
    std::vector<VertexId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    inst.tree_edges.clear();
    for (EdgeId id : ids) {
      const Edge& e = inst.graph.EdgeAt(id);
      const VertexId a = find(e.u), b = find(e.v);
      if (a == b) continue;
      parent[a] = b;
      inst.tree_edges.push_back(id);
    }
  }
  return inst;
}

}  // namespace bestswap
