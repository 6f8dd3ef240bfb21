#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bestswap/flat_map.hpp"
#include "bestswap/rational.hpp"

namespace bestswap {

// A line of the family t -> (t + intercept) / den over the integer domain
// [0, t_max], den > 0. The order at a point is: larger value, then smaller
// den, then smaller payload; it is a strict total order and two distinct
// lines switch winner at most once as t grows.
struct EnvelopeLine {
  std::int64_t intercept = 0;
  std::int64_t den = 1;
  std::uint64_t payload = 0;
};

struct DuplicatePayloadError : std::logic_error {
  explicit DuplicatePayloadError(std::uint64_t payload)
      : std::logic_error("envelope: payload " + std::to_string(payload) + " already live") {}
};

struct NotPresentError : std::logic_error {
  explicit NotPresentError(std::uint64_t payload)
      : std::logic_error("envelope: payload " + std::to_string(payload) + " not live") {}
};

// Maximum-envelope with insert, erase and query-max-at-t. A Li Chao tree
// holds a superset of the live lines; erasing marks lines stale without
// touching the tree. A query answer is exact whenever the tree winner is
// live, so queries re-validate the winner and trigger a full rebuild from
// the live set when a stale line surfaces (or when at least half of the
// inserted lines are dead).
class UpperEnvelope {
 public:
  explicit UpperEnvelope(std::int64_t t_max) : t_max_(t_max) {}

  void Insert(const EnvelopeLine& line, std::uint32_t moves = 0) {
    assert(line.den > 0);
    auto [slot, fresh] = live_.try_emplace(line.payload, Stored{line.intercept, line.den, moves});
    if (!fresh) throw DuplicatePayloadError(line.payload);
    TreeInsert(line);
  }

  void Erase(std::uint64_t payload) {
    if (!live_.erase(payload)) throw NotPresentError(payload);
    ++stale_;
    if (stale_ >= live_.size() && stale_ > 8) Rebuild();
  }

  std::optional<EnvelopeLine> MaxAt(std::int64_t t) {
    assert(t >= 0 && t <= t_max_);
    if (live_.empty()) return std::nullopt;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const std::optional<EnvelopeLine> cand = TreeQuery(t);
      if (cand) {
        const Stored* s = live_.find(cand->payload);
        if (s && s->intercept == cand->intercept && s->den == cand->den) return cand;
      }
      Rebuild();
    }
    return TreeQuery(t);  // tree now mirrors the live set exactly
  }

  std::size_t Size() const { return live_.size(); }
  bool Empty() const { return live_.empty(); }

  std::uint32_t MovesOf(std::uint64_t payload) const {
    const Stored* s = live_.find(payload);
    return s ? s->moves : 0;
  }

  template <typename F>
  void ForEachLive(F&& f) const {
    live_.for_each([&](std::uint64_t payload, const Stored& stored) {
      f(EnvelopeLine{stored.intercept, stored.den, payload}, stored.moves);
    });
  }

 private:
  struct Stored {
    std::int64_t intercept;
    std::int64_t den;
    std::uint32_t moves;
  };

  struct Node {
    std::int64_t intercept = 0;
    std::int64_t den = 0;  // 0 = no line
    std::uint64_t payload = 0;
    std::int32_t l = -1, r = -1;
  };

  // True iff a beats b at t under the (value desc, den asc, payload asc) order.
  static bool Beats(const EnvelopeLine& a, const EnvelopeLine& b, std::int64_t t) {
    const Int128 va = Int128(t + a.intercept) * b.den;
    const Int128 vb = Int128(t + b.intercept) * a.den;
    if (va != vb) return va > vb;
    if (a.den != b.den) return a.den < b.den;
    return a.payload < b.payload;
  }

  std::int32_t NewNode(const EnvelopeLine& line) {
    pool_.push_back(Node{line.intercept, line.den, line.payload, -1, -1});
    return static_cast<std::int32_t>(pool_.size()) - 1;
  }

  void TreeInsert(EnvelopeLine line) {
    if (root_ < 0) {
      root_ = NewNode(line);
      return;
    }
    std::int32_t cur = root_;
    std::int64_t lo = 0, hi = t_max_;
    while (true) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      EnvelopeLine held{pool_[cur].intercept, pool_[cur].den, pool_[cur].payload};
      if (Beats(line, held, mid)) {
        pool_[cur].intercept = line.intercept;
        pool_[cur].den = line.den;
        pool_[cur].payload = line.payload;
        std::swap(line, held);  // keep inserting the displaced line
      }
      if (lo == hi) {
        overflow_[cur].push_back(line);
        return;
      }
      // The loser can still win only on one side of the single switch point.
      const EnvelopeLine winner{pool_[cur].intercept, pool_[cur].den, pool_[cur].payload};
      if (Beats(line, winner, lo)) {
        if (pool_[cur].l < 0) {
          pool_[cur].l = NewNode(line);
          return;
        }
        cur = pool_[cur].l;
        hi = mid;
      } else {
        if (pool_[cur].r < 0) {
          pool_[cur].r = NewNode(line);
          return;
        }
        cur = pool_[cur].r;
        lo = mid + 1;
      }
    }
  }

  std::optional<EnvelopeLine> TreeQuery(std::int64_t t) const {
    std::optional<EnvelopeLine> best;
    std::int32_t cur = root_;
    std::int64_t lo = 0, hi = t_max_;
    while (cur >= 0) {
      const Node& nd = pool_[cur];
      if (nd.den != 0) {
        const EnvelopeLine held{nd.intercept, nd.den, nd.payload};
        if (!best || Beats(held, *best, t)) best = held;
      }
      if (lo == hi) {
        const auto it = overflow_.find(cur);
        if (it != overflow_.end()) {
          for (const EnvelopeLine& line : it->second) {
            if (!best || Beats(line, *best, t)) best = line;
          }
        }
        break;
      }
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (t <= mid) {
        cur = nd.l;
        hi = mid;
      } else {
        cur = nd.r;
        lo = mid + 1;
      }
    }
    return best;
  }

  void Rebuild() {
    pool_.clear();
    overflow_.clear();
    root_ = -1;
    stale_ = 0;
    live_.for_each([&](std::uint64_t payload, const Stored& stored) {
      TreeInsert(EnvelopeLine{stored.intercept, stored.den, payload});
    });
  }

  std::int64_t t_max_;
  FlatMap64<Stored> live_;
  std::vector<Node> pool_;
  std::unordered_map<std::int32_t, std::vector<EnvelopeLine>> overflow_;
  std::int32_t root_ = -1;
  std::size_t stale_ = 0;
};

}  // namespace bestswap
