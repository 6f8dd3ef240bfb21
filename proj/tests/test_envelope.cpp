#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <optional>
#include <random>

#include "bestswap/envelope.hpp"

using namespace bestswap;

namespace {

// Reference: linear scan over live lines with the same tie rule.
struct ScanEnvelope {
  std::map<std::uint64_t, EnvelopeLine> live;

  std::optional<EnvelopeLine> MaxAt(std::int64_t t) const {
    std::optional<EnvelopeLine> best;
    for (const auto& [p, line] : live) {
      if (!best) {
        best = line;
        continue;
      }
      const Int128 va = Int128(t + line.intercept) * best->den;
      const Int128 vb = Int128(t + best->intercept) * line.den;
      if (va > vb || (va == vb && (line.den < best->den ||
                                   (line.den == best->den && line.payload < best->payload)))) {
        best = line;
      }
    }
    return best;
  }
};

}  // namespace

TEST_CASE("singleton envelope answers itself") {
  UpperEnvelope env(100);
  env.Insert({0, 1, 7});
  const auto hit = env.MaxAt(5);
  REQUIRE(hit);
  CHECK(hit->payload == 7);
}

TEST_CASE("steeper lines take over as t grows") {
  UpperEnvelope env(100);
  env.Insert({0, 1, 1});  // t
  env.Insert({2, 2, 2});  // (t+2)/2
  REQUIRE(env.MaxAt(1)->payload == 2);  // 1 vs 1.5
  REQUIRE(env.MaxAt(3)->payload == 1);  // 3 vs 2.5
  // tie at t = 2: equal values, the smaller den wins
  REQUIRE(env.MaxAt(2)->payload == 1);
}

TEST_CASE("erase removes a line from all future queries") {
  UpperEnvelope env(100);
  env.Insert({0, 1, 1});
  env.Insert({2, 2, 2});
  env.Erase(1);
  REQUIRE(env.MaxAt(3)->payload == 2);
  env.Erase(2);
  CHECK_FALSE(env.MaxAt(3));
  CHECK(env.Empty());
}

TEST_CASE("insert-erase-insert behaves like a single live copy") {
  UpperEnvelope env(100);
  env.Insert({5, 1, 9});
  env.Erase(9);
  env.Insert({1, 1, 9});
  const auto hit = env.MaxAt(10);
  REQUIRE(hit);
  CHECK(hit->payload == 9);
  CHECK(hit->intercept == 1);  // the stale copy with intercept 5 must not surface
}

TEST_CASE("bookkeeping violations throw") {
  UpperEnvelope env(100);
  env.Insert({0, 1, 3});
  CHECK_THROWS_AS(env.Insert({1, 2, 3}), DuplicatePayloadError);
  CHECK_THROWS_AS(env.Erase(4), NotPresentError);
}

TEST_CASE("differential: random scripts against a linear scan") {
  std::mt19937_64 rng(57);
  const std::int64_t t_max = 5000;
  int ops = 0;
  for (int script = 0; script < 120; ++script) {
    UpperEnvelope env(t_max);
    ScanEnvelope ref;
    std::uint64_t next_payload = 0;
    const int len = 40 + static_cast<int>(rng() % 160);
    for (int i = 0; i < len; ++i, ++ops) {
      const int op = static_cast<int>(rng() % 3);
      if (op == 0 || ref.live.empty()) {
        EnvelopeLine line;
        line.intercept = static_cast<std::int64_t>(rng() % 2000);
        line.den = 1 + static_cast<std::int64_t>(rng() % 50);
        line.payload = next_payload++;
        // occasionally duplicate an (A, den) pair to hit tie paths
        if (rng() % 4 == 0 && !ref.live.empty()) {
          auto it = ref.live.begin();
          std::advance(it, rng() % ref.live.size());
          line.intercept = it->second.intercept;
          line.den = it->second.den;
        }
        env.Insert(line);
        ref.live[line.payload] = line;
      } else if (op == 1) {
        auto it = ref.live.begin();
        std::advance(it, rng() % ref.live.size());
        env.Erase(it->first);
        ref.live.erase(it);
      } else {
        const std::int64_t t = static_cast<std::int64_t>(rng() % (t_max + 1));
        const auto got = env.MaxAt(t);
        const auto want = ref.MaxAt(t);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
          REQUIRE(got->payload == want->payload);
          REQUIRE(got->intercept == want->intercept);
          REQUIRE(got->den == want->den);
        }
      }
    }
  }
  CHECK(ops >= 10000);
}

TEST_CASE("for a fixed set the winning den never grows with t") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 30; ++iter) {
    UpperEnvelope env(300);
    const int k = 2 + static_cast<int>(rng() % 20);
    for (int i = 0; i < k; ++i) {
      env.Insert({static_cast<std::int64_t>(rng() % 100), 1 + static_cast<std::int64_t>(rng() % 9),
                  static_cast<std::uint64_t>(i)});
    }
    std::int64_t last_den = 1 << 30;
    for (std::int64_t t = 0; t <= 300; ++t) {
      const auto hit = env.MaxAt(t);
      REQUIRE(hit);
      REQUIRE(hit->den <= last_den);
      last_den = hit->den;
    }
  }
}
