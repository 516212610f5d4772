#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "patrol/error.hpp"
#include "patrol/game.hpp"
#include "patrol/hitting.hpp"
#include "patrol/strategies.hpp"
#include "test_support.hpp"

namespace patrol {
namespace {

TEST(BestResponse, StarOptimalThree) {
  const BestResponse br = intruder_best_response(star_optimal(3), 3);
  EXPECT_EQ(br.from, 1);
  EXPECT_EQ(br.to, 1);
  EXPECT_DOUBLE_EQ(br.value, 0.5);
  EXPECT_DOUBLE_EQ(game_value(star_optimal(3), 3), 0.5);
}

TEST(BestResponse, TiesGoToSmallestPair) {
  Matrix c(2, 2);
  c << 0.3, 0.2, 0.2, 0.2;
  const BestResponse br = best_response_from_capture(c);
  EXPECT_EQ(br.from, 0);
  EXPECT_EQ(br.to, 1);
  EXPECT_EQ(br.value, 0.2);
}

TEST(BestResponse, IsTheMinimumOverAllPairs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DiGraph g = testing::random_connected_digraph(3 + seed % 5, 0.3, seed);
    const MarkovChain chain = random_chain(g, seed);
    const Matrix c = hitting_profile(chain, 4).capture;
    const BestResponse br = intruder_best_response(chain, 4);
    EXPECT_EQ(br.value, c.minCoeff());
    EXPECT_EQ(c(br.from, br.to), br.value);
    EXPECT_EQ(game_value(chain.matrix(), 4), br.value);
  }
}

TEST(GameInstance, Validates) {
  EXPECT_NO_THROW(GameInstance::make(build_star(4), 2));
  try {
    GameInstance::make(DiGraph(3, {{0, 1}, {1, 2}}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConnectivity);
  }
  EXPECT_THROW(GameInstance::make(build_star(4), 0), Error);
}

TEST(UpperBound, TauOverN) {
  const GameInstance inst = GameInstance::make(build_complete(4), 2);
  EXPECT_DOUBLE_EQ(upper_bound(inst), 0.5);
  EXPECT_TRUE(bound_applies(inst));
  EXPECT_FALSE(bound_applies(GameInstance::make(build_complete(4), 4)));
  EXPECT_FALSE(bound_applies(GameInstance::make(build_line(5), 2)));
}

// Property: no conforming chain beats tau/n on a nontrivial duration.
TEST(UpperBound, HoldsForRandomChains) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const DiGraph g = seed % 3 == 0   ? build_star(n)
                      : seed % 3 == 1 ? build_line(n)
                                      : testing::random_connected_digraph(n, 0.25, seed);
    for (int tau = 1; tau <= 2 * n; ++tau) {
      const GameInstance inst = GameInstance::make(g, tau);
      if (!bound_applies(inst)) continue;
      EXPECT_LE(game_value(random_chain(g, seed * 100 + tau), tau), upper_bound(inst) + 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Degenerate, ShortDurationGivesZero) {
  for (int n = 4; n <= 7; ++n) {
    const DiGraph g = build_line(n);
    for (int tau = 1; tau < n - 1; ++tau) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EXPECT_EQ(game_value(random_chain(g, seed), tau), 0.0);
      }
      EXPECT_EQ(game_value(line_optimal(n), tau), 0.0);
    }
  }
}

TEST(Degenerate, ReducibleChainGivesZero) {
  Matrix p = Matrix::Zero(4, 4);
  p(0, 1) = 1.0;
  p(1, 0) = 1.0;
  p(2, 3) = 1.0;
  p(3, 2) = 1.0;
  const MarkovChain chain = MarkovChain::from_matrix(build_complete(4), p);
  for (int tau = 1; tau <= 10; ++tau) EXPECT_EQ(game_value(chain, tau), 0.0);
}

// Oracle for cut structure: delete the middle node and recompute closure.
std::set<std::tuple<int, int, int, int>> cut_oracle(const DiGraph& g) {
  const int n = g.size();
  std::set<std::tuple<int, int, int, int>> out;
  for (int removed = 0; removed < n; ++removed) {
    std::vector<Edge> kept;
    for (const Edge& e : g.edges()) {
      if (e.from != removed && e.to != removed) kept.push_back(e);
    }
    const auto reach = testing::closure(DiGraph(n, kept));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == removed || b == removed || a == b || reach[a][b]) continue;
        // Every a -> b path crosses `removed`.
        out.insert({removed, b, static_cast<int>(DominanceReason::kEntryCut), a});
        out.insert({a, removed, static_cast<int>(DominanceReason::kExitCut), b});
      }
    }
  }
  return out;
}

TEST(DominatedPairs, MatchCutOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const DiGraph g = seed % 4 == 0   ? build_star(n)
                      : seed % 4 == 1 ? build_line(n)
                                      : testing::random_connected_digraph(n, 0.1, seed);
    std::set<std::tuple<int, int, int, int>> got;
    for (const DominatedPair& p : dominated_pairs(g, 1)) {
      got.insert({p.from, p.to, static_cast<int>(p.reason), p.witness});
    }
    EXPECT_EQ(got, cut_oracle(g)) << "seed " << seed;
  }
}

TEST(DominatedPairs, LeafEntriesNeedTwoSteps) {
  const auto count_leaf = [](const std::vector<DominatedPair>& pairs) {
    return std::count_if(pairs.begin(), pairs.end(), [](const DominatedPair& p) {
      return p.reason == DominanceReason::kLeaf;
    });
  };
  EXPECT_EQ(count_leaf(dominated_pairs(build_star(5), 1)), 0);
  EXPECT_EQ(count_leaf(dominated_pairs(build_star(5), 2)), 4);
  EXPECT_EQ(count_leaf(dominated_pairs(build_line(5), 3)), 2);
  EXPECT_EQ(count_leaf(dominated_pairs(build_complete(5), 3)), 0);
  EXPECT_TRUE(dominated_pairs(build_complete(4), 2).empty());
  EXPECT_STREQ(to_string(DominanceReason::kExitCut), "exit-cut");
}

TEST(DominatedPairs, SortedAndRejectsSmallGraphs) {
  const auto pairs = dominated_pairs(build_line(6), 4);
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.to, a.reason, a.witness) <
           std::tie(b.from, b.to, b.reason, b.witness);
  }));
  EXPECT_THROW(dominated_pairs(build_complete(2), 2), Error);
}

TEST(DominatedPairs, InequalitiesHoldOnSampledChains) {
  const DiGraph g = build_line(6);
  const auto pairs = dominated_pairs(g, 5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix c = hitting_profile(random_chain(g, seed), 5).capture;
    for (const DominatedPair& p : pairs) {
      if (p.reason == DominanceReason::kEntryCut) {
        EXPECT_LE(c(p.witness, p.to), c(p.from, p.to) + 1e-12);
      } else if (p.reason == DominanceReason::kExitCut) {
        EXPECT_LE(c(p.from, p.witness), c(p.from, p.to) + 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace patrol
