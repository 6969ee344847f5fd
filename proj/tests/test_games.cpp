#include <gtest/gtest.h>

#include <random>

#include "llrel/game.hpp"

using namespace llrel;

TEST(Attractor, ForcedAndUnforced) {
  // 0 (Even) -> {1,2}; 1 (Odd) -> {2,3}; 2 target; 3 -> 3.
  ParityGame g;
  for (int i = 0; i < 4; ++i) g.add_vertex(i == 1 ? Player::Odd : Player::Even, 0);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 2);
  g.add_edge(3, 3);
  VertexSet target{false, false, true, false};
  std::vector<int> strat(4, -1);
  auto even = attractor(g, target, Player::Even, VertexSet(4, true), &strat);
  EXPECT_EQ(even, (VertexSet{true, false, true, false}));
  EXPECT_EQ(strat[0], 2);
  auto odd = attractor(g, target, Player::Odd);
  EXPECT_EQ(odd, (VertexSet{true, true, true, false}));
}

TEST(Zielonka, SmallHandGame) {
  // Even at 0 chooses between an odd self-loop (1) and an even one (2).
  ParityGame g;
  g.add_vertex(Player::Even, 0);
  g.add_vertex(Player::Odd, 1);
  g.add_vertex(Player::Odd, 2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 1);
  g.add_edge(2, 2);
  auto s = zielonka(g);
  EXPECT_EQ(s.winner, (std::vector<Player>{Player::Even, Player::Odd, Player::Even}));
  EXPECT_EQ(s.strategy[0], 2);
  EXPECT_TRUE(validate_strategies(g, s));
}

TEST(Zielonka, RejectsDeadEnds) {
  ParityGame g;
  g.add_vertex(Player::Even, 0);
  EXPECT_THROW(zielonka(g), Error);
}

TEST(Zielonka, MatchesBruteForceOnRandomGames) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto g = random_game(rng, 8, 4);
    auto s = zielonka(g);
    ASSERT_EQ(s.winner, brute_force_solve(g)) << "game " << i << "\n" << to_dot(g);
    ASSERT_TRUE(validate_strategies(g, s)) << "game " << i << "\n" << to_dot(g, &s);
  }
}

TEST(Zielonka, CorruptedStrategyIsRejected) {
  std::mt19937 rng(11);
  int rejected = 0;
  for (int i = 0; i < 200 && rejected < 20; ++i) {
    auto g = random_game(rng, 6, 3);
    auto s = zielonka(g);
    for (int v = 0; v < g.size(); ++v) {
      if (s.strategy[v] < 0) continue;
      for (int u : g.succ[v]) {
        if (s.winner[u] == s.winner[v]) continue;
        auto bad = s;
        bad.strategy[v] = u;
        EXPECT_FALSE(validate_strategies(g, bad));
        ++rejected;
      }
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(Zielonka, FlippedPriorityChangesSomeWinner) {
  ParityGame g;
  g.add_vertex(Player::Even, 2);
  g.add_edge(0, 0);
  EXPECT_EQ(zielonka(g).winner[0], Player::Even);
  g.priority[0] = 3;
  EXPECT_EQ(zielonka(g).winner[0], Player::Odd);
  EXPECT_EQ(brute_force_solve(g)[0], Player::Odd);
}

TEST(GameDot, MarksOwnersAndStrategy) {
  ParityGame g;
  g.add_vertex(Player::Even, 2, "start");
  g.add_vertex(Player::Odd, 1);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  auto s = zielonka(g);
  auto dot = to_dot(g, &s);
  EXPECT_NE(dot.find("start / 2"), std::string::npos);
  EXPECT_NE(dot.find("shape=diamond"), std::string::npos);
  EXPECT_NE(dot.find("v0 -> v1 [style=bold]"), std::string::npos);
}
