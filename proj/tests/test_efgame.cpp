#include <gtest/gtest.h>

#include <functional>

#include "lf/colors.hpp"
#include "lf/efgame.hpp"
#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/logic/eval.hpp"
#include "lf/logic/syntax.hpp"
#include "lf/random.hpp"

namespace lf {
namespace {

LeveledForest roots(int n) {
  LeveledForest f;
  for (int i = 0; i < n; ++i) f.add_root();
  return f;
}

LeveledForest cherries(int count, int width) {
  LeveledForest f;
  for (int c = 0; c < count; ++c) {
    const NodeId r = f.add_root();
    for (int i = 0; i < width; ++i) f.add_child(r);
  }
  return f;
}

GameConfig game(LeveledForest a, LeveledForest b, int rounds, int h) {
  GameConfig g;
  g.m0 = std::move(a);
  g.m1 = std::move(b);
  g.rounds = rounds;
  g.h = h;
  return g;
}

// Plain minimax without memoization; the atoms are read off the raw records.
bool naive_duplicator(const GameConfig& g, std::vector<PebblePair> pos, int rounds) {
  auto lvl = [&](const LeveledForest& f, NodeId x) {
    const int l = f.level(x);
    return l >= 0 && l <= g.h ? l : -1;
  };
  auto edge = [&](const LeveledForest& f, NodeId p, NodeId c) {
    return lvl(f, c) >= 1 && lvl(f, p) >= 0 && f.parent(c) == p;
  };
  for (const auto& [a, b] : pos)
    if (lvl(g.m0, a) != lvl(g.m1, b)) return false;
  for (const auto& [a, b] : pos)
    for (const auto& [c, d] : pos)
      if ((a == c) != (b == d) || edge(g.m0, a, c) != edge(g.m1, b, d)) return false;
  if (rounds == 0) return true;
  for (int side = 0; side < 2; ++side) {
    const auto& mine = side == 0 ? g.m0 : g.m1;
    const auto& theirs = side == 0 ? g.m1 : g.m0;
    for (NodeId x = 0; x < mine.size(); ++x) {
      bool answered = false;
      for (NodeId y = 0; y < theirs.size() && !answered; ++y) {
        auto next = pos;
        next.push_back(side == 0 ? PebblePair{x, y} : PebblePair{y, x});
        answered = naive_duplicator(g, next, rounds - 1);
      }
      if (!answered) return false;
    }
  }
  return true;
}

TEST(Solver, PureSetsFrozen) {
  // Sets of a and b points: duplicator survives n rounds iff a == b or both >= n.
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int n = 1; n <= 3; ++n) {
        const bool expected = a == b || (a >= n && b >= n);
        EXPECT_EQ(solve(game(roots(a), roots(b), n, 1)) == Player::Duplicator, expected) << a << " " << b << " " << n;
      }
}

TEST(Solver, CherriesFrozen) {
  // n rounds count the children of a single root up to n.
  EXPECT_EQ(solve(game(cherries(1, 1), cherries(1, 2), 1, 1)), Player::Duplicator);
  EXPECT_EQ(solve(game(cherries(1, 1), cherries(1, 2), 2, 1)), Player::Spoiler);
  EXPECT_EQ(solve(game(cherries(1, 2), cherries(1, 3), 2, 1)), Player::Duplicator);
  EXPECT_EQ(solve(game(cherries(1, 2), cherries(1, 3), 3, 1)), Player::Spoiler);
}

TEST(Solver, AgreesWithNaiveMinimax) {
  Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    const int h = uniform_int(rng, 1, 2);
    auto g = game(random_forest(rng, uniform_int(rng, 1, 5), 2), random_forest(rng, uniform_int(rng, 1, 5), 2), uniform_int(rng, 1, 3), h);
    EXPECT_EQ(solve(g) == Player::Duplicator, naive_duplicator(g, {}, g.rounds));
  }
}

TEST(Solver, MonotoneInRounds) {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    auto g = game(random_forest(rng, uniform_int(rng, 1, 6), 2), random_forest(rng, uniform_int(rng, 1, 6), 2), 3, 2);
    const bool three = solve(g) == Player::Duplicator;
    g.rounds = 2;
    const bool two = solve(g) == Player::Duplicator;
    if (three) {
      EXPECT_TRUE(two);
    }
  }
}

TEST(Solver, DuplicatorWinsImplyEqualTheories) {
  Rng rng(33);
  int equivalent_pairs = 0;
  for (int i = 0; i < 400; ++i) {
    const auto a = random_forest(rng, uniform_int(rng, 1, 6), 2, 0.4);
    const auto b = random_forest(rng, uniform_int(rng, 1, 6), 2, 0.4);
    if (solve(game(a, b, 2, 2)) != Player::Duplicator) continue;
    ++equivalent_pairs;
    for (int s = 0; s < 30; ++s) {
      const auto phi = random_lh_sentence(rng, 2, 2, 8);
      EXPECT_EQ(logic::eval(a, phi), logic::eval(b, phi)) << logic::render(phi);
    }
  }
  EXPECT_GT(equivalent_pairs, 10);
}

TEST(Solver, WinningPickIsARealWin) {
  const auto g = game(cherries(1, 1), cherries(1, 2), 2, 1);
  Solver s(g);
  const auto pick = s.winning_pick({}, 2);
  ASSERT_TRUE(pick.has_value());
  const auto& other = pick->first == 0 ? g.m1 : g.m0;
  for (NodeId y = 0; y < other.size(); ++y) {
    const PebblePair p = pick->first == 0 ? PebblePair{pick->second, y} : PebblePair{y, pick->second};
    EXPECT_FALSE(s.duplicator_wins({p}, 1));
  }
}

TEST(Solver, ConstantsArePebbledFromTheStart) {
  auto a = cherries(1, 1), b = cherries(1, 1);
  a.set_tag(1, "c");
  b.set_tag(0, "c");
  auto g = game(a, b, 0, 1);
  EXPECT_EQ(solve(g), Player::Duplicator);
  g.with_constants = true;
  EXPECT_EQ(solve(g), Player::Spoiler);
  g.m1 = cherries(1, 1);
  EXPECT_TRUE(initial_position(g).mismatch.has_value());
  EXPECT_EQ(solve(g), Player::Spoiler);
}

TEST(Solver, FindViolationNamesTheAtom) {
  const auto g = game(cherries(1, 1), cherries(1, 1), 1, 1);
  EXPECT_EQ(find_violation(g, {{0, 1}}).value_or(""), "P[1] differs on pair (0,1)");
  EXPECT_FALSE(find_violation(g, {{0, 0}, {1, 1}}).has_value());
  EXPECT_EQ(find_violation(game(roots(2), roots(2), 1, 1), {{0, 0}, {1, 0}}).value_or("").rfind("eq differs", 0), 0u);
}

TEST(Solver, ResourceLimits) {
  SolveLimits lim;
  lim.max_rounds = 2;
  EXPECT_THROW(Solver(game(roots(2), roots(2), 3, 1), lim).winner(), ResourceError);
}

TEST(Strategy, ProlongAndLift) {
  const auto f = cherries(1, 2);
  EXPECT_EQ(prolong_and_lift(f, 2, 1), (std::vector<NodeId>{0, 2}));
  LeveledForest deep;
  NodeId x = deep.add_root();
  for (int i = 0; i < 3; ++i) x = deep.add_child(x);
  EXPECT_EQ(prolong_and_lift(deep, 2, 2), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(prolong_and_lift(deep, 3, 2), (std::vector<NodeId>{3}));
}

TEST(Strategy, RejectsBrokenHypothesis) {
  auto g = game(cherries(1, 1), cherries(2, 1), 1, 1);
  EXPECT_THROW(ColorStrategy(g, 1, 1), ContractError);
  g = game(cherries(1, 1), cherries(1, 1), 3, 1);
  EXPECT_THROW(ColorStrategy(g, 1, 1), ContractError);  // ordinary game longer than n
}

TEST(Strategy, ExhaustiveCheckOnCappedCopies) {
  // Three versus four cherries of width three agree at k = n(h+1) = 2 after capping.
  for (bool prolonged : {false, true}) {
    auto g = game(cherries(3, 3), cherries(4, 3), prolonged ? 2 : 1, 1);
    g.prolonged = prolonged;
    const ColorStrategy st(g, 1, 1);
    const auto check = check_strategy(g, st);
    EXPECT_TRUE(check.holds);
    EXPECT_GT(check.playouts, 0u);
  }
}

TEST(Strategy, OrdinaryGameAgainstOptimalSpoiler) {
  auto g = game(cherries(2, 2), cherries(3, 3), 1, 1);
  ASSERT_TRUE(equiv_by_colors(g.m0, g.m1, 1, 1));
  const ColorStrategy st(g, 1, 1);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = play(g, st, optimal_spoiler(g, seed));
    EXPECT_TRUE(t.duplicator_wins) << t.violation;
    EXPECT_EQ(t.rounds.size(), 2u);
  }
  EXPECT_EQ(solve(g), Player::Duplicator);
}

TEST(Strategy, TracesAreDeterministic) {
  auto g = game(cherries(3, 2), cherries(4, 2), 2, 1);
  g.prolonged = true;
  const ColorStrategy st(g, 1, 1);
  const auto a = play(g, st, random_spoiler(g, 77));
  const auto b = play(g, st, random_spoiler(g, 77));
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    EXPECT_EQ(a.rounds[i].side, b.rounds[i].side);
    EXPECT_EQ(a.rounds[i].node, b.rounds[i].node);
  }
  for (const auto& r : a.rounds) {
    if (r.mover != Player::Spoiler) continue;
    EXPECT_GE(r.round, 1);
  }
}

TEST(Strategy, ProlongedSpoilerMustClimb) {
  auto g = game(cherries(1, 1), cherries(1, 1), 2, 1);
  g.prolonged = true;
  EXPECT_FALSE(spoiler_pick_legal(g, {}, 0, 1));
  EXPECT_TRUE(spoiler_pick_legal(g, {{0, 0}}, 0, 1));
  EXPECT_EQ(legal_spoiler_picks(g, {}).size(), 2u);
}

TEST(Equiv, ColorsImplySolver) {
  Rng rng(35);
  int hits = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = random_forest(rng, uniform_int(rng, 1, 6), 2, 0.5);
    const auto b = random_forest(rng, uniform_int(rng, 1, 6), 2, 0.5);
    for (int h = 1; h <= 2; ++h) {
      if (!equiv_by_colors(a, b, 1, h)) continue;
      ++hits;
      EXPECT_EQ(solve(game(a, b, 1, h)), Player::Duplicator);
    }
  }
  EXPECT_GT(hits, 20);
  EXPECT_TRUE(equiv_by_colors(roots(1), roots(5), 0, 1));
  EXPECT_FALSE(equiv_by_colors(roots(2), roots(3), 1, 1, true));
}

}  // namespace
}  // namespace lf
