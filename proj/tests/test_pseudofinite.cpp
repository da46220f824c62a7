#include <gtest/gtest.h>

#include "lf/efgame.hpp"
#include "lf/errors.hpp"
#include "lf/logic/eval.hpp"
#include "lf/logic/syntax.hpp"
#include "lf/pseudofinite.hpp"
#include "lf/random.hpp"

namespace lf {
namespace {

LeveledForest broom(int width) {
  LeveledForest f;
  const NodeId r = f.add_root();
  for (int i = 0; i < width; ++i) f.add_child(r);
  return f;
}

TEST(Witness, BroomIsCutToTheBound) {
  // k = n(h+1) = 2 keeps at most two leaves.
  EXPECT_EQ(witness_rank(broom(7), 1, 1).size(), 3);
  EXPECT_EQ(witness_rank(broom(7), 2, 1).size(), 5);
  EXPECT_EQ(witness_rank(broom(2), 3, 1).size(), 3);
}

TEST(Witness, DependsOnlyOnCappedColor) {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    const auto t = random_tree(rng, uniform_int(rng, 1, 12), 3);
    const auto w = witness_rank(t, 1, 3);
    EXPECT_TRUE(isomorphic(witness_rank(w, 1, 3), w));
    EXPECT_LE(w.size(), t.size());
  }
}

TEST(Witness, SolverConfirmsEquivalence) {
  Rng rng(42);
  for (int i = 0; i < 40; ++i) {
    const int h = uniform_int(rng, 1, 2);
    const auto t = random_tree(rng, uniform_int(rng, 1, 9), h);
    const int n = uniform_int(rng, 1, 2);
    const auto w = witness_rank(t, n, h);
    if (t.size() + w.size() > 14) continue;
    GameConfig g;
    g.m0 = t;
    g.m1 = w;
    g.rounds = n;
    g.h = h;
    EXPECT_EQ(solve(g), Player::Duplicator);
  }
}

TEST(Witness, ForestVersionCapsCensus) {
  LeveledForest f = copies(broom(1), 5);
  f.add_unleveled();
  const auto w = witness_forest(f, 1, 1);
  EXPECT_EQ(w.roots().size(), 2u);  // two brooms
  EXPECT_EQ(w.size(), 5);          // and one unleveled point
  EXPECT_TRUE(is_valid(w));
  EXPECT_TRUE(equiv_by_colors(f, w, 1, 1));
}

TEST(Witness, RejectsBadInput) {
  EXPECT_THROW(witness_rank(copies(broom(1), 2), 1, 1), ContractError);
  EXPECT_THROW(witness_rank(broom(1), 1, 0), ContractError);
}

TEST(Witness, FormulaCertificate) {
  const auto t = broom(6);
  const auto phi = logic::parse("ex x . ex y . ex z . pred(x,y) & pred(x,z) & ~eq(y,z)");
  const auto w = witness_formula(t, phi, 1);
  EXPECT_TRUE(w.certificate.passed());
  EXPECT_EQ(w.certificate.rank, 3);
  EXPECT_EQ(w.model.size(), 7);  // k = 6 keeps all six leaves
  const auto j = to_json(w.certificate);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Witness, FormulaPreconditions) {
  const auto phi = logic::parse("ex x . ex y . pred(x,y)");
  EXPECT_THROW(witness_formula(LeveledForest(std::vector<NodeRecord>{{0, kNoNode, {}}}), phi, 1), ContractError);
  EXPECT_THROW(witness_formula(broom(1), logic::parse("pred(x,x)"), 1), ContractError);
  LeveledForest deep = broom(1);
  deep.add_child(1);
  EXPECT_THROW(witness_formula(deep, phi, 1), ContractError);
}

TEST(Witness, RandomSentencesCarryOver) {
  Rng rng(43);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    const auto t = random_tree(rng, uniform_int(rng, 1, 7), 2);
    const auto phi = random_pred_sentence(rng, 2, 6);
    if (!logic::eval(t, phi)) continue;
    ++checked;
    EXPECT_TRUE(witness_formula(t, phi, 2).certificate.passed()) << logic::render(phi);
  }
  EXPECT_EQ(checked, 40);
}

}  // namespace
}  // namespace lf
