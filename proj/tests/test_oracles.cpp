#include <gtest/gtest.h>

#include "lf/forest.hpp"
#include "lf/hardness.hpp"
#include "lf/logic/syntax.hpp"
#include "lf/testing/acceptance.hpp"
#include "lf/testing/oracles.hpp"

// The reference implementations are only useful if they are right on cases
// small enough to check by hand.

namespace lf {
namespace {

TEST(Oracle, BruteIsomorphismByHand) {
  LeveledForest a, b;
  const NodeId ra = a.add_root();
  a.add_child(a.add_child(ra));
  a.add_root();
  b.add_root();
  const NodeId rb = b.add_root();
  b.add_child(b.add_child(rb));
  EXPECT_TRUE(oracle::brute_isomorphic(a, b));
  LeveledForest c;
  const NodeId rc = c.add_root();
  c.add_child(rc);
  c.add_child(rc);
  c.add_root();
  EXPECT_FALSE(oracle::brute_isomorphic(a, c));
}

TEST(Oracle, NaiveModelsSmallCounts) {
  EXPECT_EQ(oracle::naive_models(1).size(), 1u);
  EXPECT_EQ(oracle::naive_models(2).size(), 2u);
  EXPECT_EQ(oracle::naive_models(3).size(), 4u);
  for (const auto& m : oracle::naive_models(4)) EXPECT_TRUE(is_valid(m));
}

TEST(Oracle, NaiveEvalByHand) {
  LeveledForest f;
  const NodeId r = f.add_root();
  f.add_child(r);
  EXPECT_TRUE(oracle::naive_eval(f, logic::parse("ex x . ex y . lt[0](x,y)"), {}));
  EXPECT_FALSE(oracle::naive_eval(f, logic::parse("ex x . ex y . lt[1](x,y)"), {}));
  EXPECT_TRUE(oracle::naive_eval(f, logic::parse("all y in succ[0](x) . P[1](y)"), {{"x", 0}}));
}

TEST(Oracle, LayeredFoldByHand) {
  EXPECT_TRUE(oracle::layered_eval_bounded({2, 1, {0, 0, 1, 1}}));
  EXPECT_FALSE(oracle::layered_eval_bounded({2, 1, {0, 1, 1, 0}}));
  EXPECT_TRUE(oracle::layered_eval_bounded({3, 1, {0, 0, 0, 0, 0, 1, 1, 1}}));
}

TEST(Oracle, LevelProfile) {
  LeveledForest f;
  f.add_child(f.add_root());
  f.add_unleveled();
  EXPECT_EQ(oracle::level_profile(f), (std::map<int, int>{{kUnleveled, 1}, {0, 1}, {1, 1}}));
}

TEST(Acceptance, CriteriaListIsComplete) {
  const auto cs = acceptance::criteria();
  ASSERT_EQ(cs.size(), 10u);
  for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs[i].id, static_cast<int>(i) + 1);
}

TEST(Acceptance, FormatLine) {
  acceptance::CriterionResult r;
  r.id = 3;
  r.name = "demo";
  r.passed = true;
  r.detail = "ok";
  r.seconds = 0.5;
  r.budget = 60;
  EXPECT_EQ(acceptance::format(r).rfind("PASS criterion 3 [demo]: ok", 0), 0u);
}

}  // namespace
}  // namespace lf
