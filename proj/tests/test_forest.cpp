#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/json_io.hpp"
#include "lf/random.hpp"
#include "lf/testing/oracles.hpp"

namespace lf {
namespace {

LeveledForest chain(int n) {
  LeveledForest f;
  NodeId x = f.add_root();
  for (int i = 1; i < n; ++i) x = f.add_child(x);
  return f;
}

TEST(Forest, BuildersAssignLevels) {
  LeveledForest f;
  const NodeId r = f.add_root();
  const NodeId a = f.add_child(r);
  const NodeId b = f.add_child(a);
  const NodeId u = f.add_unleveled();
  EXPECT_EQ(f.level(r), 0);
  EXPECT_EQ(f.level(b), 2);
  EXPECT_FALSE(f.is_leveled(u));
  EXPECT_EQ(f.parent(b), a);
  EXPECT_EQ(f.roots(), (std::vector<NodeId>{r}));  // level-0 nodes only
  EXPECT_EQ(f.height(), 2);
  EXPECT_TRUE(is_valid(f));
}

TEST(Forest, ValidateReportsEachAxiom) {
  std::vector<NodeRecord> recs{{0, kNoNode, {}}, {2, 0, {}}, {1, kNoNode, {}}};
  const auto vs = validate(LeveledForest(recs));
  std::set<std::string> axioms;
  for (const auto& v : vs) axioms.insert(v.axiom);
  EXPECT_TRUE(axioms.count("level-skip"));
  EXPECT_TRUE(axioms.count("missing-predecessor"));
}

TEST(Forest, JsonRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto f = random_forest(rng, uniform_int(rng, 1, 12), 4, 0.3, uniform_int(rng, 0, 2));
    if (coin(rng)) f.set_tag(0, "c0");
    EXPECT_EQ(forest_from_json(to_json(f)), f);
  }
}

TEST(Forest, JsonRejectsBadIds) {
  EXPECT_THROW(forest_from_json(parse_json_text(R"({"nodes":[{"id":1,"level":0,"parent":null}]})")), ParseError);
  EXPECT_THROW(forest_from_json(parse_json_text(R"({"nodes":[{"id":0,"level":0,"parent":4}]})")), ParseError);
  EXPECT_THROW(parse_json_text("{"), ParseError);
}

TEST(Forest, CanonicalizeIsIsomorphismInvariant) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_forest(rng, uniform_int(rng, 1, 9), 3);
    const auto b = random_forest(rng, a.size(), 3);
    const bool same = canonical_encoding(a) == canonical_encoding(b);
    EXPECT_EQ(same, oracle::brute_isomorphic(a, b));
    EXPECT_EQ(isomorphic(a, b), same);
    EXPECT_TRUE(oracle::brute_isomorphic(a, canonicalize(a)));
  }
}

TEST(Forest, EnumerationCountsMatchRootedTrees) {
  // Forests on n nodes are rooted trees on n+1 nodes: 1, 2, 4, 9, 20, 48.
  const std::vector<std::size_t> expected{1, 2, 4, 9, 20, 48};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(enumerate_models(n).size(), expected[n - 1]) << n;
}

TEST(Forest, EnumerationAgreesWithNaiveOracle) {
  for (int n = 1; n <= 5; ++n) {
    const auto fast = enumerate_models(n);
    const auto naive = oracle::naive_models(n);
    ASSERT_EQ(fast.size(), naive.size());
    for (const auto& m : naive) {
      const auto hit = std::count_if(fast.begin(), fast.end(), [&](const auto& f) { return oracle::brute_isomorphic(f, m); });
      EXPECT_EQ(hit, 1);
    }
  }
}

TEST(Forest, EnumerationWithUnleveledPoints) {
  // u unleveled points beside a forest of n-u nodes; the empty forest counts once.
  EnumerationOptions opt;
  opt.allow_unleveled = 3;
  EXPECT_EQ(enumerate_models(3, opt).size(), 4u + 2u + 1u + 1u);
  opt.allow_unleveled = 1;
  EXPECT_EQ(enumerate_models(4, opt).size(), 9u + 4u);
}

TEST(Forest, EnumerationIsSortedAndDeterministic) {
  const auto a = enumerate_models(5);
  const auto b = enumerate_models(5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(canonical_encoding(a[i - 1]), canonical_encoding(a[i]));
}

TEST(Forest, EnumerationLimit) {
  EXPECT_THROW(enumerate_models(9), ResourceError);
  EXPECT_THROW(enumerate_models(0), ContractError);
}

TEST(Forest, UnionAndCopies) {
  const auto u = disjoint_union(chain(2), chain(3));
  EXPECT_EQ(u.size(), 5);
  EXPECT_EQ(u.roots().size(), 2u);
  EXPECT_TRUE(is_valid(u));
  const auto c = copies(chain(2), 3);
  EXPECT_EQ(c.size(), 6);
  EXPECT_EQ(oracle::level_profile(c), (std::map<int, int>{{0, 3}, {1, 3}}));
}

TEST(Forest, TreeAboveShiftsLevels) {
  LeveledForest f = chain(4);
  const auto t = tree_above(f, 1);
  EXPECT_EQ(t.size(), 3);
  EXPECT_EQ(t.level(0), 0);
  EXPECT_TRUE(isomorphic(t, chain(3)));
}

TEST(Forest, GraftKeepsShape) {
  LeveledForest dst = chain(2);
  const NodeId r = graft(dst, 1, chain(3), 0);
  EXPECT_EQ(dst.level(r), 2);
  EXPECT_EQ(dst.size(), 5);
  EXPECT_TRUE(isomorphic(dst, chain(5)));
}

TEST(Forest, PrimeModelComponents) {
  const auto p = build_prime(3, 2);
  const auto models = models_up_to(3);
  ASSERT_EQ(models.size(), 7u);
  int total = 0;
  for (const auto& m : models) total += 2 * m.size();
  EXPECT_EQ(p.size(), total);
  EXPECT_TRUE(is_valid(p));
  for (std::size_t i = 0; i < models.size(); ++i)
    for (int c = 1; c <= 2; ++c) {
      const auto comp = tagged_component(p, "c_" + std::to_string(i + 1) + "_" + std::to_string(c) + "_");
      EXPECT_TRUE(isomorphic(strip_tags(comp), models[i]));
    }
  EXPECT_EQ(p.find_tag(const_name(1, 1, 0)), std::optional<NodeId>(0));
}

TEST(Forest, IsomorphismRespectsTags) {
  LeveledForest a = chain(2), b = chain(2);
  a.set_tag(1, "c");
  EXPECT_FALSE(isomorphic(a, b));
  b.set_tag(1, "c");
  EXPECT_TRUE(isomorphic(a, b));
  b.set_tag(1, "d");
  EXPECT_FALSE(oracle::brute_isomorphic(a, b));
  EXPECT_FALSE(isomorphic(a, b));
}

}  // namespace
}  // namespace lf
