#include <gtest/gtest.h>

#include "lf/colors.hpp"
#include "lf/errors.hpp"
#include "lf/forest.hpp"
#include "lf/random.hpp"
#include "lf/testing/oracles.hpp"

namespace lf {
namespace {

LeveledForest fan(int width, int depth) {
  LeveledForest f;
  const NodeId r = f.add_root();
  for (int i = 0; i < width; ++i) {
    NodeId x = f.add_child(r);
    for (int d = 2; d <= depth; ++d) x = f.add_child(x);
  }
  return f;
}

TEST(Colors, FrozenTexts) {
  const auto f = fan(2, 1);
  EXPECT_EQ(to_string(coloring(HView{f, 1}, 1)[0]), "(0 [(1 [])*1])");
  EXPECT_EQ(to_string(coloring(HView{f, 1}, 2)[0]), "(0 [(1 [])*2])");
  EXPECT_EQ(to_string(coloring(HView{f, 1}, 0)[0]), "(0 [])");
  const auto g = fan(3, 2);
  EXPECT_EQ(to_string(coloring(HView{g, 1}, 2)[0]), "(0 [(1 [])*2])");
  EXPECT_EQ(to_string(coloring(HView{g, 2}, 4)[0]), "(0 [(1 [(2 [])*1])*3])");
  // Level-2 nodes fall outside the 1-view.
  EXPECT_EQ(to_string(coloring(HView{g, 1}, 2)[2]), "(-1 [])");
}

TEST(Colors, TextRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_forest(rng, uniform_int(rng, 1, 20), 4, 0.2, 1);
    for (const auto& c : coloring(HView{f, uniform_int(rng, 1, 3)}, uniform_int(rng, 0, 3))) EXPECT_EQ(parse_color(to_string(c)), c);
  }
  EXPECT_THROW(parse_color("(0 [(1 [])*1"), ParseError);
}

TEST(Colors, LargeBoundSeparatesIsomorphismClasses) {
  // With k at least the largest branching and h at least the height, two
  // nodes share a color exactly when the trees above them are isomorphic.
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_forest(rng, uniform_int(rng, 2, 12), 3, 0.3);
    const auto colors = coloring(HView{f, 3}, 12);
    for (NodeId x = 0; x < f.size(); ++x)
      for (NodeId y = x + 1; y < f.size(); ++y) {
        if (f.level(x) != f.level(y)) continue;
        EXPECT_EQ(colors[x] == colors[y], oracle::brute_isomorphic(tree_above(f, x), tree_above(f, y)));
      }
  }
}

TEST(Colors, CapOnlyCoarsens) {
  Rng rng(10);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_forest(rng, uniform_int(rng, 2, 15), 3, 0.2);
    const auto fine = coloring(HView{f, 3}, 3);
    const auto coarse = coloring(HView{f, 3}, 1);
    for (NodeId x = 0; x < f.size(); ++x)
      for (NodeId y = 0; y < f.size(); ++y)
        if (fine[x] == fine[y]) {
          EXPECT_EQ(coarse[x], coarse[y]);
        }
  }
}

TEST(Colors, BuildYRealizesEveryColor) {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    const int h = uniform_int(rng, 1, 3), k = uniform_int(rng, 1, 3);
    const auto f = random_forest(rng, uniform_int(rng, 1, 25), 4, 0.2);
    const auto colors = coloring(HView{f, h}, k);
    for (NodeId x = 0; x < f.size(); ++x) {
      if (f.level(x) != 0) continue;
      const auto y = build_Y(colors[x], k, h);
      EXPECT_EQ(coloring(HView{y, h}, k)[0], colors[x]);
      EXPECT_LE(y.height(), h);
    }
  }
}

TEST(Colors, BuildYRejectsMalformedColors) {
  EXPECT_THROW(build_Y(parse_color("(1 [])"), 1, 1), ContractError);
  EXPECT_THROW(build_Y(parse_color("(0 [(1 [])*3])"), 2, 1), ContractError);
  EXPECT_THROW(build_Y(parse_color("(0 [(2 [])*1])"), 2, 2), ContractError);
  EXPECT_EQ(color_defect(parse_color("(0 [(1 [])*2])"), 2, 1), "");
}

TEST(Colors, ShiftColor) {
  const auto c = parse_color("(0 [(1 [])*2])");
  EXPECT_EQ(to_string(shift_color(c, 2)), "(2 [(3 [])*2])");
  EXPECT_EQ(color_top_level(c), 1);
}

TEST(Colors, CensusCountsRootsAndOutsideNodes) {
  LeveledForest f = fan(2, 2);
  f.add_root();
  f.add_root();
  f.add_root();
  f.add_unleveled();
  const HView v{f, 1};
  const auto exact = root_census(v, 1, std::nullopt);
  EXPECT_EQ(exact.at(parse_color("(0 [])")), 3);
  EXPECT_EQ(exact.at(parse_color("(0 [(1 [])*1])")), 1);
  EXPECT_EQ(exact.at(outside_color()), 3);  // two level-2 nodes and the unleveled point
  const auto capped = root_census(v, 1, 2);
  EXPECT_EQ(capped.at(parse_color("(0 [])")), 2);
  const auto excluded = root_census(v, 1, std::nullopt, {0});
  EXPECT_EQ(excluded.count(parse_color("(0 [(1 [])*1])")), 0u);
  EXPECT_THROW(root_census(v, 1, 0), ContractError);
}

TEST(Colors, FingerprintMeetPoints) {
  const auto f = fan(2, 2);  // 0; 1-2; 3-4
  const auto fp = fingerprint(f, {2, 4, 0}, {{1, 2}});
  ASSERT_TRUE(fp.meet[0][1].has_value());
  EXPECT_EQ(*fp.meet[0][1], std::make_pair(2, 2));
  EXPECT_EQ(*fp.meet[0][2], std::make_pair(2, 0));
  EXPECT_EQ(fp.elements[0].ancestor_colors[0].size(), 3u);
  LeveledForest two = fan(1, 1);
  two.add_root();
  EXPECT_FALSE(fingerprint(two, {0, 2}, {{1, 1}}).meet[0][1].has_value());
}

TEST(Colors, TypesAgreeIsInvariantUnderIsomorphism) {
  Rng rng(14);
  for (int i = 0; i < 80; ++i) {
    const auto f = random_forest(rng, uniform_int(rng, 2, 10), 3, 0.3);
    const auto g = canonicalize(f);
    // Map x to its image in g through the tag trick: tag, canonicalize, read back.
    LeveledForest tagged = f;
    const NodeId x = uniform_int(rng, 0, f.size() - 1);
    tagged.set_tag(x, "p");
    const auto ct = canonicalize(tagged);
    const NodeId gx = *ct.find_tag("p");
    EXPECT_TRUE(types_agree(f, {x}, strip_tags(ct), {gx}, 2, 2));
    EXPECT_TRUE(types_agree(f, {}, g, {}, 3, 3));
  }
}

TEST(Colors, TypesAgreeSeesCensusDifferences) {
  LeveledForest a = fan(1, 1), b = fan(1, 1);
  b.add_root();
  EXPECT_FALSE(types_agree(a, {}, b, {}, 2, 1));
  LeveledForest c = fan(1, 1);
  c.add_root();
  c.add_root();
  EXPECT_TRUE(types_agree(b, {}, c, {}, 1, 1));  // capped at k = 1
}

}  // namespace
}  // namespace lf
