#include <gtest/gtest.h>

#include <vector>

#include "zset/brute.hpp"
#include "zset/depth.hpp"
#include "zset/group.hpp"

using namespace zset;

namespace {

std::vector<DepthFn> small_depths(Depth max_depth) {
  // support within {0, 1}
  std::vector<DepthFn> out;
  for (Depth a = 1; a <= max_depth; ++a) {
    for (Depth b = 1; b <= max_depth; ++b) out.push_back(DepthFn{{0, a}, {1, b}});
  }
  return out;
}

}  // namespace

TEST(DepthFn, CanonicalFormDropsOnes) {
  DepthFn d{{0, 1}, {3, 5}};
  EXPECT_EQ(d.support_size(), 1u);
  EXPECT_EQ(d(0), 1u);
  EXPECT_EQ(d(3), 5u);
  EXPECT_EQ(d, (DepthFn{{3, 5}}));
  EXPECT_THROW(d.set(2, 0), InputError);
}

TEST(DepthMeet, Examples) {
  EXPECT_EQ(depth_meet(DepthFn{{0, 2}}, DepthFn{{0, 3}}), (DepthFn{{0, 6}}));
  DepthFn d{{1, 4}, {5, 9}};
  EXPECT_EQ(depth_meet(d, DepthFn{}), d);

  DepthFn a{{0, 4}, {2, 3}}, b{{0, 6}};
  // frozen from brute::intersect_depth
  DepthFn expected{{0, 12}, {2, 3}};
  EXPECT_EQ(brute::intersect_depth(a, b), expected);
  EXPECT_EQ(depth_meet(a, b), expected);
}

TEST(DepthDivides, Examples) {
  EXPECT_TRUE(brute::contained(DepthFn{{0, 4}}, DepthFn{{0, 2}}));
  EXPECT_TRUE(depth_divides(DepthFn{{0, 4}}, DepthFn{{0, 2}}));
  DepthFn d{{0, 3}, {4, 2}};
  EXPECT_TRUE(depth_divides(d, d));
  EXPECT_FALSE(brute::contained(DepthFn{{0, 2}}, DepthFn{{0, 4}}));
  EXPECT_FALSE(depth_divides(DepthFn{{0, 2}}, DepthFn{{0, 4}}));
}

TEST(DeltaDepth, Examples) {
  EXPECT_EQ(delta_depth(3, 1), (DepthFn{{1, 3}}));
  EXPECT_EQ(delta_depth(1, 7), DepthFn{});
  EXPECT_EQ(delta_depth(4, 0), (DepthFn{{0, 4}}));
  EXPECT_THROW(delta_depth(0, 0), InputError);
}

TEST(DepthLattice, MeetIsSemilatticeExhaustively) {
  auto ds = small_depths(6);
  for (const auto& a : ds) {
    EXPECT_EQ(depth_meet(a, a), a);
    EXPECT_EQ(depth_meet(a, DepthFn{}), a);
    for (const auto& b : ds) {
      auto m = depth_meet(a, b);
      EXPECT_EQ(m, depth_meet(b, a));
      EXPECT_TRUE(depth_divides(m, a));
      EXPECT_TRUE(depth_divides(m, b));
      if (depth_divides(a, b) && depth_divides(b, a)) EXPECT_EQ(a, b);
      EXPECT_EQ(depth_divides(a, b), brute::contained(a, b)) << a.to_string() << " " << b.to_string();
      for (const auto& c : ds) {
        EXPECT_EQ(depth_meet(depth_meet(a, b), c), depth_meet(a, depth_meet(b, c)));
        // least lower bound
        if (depth_divides(c, a) && depth_divides(c, b)) EXPECT_TRUE(depth_divides(c, m));
      }
    }
  }
}

TEST(DepthMeet, AgreesWithIntersectionByEnumeration) {
  auto ds = small_depths(4);
  for (const auto& a : ds) {
    for (const auto& b : ds) EXPECT_EQ(depth_meet(a, b), brute::intersect_depth(a, b));
  }
}

TEST(Subgroup, ContainsExamples) {
  StabilizerSpec none{DepthFn{{0, 3}}, {}};
  EXPECT_TRUE(subgroup_contains(none, ResidueVector{}));

  StabilizerSpec s{DepthFn{{0, 4}}, {ResidueVector{{0, 2}}}};
  EXPECT_TRUE(subgroup_contains(s, ResidueVector{{0, 2}}));
  // brute: <2> in Z/4 is {0, 2}
  auto h = brute::generated({4}, {{2}});
  EXPECT_EQ(h, (std::set<brute::Tuple>{{0}, {2}}));
  EXPECT_FALSE(subgroup_contains(s, ResidueVector{{0, 1}}));
  EXPECT_THROW(subgroup_contains(s, ResidueVector{{0, 5}}), InputError);
}

TEST(Subgroup, IndexExamples) {
  EXPECT_EQ(subgroup_index(StabilizerSpec{DepthFn{{0, 4}}, {}}), 4u);
  EXPECT_EQ(subgroup_index(StabilizerSpec{DepthFn{{0, 4}}, {ResidueVector{{0, 2}}}}), 2u);
  EXPECT_EQ(subgroup_index(StabilizerSpec{}), 1u);
}

TEST(Subgroup, UnreducedGeneratorRejected) {
  StabilizerSpec s{DepthFn{{0, 4}}, {ResidueVector{{0, 6}}}};
  EXPECT_THROW(s.validate(), InputError);
  StabilizerSpec outside{DepthFn{{0, 4}}, {ResidueVector{{1, 1}}}};
  EXPECT_THROW(outside.validate(), InputError);
}

// index * |generated subgroup| = |A_d| for every single-generator spec with
// support <= 2 and depth <= 6, and the generated subgroup matches the
// brute-force closure.
TEST(Subgroup, IndexTimesOrderIsGroupOrder) {
  for (const auto& d : small_depths(6)) {
    AmbientGroup grp(d);
    std::vector<std::int64_t> mod;
    for (auto m : grp.moduli()) mod.push_back(static_cast<std::int64_t>(m));
    for (std::size_t g = 0; g < grp.order(); ++g) {
      StabilizerSpec s{d, {grp.decode(g)}};
      auto h = generated_subgroup(s);
      EXPECT_EQ(subgroup_index(s) * h.order(), grp.order());
      brute::Tuple gt;
      for (std::size_t k = 0; k < grp.rank(); ++k) gt.push_back(static_cast<std::int64_t>(grp.digit(g, k)));
      EXPECT_EQ(h.order(), brute::generated(mod, {gt}).size());
    }
  }
}

TEST(Subgroup, CanonicalFormIdentifiesEqualSubgroups) {
  // <2> mod 4 is 2Z, the same subgroup as base {0->2}
  StabilizerSpec a{DepthFn{{0, 4}}, {ResidueVector{{0, 2}}}};
  StabilizerSpec b{DepthFn{{0, 2}}, {}};
  EXPECT_EQ(canonicalize(a), canonicalize(b));
  EXPECT_EQ(canonicalize(a).base, (DepthFn{{0, 2}}));
  EXPECT_TRUE(canonicalize(a).generators.empty());

  // the diagonal in Z/2 x Z/2 is not product-form
  StabilizerSpec diag{DepthFn{{0, 2}, {1, 2}}, {ResidueVector{{0, 1}, {1, 1}}}};
  auto c = canonicalize(diag);
  EXPECT_EQ(c.base, (DepthFn{{0, 2}, {1, 2}}));
  EXPECT_EQ(c.generators.size(), 1u);
  EXPECT_TRUE(subgroup_le(diag, c) && subgroup_le(c, diag));

  // base {0->4, 1->2} with generator (2, 1): same subgroup as base {0->4, 1->2}
  // generated by (2,1) and its multiples; canonical base keeps 4 and 2
  StabilizerSpec e{DepthFn{{0, 4}, {1, 2}}, {ResidueVector{{0, 2}, {1, 1}}}};
  auto ce = canonicalize(e);
  EXPECT_EQ(ce.base, (DepthFn{{0, 4}, {1, 2}}));
  EXPECT_EQ(subgroup_index(ce), 4u);
}
