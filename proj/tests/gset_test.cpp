#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "zset/brute.hpp"
#include "zset/gset.hpp"

using namespace zset;

namespace {

std::vector<StabilizerSpec> specs(const ZSet& x) {
  std::vector<StabilizerSpec> out;
  for (const auto& o : x.orbits()) out.push_back(o.set.stab());
  return out;
}

struct Frame {
  brute::Carrier x, y;
  std::vector<std::size_t> to_brute_x, to_brute_y;
};

Frame frame(const ZSet& x, const ZSet& y) {
  auto all = specs(x);
  auto sy = specs(y);
  all.insert(all.end(), sy.begin(), sy.end());
  auto [cs, ms] = brute::common_frame(all);
  Frame f{brute::carrier(specs(x), cs, ms), brute::carrier(sy, cs, ms), {}, {}};
  for (std::size_t e = 0; e < x.size(); ++e) f.to_brute_x.push_back(f.x.find(x.orbit_of(e), x.element(e).rep));
  for (std::size_t e = 0; e < y.size(); ++e) f.to_brute_y.push_back(f.y.find(y.orbit_of(e), y.element(e).rep));
  return f;
}

/// Equivariant functions X -> Y found by exhaustive backtracking, in brute
/// numbering.
std::set<std::vector<std::size_t>> brute_maps(const Frame& f) {
  auto v = brute::equivariant_functions(f.x.size(), f.y.size(), f.x.gens, f.y.gens);
  return {v.begin(), v.end()};
}

std::vector<std::size_t> to_brute(const Frame& f, const EqMap& m) {
  std::vector<std::size_t> t(f.x.size());
  auto table = m.table();
  for (std::size_t e = 0; e < table.size(); ++e) t[f.to_brute_x[e]] = f.to_brute_y[table[e]];
  return t;
}

/// Every map X -> Y for transitive X via hom_enumerate.
std::vector<EqMap> maps_from_orbit(const ZSet& x, const ZSet& y) {
  std::vector<EqMap> out;
  for (const auto& im : hom_enumerate(x.orbit(0).set, y)) out.emplace_back(x, y, std::vector<OrbitImage>{im});
  return out;
}

std::vector<DepthFn> depths(Depth max_depth, Coord coords) {
  std::vector<DepthFn> out{DepthFn{}};
  if (coords >= 1) {
    for (Depth a = 2; a <= max_depth; ++a) out.push_back(DepthFn{{0, a}});
  }
  if (coords >= 2) {
    for (Depth a = 2; a <= max_depth; ++a) out.push_back(DepthFn{{1, a}});
    for (Depth a = 2; a <= max_depth; ++a) {
      for (Depth b = 2; b <= max_depth; ++b) out.push_back(DepthFn{{0, a}, {1, b}});
    }
  }
  return out;
}

}  // namespace

TEST(HomEnumerate, Examples) {
  auto x4 = transitive(DepthFn{{0, 4}});
  auto y2 = transitive(DepthFn{{0, 2}});
  auto maps = maps_from_orbit(x4, y2);
  EXPECT_EQ(maps.size(), 2u);
  EXPECT_EQ(brute_maps(frame(x4, y2)).size(), 2u);
  EXPECT_EQ(maps[0].apply(Element{"o0", ResidueVector{{0, 3}}}), (Element{"o0", ResidueVector{{0, 1}}}));

  auto self = maps_from_orbit(x4, x4);
  EXPECT_NE(std::find(self.begin(), self.end(), identity(x4)), self.end());

  EXPECT_TRUE(maps_from_orbit(y2, x4).empty());
  EXPECT_TRUE(brute_maps(frame(y2, x4)).empty());
}

TEST(EqMap, RejectsIllDefinedAssignment) {
  auto x2 = transitive(DepthFn{{0, 2}});
  auto y4 = transitive(DepthFn{{0, 4}});
  EXPECT_THROW(EqMap(x2, y4, {OrbitImage{0, 0}}), InputError);
  EXPECT_THROW(EqMap(x2, y4, {}), InputError);
}

TEST(Act, Examples) {
  auto z4 = transitive(DepthFn{{0, 4}});
  Element three{"o0", ResidueVector{{0, 3}}};
  EXPECT_EQ(act(ResidueVector{}, three, z4), three);
  EXPECT_EQ(act(ResidueVector{{0, 1}}, three, z4), (Element{"o0", ResidueVector{}}));

  auto zh = transitive(StabilizerSpec{DepthFn{{0, 4}}, {ResidueVector{{0, 2}}}});
  Element base{"o0", ResidueVector{}};
  EXPECT_EQ(act(ResidueVector{{0, 2}}, base, zh), base);
  EXPECT_EQ(zh.size(), 2u);
}

TEST(Act, IsAnActionOnEveryPoint) {
  ZSet x({Orbit{"a", TransitiveZSet(DepthFn{{0, 3}, {1, 2}})},
          Orbit{"b", TransitiveZSet(StabilizerSpec{DepthFn{{0, 2}, {1, 2}}, {ResidueVector{{0, 1}, {1, 1}}}})}});
  AmbientGroup grp(x.ambient());
  for (std::size_t e = 0; e < x.size(); ++e) {
    auto el = x.element(e);
    EXPECT_EQ(act(ResidueVector{}, el, x), el);
    for (std::size_t g = 0; g < grp.order(); ++g) {
      for (std::size_t h = 0; h < grp.order(); ++h) {
        auto gv = grp.decode(g), hv = grp.decode(h);
        EXPECT_EQ(x.act(gv, x.act(hv, e)), x.act(grp.decode(grp.add(g, h)), e));
      }
    }
  }
}

TEST(Pi0, Examples) {
  EXPECT_EQ(pi0(terminal()), std::vector<std::string>{"*"});
  EXPECT_TRUE(pi0(initial()).empty());
  auto two = ZSet({Orbit{"t", {}}, Orbit{"f", {}}});
  EXPECT_EQ(pi0(two).size(), 2u);
}

TEST(IsEpi, Examples) {
  auto z4 = transitive(DepthFn{{0, 4}});
  auto z2 = transitive(DepthFn{{0, 2}});
  EXPECT_TRUE(is_epi(identity(z4)));
  EqMap q(z4, z2, {OrbitImage{0, 0}});
  EXPECT_TRUE(is_epi(q));
  EXPECT_TRUE(surjective_on_carriers(q));

  auto two_orbits = ZSet({Orbit{"a", TransitiveZSet(DepthFn{{0, 2}})}, Orbit{"b", TransitiveZSet(DepthFn{{0, 2}})}});
  EqMap inc(z2, two_orbits, {OrbitImage{0, 0}});
  EXPECT_FALSE(is_epi(inc));
  EXPECT_FALSE(surjective_on_carriers(inc));
}

TEST(Coproduct, Examples) {
  auto z3 = transitive(DepthFn{{0, 3}}, "x");
  auto c0 = coproduct(z3, initial());
  EXPECT_TRUE(isomorphic(c0.object, z3));
  EXPECT_EQ(pi0(c0.object), pi0(z3));

  auto one_one = coproduct(terminal(), terminal());
  auto two = ZSet({Orbit{"t", {}}, Orbit{"f", {}}});
  EXPECT_TRUE(isomorphic(one_one.object, two));
  EXPECT_EQ(pi0(one_one.object), (std::vector<std::string>{"l.*", "r.*"}));

  auto y = transitive(DepthFn{{1, 2}}, "y");
  auto c = coproduct(z3, y);
  EXPECT_EQ(pi0(c.object), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(c.inl.apply(Element{"x", ResidueVector{{0, 2}}}), (Element{"x", ResidueVector{{0, 2}}}));
  EXPECT_EQ(c.inr.apply(Element{"y", ResidueVector{{1, 1}}}), (Element{"y", ResidueVector{{1, 1}}}));
}

TEST(Pullback, Examples) {
  auto z2 = transitive(DepthFn{{0, 2}});
  auto z3 = transitive(DepthFn{{0, 3}});
  auto p = product(z2, z3);
  ASSERT_EQ(p.object.orbit_count(), 1u);
  EXPECT_EQ(p.object.orbit(0).set.canonical(), product_form(DepthFn{{0, 6}}));

  auto x = ZSet({Orbit{"a", TransitiveZSet(DepthFn{{0, 4}})}, Orbit{"b", TransitiveZSet(DepthFn{{1, 3}})}});
  auto diag = pullback(identity(x), identity(x));
  EXPECT_TRUE(isomorphic(diag.object, x));
  EXPECT_EQ(diag.proj1.table(), diag.proj2.table());

  auto z4 = transitive(DepthFn{{0, 4}});
  auto z6 = transitive(DepthFn{{0, 6}});
  EqMap f(z4, z2, {OrbitImage{0, 0}}), g(z6, z2, {OrbitImage{0, 0}});
  auto q = pullback(f, g);
  EXPECT_EQ(q.object.size(), 12u);
  ASSERT_EQ(q.object.orbit_count(), 1u);
  EXPECT_EQ(q.object.orbit(0).set.canonical().base, (DepthFn{{0, 12}}));
  EXPECT_EQ(compose(f, q.proj1), compose(g, q.proj2));
}

TEST(Pullback, EmptyFibre) {
  auto two = ZSet({Orbit{"t", {}}, Orbit{"f", {}}});
  EqMap t(terminal(), two, {OrbitImage{0, 0}}), f(terminal(), two, {OrbitImage{1, 0}});
  EXPECT_TRUE(pullback(t, f).object.empty());
}

TEST(CanonicalCover, Examples) {
  auto z4 = transitive(DepthFn{{0, 4}});
  auto c = canonical_cover(z4);
  EXPECT_EQ(c, identity(z4));

  auto zh = transitive(StabilizerSpec{DepthFn{{0, 4}}, {ResidueVector{{0, 2}}}});
  auto ch = canonical_cover(zh);
  EXPECT_EQ(ch.source().size(), 4u);
  EXPECT_EQ(ch.target().size(), 2u);
  EXPECT_TRUE(is_epi(ch));
  EXPECT_TRUE(surjective_on_carriers(ch));

  auto c0 = canonical_cover(initial());
  EXPECT_TRUE(c0.source().empty());
  EXPECT_TRUE(is_epi(c0));
}

TEST(FiniteLimits, Examples) {
  auto x = transitive(DepthFn{{0, 5}});
  EXPECT_TRUE(isomorphic(product(terminal(), x).object, x));
  auto e = equalizer(identity(x), identity(x));
  EXPECT_TRUE(isomorphic(e.object, x));
  auto p = product(transitive(DepthFn{{0, 2}}), transitive(DepthFn{{0, 3}}));
  EXPECT_TRUE(isomorphic(p.object, transitive(DepthFn{{0, 6}})));
  EXPECT_EQ(count_maps(initial(), x), 1u);
  EXPECT_EQ(count_maps(x, terminal()), 1u);
  EXPECT_EQ(count_maps(x, initial()), 0u);

  // two distinct maps Z/4 -> Z/2 have empty equalizer
  auto z4 = transitive(DepthFn{{0, 4}});
  auto z2 = transitive(DepthFn{{0, 2}});
  EXPECT_TRUE(equalizer(EqMap(z4, z2, {OrbitImage{0, 0}}), EqMap(z4, z2, {OrbitImage{0, 1}})).object.empty());
}

TEST(FiniteLimits, PullbackIsUniversalOnSmallCone) {
  auto z2 = transitive(DepthFn{{0, 2}});
  auto z4 = transitive(DepthFn{{0, 4}});
  EqMap f(z4, z2, {OrbitImage{0, 0}});
  auto pb = pullback(f, f);
  // cones from Z/4: (a, b) with f a = f b; each factors uniquely
  std::size_t cones = 0;
  for (const auto& a : maps_from_orbit(z4, z4)) {
    for (const auto& b : maps_from_orbit(z4, z4)) {
      if (!(compose(f, a) == compose(f, b))) continue;
      ++cones;
      auto u = pair_into(pb, a, b);
      EXPECT_EQ(compose(pb.proj1, u), a);
      EXPECT_EQ(compose(pb.proj2, u), b);
    }
  }
  EXPECT_EQ(cones, count_maps(z4, pb.object));
}

// For product-form orbits a map exists iff the target depth
// divides the source depth pointwise, and hom_enumerate finds exactly the
// maps of the exhaustive search.
TEST(HomEnumerate, DivisibilityCriterionMatchesBruteForce) {
  auto ds = depths(4, 2);
  for (const auto& d1 : ds) {
    for (const auto& d2 : ds) {
      auto x = transitive(d1), y = transitive(d2);
      auto maps = maps_from_orbit(x, y);
      EXPECT_EQ(!maps.empty(), depth_divides(d1, d2));
      auto fr = frame(x, y);
      std::set<std::vector<std::size_t>> lib;
      for (const auto& m : maps) lib.insert(to_brute(fr, m));
      EXPECT_EQ(lib, brute_maps(fr)) << d1.to_string() << " -> " << d2.to_string();
    }
  }
}

// General stabilizers: well-definedness accepts exactly the equivariant maps.
TEST(HomEnumerate, GeneralStabilizersMatchBruteForce) {
  std::vector<TransitiveZSet> sets;
  for (const auto& d : depths(4, 2)) {
    AmbientGroup grp(d);
    for (std::size_t g = 0; g < grp.order(); ++g) sets.emplace_back(StabilizerSpec{d, {grp.decode(g)}});
  }
  for (std::size_t a = 0; a < sets.size(); a += 3) {
    for (std::size_t b = 0; b < sets.size(); b += 5) {
      auto x = ZSet::of({sets[a]});
      auto y = ZSet::of({sets[b]});
      if (x.size() * y.size() > 36 * 36) continue;
      auto fr = frame(x, y);
      std::set<std::vector<std::size_t>> lib;
      for (const auto& m : maps_from_orbit(x, y)) lib.insert(to_brute(fr, m));
      ASSERT_EQ(lib, brute_maps(fr));
    }
  }
}

// Every orbit of a fibered product of product-form orbits is
// product-form with depth the pointwise lcm.
TEST(Pullback, OrbitDepthIsLcm) {
  auto ds = depths(4, 2);
  for (std::size_t a = 0; a < ds.size(); a += 2) {
    for (std::size_t b = 0; b < ds.size(); b += 3) {
      for (const auto& d3 : {DepthFn{}, DepthFn{{0, 2}}, DepthFn{{1, 2}}}) {
        if (!depth_divides(ds[a], d3) || !depth_divides(ds[b], d3)) continue;
        auto x = transitive(ds[a]), y = transitive(ds[b]), s = transitive(d3);
        for (const auto& f : maps_from_orbit(x, s)) {
          for (const auto& g : maps_from_orbit(y, s)) {
            auto pb = pullback(f, g);
            std::size_t total = 0;
            for (const auto& o : pb.object.orbits()) {
              EXPECT_TRUE(o.set.product_form());
              EXPECT_EQ(o.set.canonical().base, depth_meet(ds[a], ds[b]));
              total += o.set.size();
            }
            EXPECT_EQ(total, x.size() * y.size() / s.size());
          }
        }
      }
    }
  }
}

TEST(IsEpi, AgreesWithCarrierSurjectivity) {
  std::vector<ZSet> objs{
      initial(), terminal(), transitive(DepthFn{{0, 2}}), transitive(DepthFn{{0, 4}}),
      ZSet::of({TransitiveZSet(DepthFn{{0, 2}}), TransitiveZSet()}),
      ZSet::of({TransitiveZSet(DepthFn{{0, 4}}), TransitiveZSet(DepthFn{{0, 3}})})};
  for (const auto& x : objs) {
    for (const auto& y : objs) {
      if (x.orbit_count() != 1) continue;
      for (const auto& m : maps_from_orbit(x, y)) EXPECT_EQ(is_epi(m), surjective_on_carriers(m));
    }
  }
}

// X x_S (Y1 + Y2) ~ (X x_S Y1) + (X x_S Y2)
TEST(Pullback, Extensive) {
  auto s = transitive(DepthFn{{0, 2}});
  auto x = transitive(DepthFn{{0, 4}});
  auto y1 = transitive(DepthFn{{0, 6}}, "y1");
  auto y2 = transitive(DepthFn{{0, 2}, {1, 3}}, "y2");
  auto sum = coproduct(y1, y2);
  for (const auto& f : maps_from_orbit(x, s)) {
    for (std::size_t p1 = 0; p1 < 2; ++p1) {
      for (std::size_t p2 = 0; p2 < 2; ++p2) {
        EqMap g(sum.object, s, {OrbitImage{0, p1}, OrbitImage{0, p2}});
        auto whole = pullback(f, g).object;
        auto parts = coproduct(pullback(f, compose(g, sum.inl)).object, pullback(f, compose(g, sum.inr)).object);
        EXPECT_TRUE(isomorphic(whole, parts.object));
      }
    }
  }
}
