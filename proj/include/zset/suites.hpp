#pragma once

// Property suites over bounded enumerations. Each returns its instance count
// and every failure as JSON; the payload is deterministic so it can be
// replayed bit for bit.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "zset/brute.hpp"
#include "zset/enumerate.hpp"
#include "zset/io.hpp"
#include "zset/oracle.hpp"
#include "zset/topos.hpp"

namespace zset {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::vector<json> failures;
  json summary = json::object();

  bool ok() const { return failures.empty(); }
};

inline json payload(const SuiteResult& r) {
  return {{"suite", r.name}, {"instances", r.instances}, {"failures", r.failures}, {"summary", r.summary}};
}

namespace detail {

inline std::size_t brute_hom_count(const ZSet& x, const ZSet& y) {
  std::vector<StabilizerSpec> all;
  std::vector<StabilizerSpec> sx, sy;
  for (const auto& o : x.orbits()) sx.push_back(o.set.stab());
  for (const auto& o : y.orbits()) sy.push_back(o.set.stab());
  all = sx;
  all.insert(all.end(), sy.begin(), sy.end());
  auto [cs, ms] = brute::common_frame(all);
  auto cx = brute::carrier(sx, cs, ms);
  auto cy = brute::carrier(sy, cs, ms);
  return brute::equivariant_functions(cx.size(), cy.size(), cx.gens, cy.gens).size();
}

}  // namespace detail

/// Maps Z/d1 -> Z/d2 exist iff d2 | d1 pointwise: the library's hom
/// enumeration, the divisibility test and a brute-force search over carrier
/// functions must agree on every ordered pair, including the map count.
inline SuiteResult lemma41_suite(const SearchBounds& b) {
  SuiteResult r{"lemma41", 0, {}, json::object()};
  auto ds = enum_depthfns(b);
  std::size_t nonempty = 0;
  for (const auto& d1 : ds) {
    for (const auto& d2 : ds) {
      ++r.instances;
      ZSet x = transitive(d1), y = transitive(d2);
      const std::size_t lib = hom_enumerate(x.orbit(0).set, y).size();
      const bool crit = depth_divides(d1, d2);
      const std::size_t brute = detail::brute_hom_count(x, y);
      if (lib > 0) ++nonempty;
      if ((lib > 0) != crit || (brute > 0) != crit || lib != brute) {
        r.failures.push_back(
            {{"d1", to_json(d1)}, {"d2", to_json(d2)}, {"library", lib}, {"criterion", crit}, {"brute", brute}});
      }
    }
  }
  r.summary = {{"depth_functions", ds.size()}, {"pairs", r.instances}, {"nonempty", nonempty}};
  return r;
}

/// Every orbit of Z/d1 x_{Z/d3} Z/d2, computed on raw pairs, has depth
/// lcm(d1, d2), and the library pullback has the same orbits.
inline SuiteResult lemma42_suite(const SearchBounds& b) {
  SuiteResult r{"lemma42", 0, {}, json::object()};
  auto ds = enum_depthfns(b);
  std::size_t triples = 0, orbits = 0;
  for (const auto& d3 : ds) {
    ZSet s = transitive(d3);
    for (const auto& d1 : ds) {
      if (!depth_divides(d1, d3)) continue;
      ZSet x = transitive(d1);
      for (const auto& d2 : ds) {
        if (!depth_divides(d2, d3)) continue;
        ZSet y = transitive(d2);
        ++triples;
        const DepthFn expected = depth_meet(d1, d2);
        for_each_map(x, s, [&](const EqMap& f) {
          for_each_map(y, s, [&](const EqMap& g) {
            ++r.instances;
            auto raw = oracle_fibered_product(f, g);
            auto pb = pullback(f, g);
            bool good = raw.orbit_count() == pb.object.orbit_count();
            for (std::size_t k = 0; k < raw.orbit_count(); ++k) {
              ++orbits;
              good = good && raw.orbit_depth[k] == expected && raw.orbit_size[k] == expected.index();
            }
            for (const auto& o : pb.object.orbits()) {
              good = good && o.set.product_form() && o.set.canonical().base == expected;
            }
            if (!good) {
              r.failures.push_back({{"d1", to_json(d1)}, {"d2", to_json(d2)}, {"d3", to_json(d3)},
                                    {"f", to_json(f)}, {"g", to_json(g)}});
            }
            return true;
          });
          return true;
        });
      }
    }
  }
  r.summary = {{"triples", triples}, {"map_pairs", r.instances}, {"orbits", orbits}};
  return r;
}

/// Booleanness, epi vs surjectivity, extensivity, the exponential law and
/// pi0 -| disc -| Gamma over bounded objects.
inline SuiteResult props_suite(const SearchBounds& b, std::size_t exp_carrier_cap = 4096) {
  SuiteResult r{"props", 0, {}, json::object()};
  auto fail = [&](const std::string& check, json detail) {
    r.failures.push_back({{"check", check}, {"detail", std::move(detail)}});
  };
  std::vector<ZSet> objs{initial()};
  for (auto& x : enum_objects(b)) objs.push_back(std::move(x));
  auto conn = enum_connected(b);

  // 1 + 1 is the subobject classifier, and it classifies every subobject
  std::size_t boolean = 0;
  {
    auto sum = coproduct(terminal("t"), terminal("f"));
    ++boolean;
    auto chi = classify(sum.inl);
    if (!isomorphic(sum.object, two()) || !injective_on_carriers(chi) || !surjective_on_carriers(chi)) {
      fail("boolean", "1 + 1 is not 2");
    }
  }
  for (const auto& x : objs) {
    ++boolean;
    const std::size_t n = x.orbit_count();
    if (count_maps(x, two()) != subobject_count(x)) fail("boolean", {{"object", to_json(x)}, {"why", "Hom(X, 2)"}});
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<bool> keep(n);
      for (std::size_t k = 0; k < n; ++k) keep[k] = (mask >> k) & 1U;
      auto [sub, inc] = restrict_orbits(x, keep);
      auto back = pullback(classify(inc), truth());
      if (back.object.size() != sub.size() || !isomorphic(back.object, sub)) {
        fail("boolean", {{"object", to_json(x)}, {"mask", mask}});
      }
    }
  }

  // epi iff surjective on pi0 iff surjective on carriers
  std::size_t epis = 0, maps = 0;
  for (const auto& x : objs) {
    for (const auto& y : objs) {
      for_each_map(x, y, [&](const EqMap& f) {
        ++maps;
        bool pi0_onto = true;
        for (bool hit : pi0_image(f)) pi0_onto = pi0_onto && hit;
        const bool e = is_epi(f);
        if (e) ++epis;
        if (e != pi0_onto || e != surjective_on_carriers(f)) fail("epi", {{"map", to_json(f)}});
        return true;
      });
    }
  }

  // X x_S (Y1 + Y2) = X x_S Y1 + X x_S Y2, with disjoint injections and the
  // empty pullback over 0
  std::size_t extensive = 0;
  for (const auto& s : conn) {
    ZSet sz = ZSet::of({s});
    for (const auto& xs : conn) {
      ZSet x = ZSet::of({xs});
      for_each_map(x, sz, [&](const EqMap& f) {
        if (!pullback(f, from_initial(sz)).object.empty()) fail("extensive", {{"f", to_json(f)}, {"why", "over 0"}});
        for (const auto& y : objs) {
          if (y.orbit_count() != 2) continue;
          auto [y1, i1] = restrict_orbits(y, {true, false});
          auto [y2, i2] = restrict_orbits(y, {false, true});
          if (!pullback(i1, i2).object.empty()) fail("extensive", {{"object", to_json(y)}, {"why", "not disjoint"}});
          for_each_map(y, sz, [&](const EqMap& g) {
            ++extensive;
            auto whole = pullback(f, g).object;
            auto parts = coproduct(pullback(f, compose(g, i1)).object, pullback(f, compose(g, i2)).object);
            if (!isomorphic(whole, parts.object)) fail("extensive", {{"f", to_json(f)}, {"g", to_json(g)}});
            return true;
          });
        }
        return true;
      });
    }
  }

  // Hom(A x X, Y) = Hom(A, Y^X)
  std::size_t exp_triples = 0, exp_enumerated = 0, exp_skipped = 0;
  for (const auto& x : objs) {
    for (const auto& y : objs) {
      std::size_t n = 1;
      bool big = false;
      for (std::size_t k = 0; k < x.size() && !big; ++k) {
        n *= y.size();
        big = n > exp_carrier_cap;
      }
      if (big) {
        exp_skipped += objs.size();
        continue;
      }
      auto yx = internal_hom(x, y);
      for (const auto& a : objs) {
        ++exp_triples;
        auto rep = exponential_law(a, x, y, yx);
        if (rep.enumerated) ++exp_enumerated;
        if (rep.lhs != rep.rhs || (rep.enumerated && !rep.bijective)) {
          fail("exponential", {{"A", to_json(a)}, {"X", to_json(x)}, {"Y", to_json(y)}, {"lhs", rep.lhs}, {"rhs", rep.rhs}});
        }
      }
    }
  }

  // pi0 -| disc -| Gamma
  std::size_t adjunctions = 0;
  const std::vector<std::vector<std::string>> label_sets{{}, {"a"}, {"a", "b"}};
  for (const auto& x : objs) {
    for (const auto& labels : label_sets) {
      for (auto kind : {AdjunctionKind::Pi0Discrete, AdjunctionKind::DiscreteGamma}) {
        ++adjunctions;
        auto rep = adjunction_check(kind, labels, x);
        if (rep.lhs != rep.rhs || !rep.bijective) {
          fail(kind == AdjunctionKind::Pi0Discrete ? "pi0_disc" : "disc_gamma",
               {{"object", to_json(x)}, {"labels", labels.size()}});
        }
      }
    }
  }

  r.instances = boolean + maps + extensive + exp_triples + adjunctions;
  r.summary = {{"objects", objs.size()},
               {"boolean", boolean},
               {"maps", maps},
               {"epis", epis},
               {"extensive", extensive},
               {"exponential_triples", exp_triples},
               {"exponential_enumerated", exp_enumerated},
               {"exponential_skipped", exp_skipped},
               {"adjunctions", adjunctions}};
  return r;
}

}  // namespace zset
