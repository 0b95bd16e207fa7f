#pragma once

// The counterexample to WISC at desk scale. Omega is the coproduct of
// Z/delta(n, i) for n = 1..N at a coordinate i unused by the cover. For a
// connected T -> V and a cover Y -> V, every map l: T x_V Y -> Omega lands
// in the components n dividing N0 = d_T(i), so it misses n = N0 + 1.

#include <chrono>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "zset/corpus.hpp"
#include "zset/enumerate.hpp"
#include "zset/forcing.hpp"
#include "zset/io.hpp"
#include "zset/topos.hpp"

namespace zset {

struct OmegaSpec {
  Coord index = 0;
  Depth truncation = 1;

  void validate() const {
    if (truncation < 1) throw InputError("Omega truncation must be >= 1");
  }
};

inline json to_json(const OmegaSpec& s) { return {{"i", s.index}, {"N", s.truncation}}; }

inline OmegaSpec omega_from_json(const json& j) {
  OmegaSpec s;
  const json& i = detail::field(j, "i");
  const json& n = detail::field(j, "N");
  if (!i.is_number_unsigned() || !n.is_number_unsigned()) throw InputError("Omega spec needs natural i and N");
  s.index = i.get<Coord>();
  s.truncation = n.get<Depth>();
  s.validate();
  return s;
}

/// Orbits "n=1".."n=N", orbit n product-form with depth n at the index.
inline ZSet build_omega(const OmegaSpec& spec) {
  spec.validate();
  std::vector<Orbit> orbits;
  for (Depth n = 1; n <= spec.truncation; ++n) {
    orbits.push_back({"n=" + std::to_string(n), TransitiveZSet(delta_depth(n, spec.index))});
  }
  return ZSet(std::move(orbits));
}

/// Omega onto the discrete N-element set by collapsing each orbit.
inline EqMap omega_collapse(const ZSet& omega) {
  ZSet nat = naturals(omega.orbit_count());
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < omega.orbit_count(); ++k) images.push_back({k, 0});
  return EqMap(omega, nat, std::move(images));
}

/// One past the largest coordinate used by Y's stabilizers or d_H; 0 if
/// there is none.
inline Coord fresh_index(const ZSet& y, const DepthFn& d_h) {
  std::optional<Coord> top;
  auto see = [&](const DepthFn& d) {
    for (const auto& [i, n] : d.entries()) {
      (void)n;
      if (!top || i > *top) top = i;
    }
  };
  for (const auto& o : y.orbits()) {
    see(o.set.base());
    see(o.set.canonical().base);
  }
  see(d_h);
  return top ? *top + 1 : 0;
}

inline std::vector<Depth> divisors_up_to(Depth n0, Depth bound) {
  std::vector<Depth> out;
  for (Depth n = 1; n <= bound; ++n) {
    if (n0 % n == 0) out.push_back(n);
  }
  return out;
}

struct NonEpiCertificate {
  std::string kind;  // "divisibility", or "empty_fibre" when T x_V Y is initial
  Depth n0 = 1;
  std::vector<Depth> divisor_set;
  Depth missed_component = 0;
  std::size_t verified_maps = 0;
  std::vector<Depth> image_components;  // union over the verified maps

  friend bool operator==(const NonEpiCertificate&, const NonEpiCertificate&) = default;
};

inline json to_json(const NonEpiCertificate& c) {
  return {{"kind", c.kind},
          {"N0", c.n0},
          {"divisor_set", c.divisor_set},
          {"missed_component", c.missed_component},
          {"verified_maps", c.verified_maps},
          {"image_components", c.image_components}};
}

/// The structure map Y -> V sending every basepoint to the basepoint of the
/// connected V.
inline EqMap cover_to_base(const ZSet& y, const ZSet& v) {
  if (v.orbit_count() != 1) throw InputError("the base V must be connected");
  std::vector<OrbitImage> images;
  for (const auto& o : y.orbits()) {
    if (!o.set.maps_to(v.orbit(0).set)) throw InputError("orbit '" + o.label + "' of Y admits no map to V");
    images.push_back({0, 0});
  }
  return EqMap(y, v, std::move(images));
}

namespace detail {

struct FibreData {
  Pullback pb;
  Depth n0 = 1;
  std::vector<Depth> orbit_depth;  // depth of each fibre orbit at the index
};

inline void check_fresh(const EqMap& y, const OmegaSpec& spec) {
  for (const ZSet* x : {&y.source(), &y.target()}) {
    for (const auto& o : x->orbits()) {
      if (o.set.base()(spec.index) != 1 || o.set.canonical().base(spec.index) != 1) {
        throw InputError("Omega index " + std::to_string(spec.index) + " is used by orbit '" + o.label + "'");
      }
    }
  }
}

/// T x_V Y with N0 read off the minimal base of T, so T need not be
/// product-form: e_i has order N0 on T and order 1 on Y.
inline FibreData fibre(const EqMap& y, const EqMap& r, const OmegaSpec& spec) {
  if (r.source().orbit_count() != 1 || r.target().orbit_count() != 1) {
    throw InputError("T and V must be connected");
  }
  if (!is_epi(r)) throw InvalidCover("T -> V is not an epimorphism");
  if (!(y.target() == r.target())) throw InputError("Y and T lie over different objects");
  check_fresh(y, spec);
  FibreData out;
  out.pb = pullback(r, y);
  out.n0 = r.source().orbit(0).set.canonical().base(spec.index);
  for (const auto& o : out.pb.object.orbits()) out.orbit_depth.push_back(o.set.canonical().base(spec.index));
  return out;
}

}  // namespace detail

namespace detail {

inline NonEpiCertificate certify_with(const FibreData& data, const ZSet& omega, const EqMap& l,
                                      const OmegaSpec& spec) {
  if (!(l.source() == data.pb.object)) throw InputError("l does not start at T x_V Y");
  if (!(l.target() == omega)) throw InputError("l does not land in Omega");
  NonEpiCertificate c;
  c.n0 = data.n0;
  c.divisor_set = divisors_up_to(c.n0, spec.truncation);
  for (Depth n = 1; n <= spec.truncation && !c.missed_component; ++n) {
    if (c.n0 % n != 0) c.missed_component = n;
  }
  if (!c.missed_component) {
    throw InputError("Omega truncation " + std::to_string(spec.truncation) + " does not exceed N0 = " +
                     std::to_string(c.n0));
  }
  c.verified_maps = 1;
  if (data.pb.object.empty()) {
    c.kind = "empty_fibre";
    return c;
  }
  c.kind = "divisibility";
  std::set<Depth> hit;
  for (std::size_t k = 0; k < data.pb.object.orbit_count(); ++k) {
    // the fibre orbit has depth lcm(d_K, d_y) at the index, and d_y is 1 there
    if (data.orbit_depth[k] != c.n0) {
      throw TheoremViolation("fibre orbit " + std::to_string(k) + " has depth " + std::to_string(data.orbit_depth[k]) +
                             " at the index, expected N0 = " + std::to_string(c.n0));
    }
    const OrbitImage im = l.images()[k];
    const Depth n = static_cast<Depth>(im.orbit + 1);
    if (data.orbit_depth[k] % n != 0) {
      throw TheoremViolation("orbit " + std::to_string(k) + " maps to component " + std::to_string(n) +
                             ", which does not divide its depth " + std::to_string(data.orbit_depth[k]));
    }
  }
  // every carrier point of the fibre, looked up in Omega directly
  auto table = l.table();
  for (std::size_t p : table) {
    auto [orbit, point] = omega.locate(p);
    (void)point;
    const Depth n = static_cast<Depth>(omega.orbit(orbit).set.size());
    if (c.n0 % n != 0) {
      throw TheoremViolation("a point maps into component " + std::to_string(n) + ", which does not divide N0 = " +
                             std::to_string(c.n0));
    }
    hit.insert(n);
  }
  if (hit.count(c.missed_component)) throw TheoremViolation("l hits the component it was certified to miss");
  c.image_components.assign(hit.begin(), hit.end());
  return c;
}

}  // namespace detail

/// Checks one map l: T x_V Y -> Omega and returns its certificate. The
/// containment is checked twice: by the divisibility law on each fibre
/// orbit's depth at the index, and by reading off the components l hits.
inline NonEpiCertificate certify_not_epi(const EqMap& y, const EqMap& r, const EqMap& l, const OmegaSpec& spec) {
  return detail::certify_with(detail::fibre(y, r, spec), build_omega(spec), l, spec);
}

/// Every map T x_V Y -> Omega for one (T, r), folded into one certificate.
/// `epi` counts maps that are epimorphisms, checked on their own.
inline NonEpiCertificate certify_all_maps(const EqMap& y, const EqMap& r, const OmegaSpec& spec,
                                          std::size_t* epi = nullptr) {
  auto data = detail::fibre(y, r, spec);
  ZSet omega = build_omega(spec);
  NonEpiCertificate total;
  bool first = true;
  std::set<Depth> hit;
  for_each_map(data.pb.object, omega, [&](const EqMap& l) {
    if (epi && is_epi(l)) ++*epi;
    auto c = detail::certify_with(data, omega, l, spec);
    if (first) {
      total = c;
      first = false;
    } else {
      ++total.verified_maps;
    }
    hit.insert(c.image_components.begin(), c.image_components.end());
    return true;
  });
  if (first) throw TheoremViolation("no map into Omega at all, but component n=1 is terminal");
  total.image_components.assign(hit.begin(), hit.end());
  return total;
}

struct DemoInstance {
  DepthFn d_k;
  EqMap r;
  NonEpiCertificate certificate;
};

struct DemoReport {
  ZSet y;
  ZSet v;
  EqMap cover;
  SearchBounds bounds;
  OmegaSpec omega;
  std::vector<DemoInstance> instances;  // one per (T, r)
  std::size_t maps = 0;                 // l's checked across all instances
  std::size_t epi_composites = 0;
  std::vector<json> violations;
};

/// Depth functions for T: the bounds' coordinates plus the Omega index, with
/// one extra support slot for it, filtered to those divisible by d_H.
inline std::vector<DepthFn> demo_depths(const DepthFn& d_h, const SearchBounds& b, Coord index) {
  SearchBounds tb = b;
  tb.max_coord = std::max<Coord>(b.max_coord, index + 1);
  tb.max_support = b.max_support + 1;
  std::vector<DepthFn> out;
  for (const auto& d : enum_depthfns(tb)) {
    bool extra = false;
    for (Coord c : d.support()) extra = extra || (c >= b.max_coord && c != index);
    if (!extra && depth_divides(d, d_h)) out.push_back(d);
  }
  return out;
}

/// Exhausts T = Z/d_K within bounds with d_H | d_K, every epi r: T -> V and
/// every l: T x_V Y -> Omega. Omega is truncated at max_depth + 1 unless a
/// larger truncation is given.
inline DemoReport exhaustive_demo(const EqMap& y, const SearchBounds& b, std::optional<Depth> truncation = std::nullopt) {
  b.validate();
  const ZSet& v = y.target();
  if (v.orbit_count() != 1 || !v.orbit(0).set.product_form()) {
    throw InputError("the base V must be a product-form connected object Z/d_H");
  }
  if (!is_epi(y)) throw InvalidCover("Y -> V is not an epimorphism");
  const DepthFn d_h = v.orbit(0).set.canonical().base;
  DemoReport rep{y.source(), v, y, b, OmegaSpec{fresh_index(y.source(), d_h), truncation.value_or(b.max_depth + 1)},
                 {}, 0, 0, {}};
  if (rep.omega.truncation < b.max_depth + 1) throw InputError("Omega truncation must exceed max_depth");
  for (const auto& d_k : demo_depths(d_h, b, rep.omega.index)) {
    ZSet t = transitive(d_k, "t");
    for_each_map(t, v, [&](const EqMap& r) {
      try {
        auto c = certify_all_maps(y, r, rep.omega, &rep.epi_composites);
        rep.maps += c.verified_maps;
        rep.instances.push_back({d_k, r, std::move(c)});
      } catch (const TheoremViolation& e) {
        rep.violations.push_back({{"d_K", to_json(d_k)}, {"r", to_json(r)}, {"error", e.what()}});
      }
      return true;
    });
  }
  return rep;
}

inline json cover_to_json(const EqMap& y) {
  return {{"Y", to_json(y.source())}, {"V", to_json(y.target())}, {"map", to_json(y)}};
}

/// {"Y", "V", "map"}; without "map" every orbit goes to the basepoint of V.
inline EqMap cover_from_json(const json& j) {
  ZSet y = zset_from_json(detail::field(j, "Y"));
  ZSet v = zset_from_json(detail::field(j, "V"));
  return j.contains("map") ? eqmap_from_json(j.at("map"), y, v) : cover_to_base(y, v);
}

inline json to_json(const DemoReport& rep) {
  json certs = json::array();
  for (const auto& inst : rep.instances) {
    certs.push_back({{"d_K", to_json(inst.d_k)}, {"r", to_json(inst.r)}, {"certificate", to_json(inst.certificate)}});
  }
  return {{"instances", rep.maps},
          {"cover_instances", rep.instances.size()},
          {"epi_composites", rep.epi_composites},
          {"certificates", certs},
          {"violations", rep.violations},
          {"bounds", to_json(rep.bounds)},
          {"omega", to_json(rep.omega)},
          {"cover", cover_to_json(rep.cover)}};
}

/// Covers Y ->> V with V connected, drawn from bounded objects over V.
inline std::vector<EqMap> demo_covers(const ZSet& v, const SearchBounds& b) {
  std::vector<EqMap> out;
  for (const auto& o : objects_over(v, b)) {
    if (!o.object.empty() && is_epi(o.map)) out.push_back(o.map);
  }
  return out;
}

struct FormulaCheck {
  VerdictPtr verdict;
  ZSet omega;
  OmegaSpec spec;
  Status omega_cover;  // epi($w) and pi0iso($w) for the collapse Omega -> N
};

/// Forces the inner clause of the negated WISC sentence at the one-point
/// stage, with Y -> V given and Omega from build_omega as the existential
/// witness. Also forces that Omega covers the truncated naturals
/// bijectively on components.
inline FormulaCheck neg_wisc_formula_check(const EqMap& y, const SearchBounds& b, ForceOptions opt = {}) {
  const ZSet& v = y.target();
  DepthFn d_h = v.orbit_count() == 1 ? v.orbit(0).set.canonical().base : DepthFn{};
  OmegaSpec spec{fresh_index(y.source(), d_h), b.max_depth + 1};
  ZSet omega = build_omega(spec);
  Env env(terminal());
  auto ov = make_obj(v, to_terminal(v));
  auto oy = make_obj(y.source(), to_terminal(y.source()));
  auto oo = make_obj(omega, to_terminal(omega));
  env = env.with_object("$V", ov).with_object("$Y", oy).with_object("$Omega", oo);
  env = env.with_arrow("$y", ArrVal{y, oy, ov});
  const auto& entry = corpus_entry("neg_WISC_inner");
  FormulaCheck out{force(env, entry.formula, b, opt), omega, spec, Status::BoundedFalse};

  ZSet nat = naturals(spec.truncation);
  auto on = make_obj(nat, to_terminal(nat));
  Env cover_env = Env(terminal()).with_object("$Omega", oo).with_object("$N", on);
  cover_env = cover_env.with_arrow("$w", ArrVal{omega_collapse(omega), oo, on});
  Signature sig{{"Omega", ParamSort::object()},
                {"N", ParamSort::object()},
                {"w", ParamSort::arrow_between(ObjTerm::param("Omega"), ObjTerm::param("N"))}};
  out.omega_cover = force(cover_env, parse("epi($w) and pi0iso($w)", sig), b, opt)->status;
  return out;
}

}  // namespace zset
