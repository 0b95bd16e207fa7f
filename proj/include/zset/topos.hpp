#pragma once

// Topos structure on finite Z-sets: subobject classifier, internal homs,
// global sections, the adjoint triple pi0 -| (-)_d -| Gamma, and p_! for the
// split surjection that forgets coordinates.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zset/gset.hpp"

namespace zset {

/// The two-element set with trivial action, orbits "t" and "f".
inline ZSet two() { return ZSet({Orbit{"t", {}}, Orbit{"f", {}}}); }

inline EqMap truth() { return EqMap(terminal(), two(), {OrbitImage{0, 0}}); }

/// Image of a finite set under (-)_d: one singleton orbit per label.
inline ZSet discrete(const std::vector<std::string>& labels) {
  std::vector<Orbit> orbits;
  for (const auto& l : labels) orbits.push_back({l, TransitiveZSet{}});
  return ZSet(std::move(orbits));
}

/// Truncated natural number object: N_d restricted to {1..n}.
inline ZSet naturals(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t k = 1; k <= n; ++k) labels.push_back("n=" + std::to_string(k));
  return discrete(labels);
}

inline constexpr std::size_t kMaxHomCarrier = std::size_t{1} << 20;

/// Y^X: every set function X -> Y with the conjugation action
/// (g.f)(x) = g.f(-g + x). Every function is continuous because A_D, D the
/// meet of all bases, acts on both carriers; functions are coded in base |Y|
/// with x = 0 least significant.
struct InternalHom {
  ZSet object;
  ZSet domain, codomain;
  std::vector<std::size_t> code_of;           // global index -> function code
  std::map<std::size_t, std::size_t> index_of;  // function code -> global index

  std::vector<std::size_t> function(std::size_t element) const {
    std::vector<std::size_t> f(domain.size());
    std::size_t c = code_of[element];
    for (auto& v : f) {
      v = c % codomain.size();
      c /= codomain.size();
    }
    return f;
  }

  std::size_t element_of(const std::vector<std::size_t>& f) const {
    std::size_t c = 0, w = 1;
    for (std::size_t v : f) {
      c += v * w;
      w *= codomain.size();
    }
    return index_of.at(c);
  }

  /// ev: Y^X x X -> Y on carriers.
  std::size_t evaluate(std::size_t element, std::size_t x) const { return function(element)[x]; }
};

inline InternalHom internal_hom(const ZSet& x, const ZSet& y) {
  const std::size_t nx = x.size(), ny = y.size();
  std::size_t n = 1;
  for (std::size_t k = 0; k < nx; ++k) {
    if (ny != 0 && n > kMaxHomCarrier / ny) throw InputError("internal hom carrier too large");
    n *= ny;
  }
  DepthFn d = depth_meet(x.ambient(), y.ambient());
  // D(i) e_i must act trivially on both carriers, so A_D captures the action.
  for (const auto& [i, m] : d.entries()) {
    auto rel = ResidueVector::unit(i, static_cast<std::int64_t>(m));
    for (std::size_t e = 0; e < nx; ++e) {
      if (x.act(rel, e) != e) throw std::logic_error("internal_hom: action does not factor through A_D");
    }
    for (std::size_t e = 0; e < ny; ++e) {
      if (y.act(rel, e) != e) throw std::logic_error("internal_hom: action does not factor through A_D");
    }
  }
  AmbientGroup group(d);
  ActionTable ax(x, group), ay(y, group);
  std::vector<std::size_t> codes(n);
  for (std::size_t c = 0; c < n; ++c) codes[c] = c;
  std::vector<std::size_t> buf(nx);
  auto act = [&](std::size_t g, std::size_t code) {
    std::size_t ginv = group.negate(g);
    std::size_t c = code;
    for (std::size_t e = 0; e < nx; ++e) {
      buf[e] = c % ny;
      c /= ny;
    }
    std::size_t out = 0, w = 1;
    for (std::size_t e = 0; e < nx; ++e) {
      out += ay(g, buf[ax(ginv, e)]) * w;
      w *= ny;
    }
    return out;
  };
  auto dec = decompose_orbits(codes, group, act);
  InternalHom h;
  std::vector<Orbit> orbits;
  for (std::size_t k = 0; k < dec.orbits.size(); ++k) orbits.push_back({"o" + std::to_string(k), dec.orbits[k]});
  h.object = ZSet(std::move(orbits));
  h.domain = x;
  h.codomain = y;
  h.code_of.assign(n, 0);
  for (const auto& [code, loc] : dec.location) {
    std::size_t g = h.object.global(loc.orbit, loc.point);
    h.code_of[g] = code;
    h.index_of.emplace(code, g);
  }
  return h;
}

/// Transpose of phi: A x X -> Y, given the product cone used to build it.
inline EqMap transpose(const EqMap& phi, const Pullback& ax, const InternalHom& yx) {
  const ZSet& a = ax.proj1.target();
  const ZSet& x = ax.proj2.target();
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < a.orbit_count(); ++k) {
    std::size_t a0 = a.global(k, 0);
    std::vector<std::size_t> f(x.size());
    for (std::size_t e = 0; e < x.size(); ++e) f[e] = phi.apply(*ax.locate(a0, e));
    auto [ko, po] = yx.object.locate(yx.element_of(f));
    images.push_back({ko, po});
  }
  return EqMap(a, yx.object, std::move(images));
}

namespace detail {

/// Orbit images of a map, enough to tell apart maps sharing source and target.
inline std::vector<std::pair<std::size_t, std::size_t>> image_key(const EqMap& f) {
  std::vector<std::pair<std::size_t, std::size_t>> k;
  for (const auto& im : f.images()) k.emplace_back(im.orbit, im.point);
  return k;
}

inline bool all_distinct(const std::vector<EqMap>& maps) {
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  for (const auto& m : maps) {
    if (!seen.insert(image_key(m)).second) return false;
  }
  return true;
}

}  // namespace detail

struct BijectionReport {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool bijective = false;
  bool enumerated = false;  // false when lhs exceeded the enumeration cap
};

/// Hom(A x X, Y) ~ Hom(A, Y^X). Counts always; enumerates and checks the
/// transposition when the left side has at most `cap` maps.
inline BijectionReport exponential_law(const ZSet& a, const ZSet& x, const ZSet& y, const InternalHom& yx,
                                       std::size_t cap = 4096) {
  auto ax = product(a, x);
  BijectionReport r;
  r.lhs = count_maps(ax.object, y);
  r.rhs = count_maps(a, yx.object);
  if (r.lhs > cap) return r;
  r.enumerated = true;
  std::vector<EqMap> images;
  for_each_map(ax.object, y, [&](const EqMap& phi) {
    images.push_back(transpose(phi, ax, yx));
    return true;
  });
  r.bijective = detail::all_distinct(images) && images.size() == r.lhs && r.lhs == r.rhs;
  return r;
}

/// Characteristic map of a mono S >-> X: orbits in the image go to "t".
inline EqMap classify(const EqMap& mono) {
  if (!injective_on_carriers(mono)) throw NotMonic("classify: map is not injective on carriers");
  auto hit = pi0_image(mono);
  ZSet omega = two();
  std::vector<OrbitImage> images;
  for (bool h : hit) images.push_back({h ? std::size_t{0} : std::size_t{1}, 0});
  return EqMap(mono.target(), omega, std::move(images));
}

/// Fixed points: the singleton orbits.
inline std::vector<Element> global_sections(const ZSet& x) {
  std::vector<Element> out;
  for (const auto& o : x.orbits()) {
    if (o.set.size() == 1) out.push_back(Element{o.label, ResidueVector{}});
  }
  return out;
}

enum class AdjunctionKind { Pi0Discrete, DiscreteGamma };

/// pi0 -| (-)_d: Hom(pi0 X, A) ~ Hom(X, A_d).
/// (-)_d -| Gamma: Hom(A_d, X) ~ Hom(A, Gamma X).
/// Both sides are enumerated and the canonical transposition is checked to
/// be a bijection.
inline BijectionReport adjunction_check(AdjunctionKind kind, const std::vector<std::string>& a, const ZSet& x) {
  ZSet ad = discrete(a);
  BijectionReport r;
  r.enumerated = true;
  auto functions = [](std::size_t from, std::size_t to) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t k = 0; k < from; ++k) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& f : out) {
        for (std::size_t v = 0; v < to; ++v) {
          auto g = f;
          g.push_back(v);
          next.push_back(std::move(g));
        }
      }
      out = std::move(next);
    }
    return out;
  };
  std::vector<EqMap> images;
  std::vector<EqMap> maps;
  if (kind == AdjunctionKind::Pi0Discrete) {
    auto fs = functions(x.orbit_count(), a.size());
    r.lhs = fs.size();
    for (const auto& f : fs) {
      std::vector<OrbitImage> im;
      for (std::size_t v : f) im.push_back({v, 0});
      images.emplace_back(x, ad, std::move(im));
    }
    for_each_map(x, ad, [&](const EqMap& m) {
      maps.push_back(m);
      return true;
    });
  } else {
    auto gamma = global_sections(x);
    auto fs = functions(a.size(), gamma.size());
    r.lhs = fs.size();
    for (const auto& f : fs) {
      std::vector<OrbitImage> im;
      for (std::size_t v : f) im.push_back({x.orbit_index(gamma[v].orbit), 0});
      images.emplace_back(ad, x, std::move(im));
    }
    for_each_map(ad, x, [&](const EqMap& m) {
      maps.push_back(m);
      return true;
    });
  }
  r.rhs = maps.size();
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> targets;
  for (const auto& m : maps) targets.insert(detail::image_key(m));
  bool ok = images.size() == maps.size() && detail::all_distinct(images);
  for (std::size_t i = 0; ok && i < images.size(); ++i) ok = targets.count(detail::image_key(images[i])) > 0;
  r.bijective = ok;
  return r;
}

/// p_! for p: Z^N -> Z^{<bound} restricting to coordinates below `bound`:
/// each stabilizer is projected, so Z/H becomes Z/p(H). `unit` is the
/// quotient X -> p* p_! X (p* leaves the representation unchanged).
struct Restriction {
  ZSet object;
  EqMap unit;
};

inline Restriction restrict_extend(const ZSet& x, Coord bound) {
  std::vector<Orbit> orbits;
  for (const auto& o : x.orbits()) {
    StabilizerSpec s;
    s.base = o.set.base().truncated(bound);
    for (const auto& g : o.set.stab().generators) {
      ResidueVector t;
      for (const auto& [i, r] : g.coords()) {
        if (i < bound) t.set(i, r);
      }
      t = t.reduced(s.base);
      if (!t.zero()) s.generators.push_back(t);
    }
    orbits.push_back({o.label, TransitiveZSet(std::move(s))});
  }
  ZSet px(std::move(orbits));
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < x.orbit_count(); ++k) images.push_back({k, 0});
  return Restriction{px, EqMap(x, px, std::move(images))};
}

/// p_! -| p*: Hom(p_! X, Y) ~ Hom(X, p* Y) for Y supported below `bound`,
/// transposing along the unit.
inline BijectionReport restriction_adjunction(const ZSet& x, const ZSet& y, Coord bound) {
  for (const auto& o : y.orbits()) {
    if (!(o.set.base().truncated(bound) == o.set.base())) {
      throw InputError("restriction_adjunction: Y must be supported below the bound");
    }
  }
  auto px = restrict_extend(x, bound);
  BijectionReport r;
  r.enumerated = true;
  std::vector<EqMap> images;
  for_each_map(px.object, y, [&](const EqMap& m) {
    images.push_back(compose(m, px.unit));
    return true;
  });
  r.lhs = images.size();
  r.rhs = count_maps(x, y);
  r.bijective = r.lhs == r.rhs && detail::all_distinct(images);
  return r;
}

/// Subobjects of X as orbit subsets, one per global point of 2^X.
inline std::size_t subobject_count(const ZSet& x) { return std::size_t{1} << x.orbit_count(); }

}  // namespace zset
