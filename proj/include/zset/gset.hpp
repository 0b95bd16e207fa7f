#pragma once

// Finite continuous Z-sets: finite coproducts of transitive sets Z/H with H a
// bounded-depth subgroup, equivariant maps between them, and the finite
// (co)limits computed at the level of carriers.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zset/depth.hpp"
#include "zset/error.hpp"
#include "zset/group.hpp"

namespace zset {

/// Z/H. Carrier points are numbered by CosetSpace; point 0 is the basepoint.
class TransitiveZSet {
 public:
  TransitiveZSet() : TransitiveZSet(StabilizerSpec{}) {}
  explicit TransitiveZSet(StabilizerSpec stab) {
    stab.validate();
    auto d = std::make_shared<Data>();
    d->stab = std::move(stab);
    d->cosets = std::make_unique<CosetSpace>(d->stab);
    d->canonical = canonical_stabilizer(d->cosets->subgroup());
    data_ = std::move(d);
  }
  explicit TransitiveZSet(DepthFn d) : TransitiveZSet(zset::product_form(std::move(d))) {}

  const StabilizerSpec& stab() const { return data_->stab; }
  const DepthFn& base() const { return data_->stab.base; }
  const CosetSpace& cosets() const { return *data_->cosets; }
  const Subgroup& subgroup() const { return data_->cosets->subgroup(); }
  /// Normal form of H; equal iff the stabilizers are equal subgroups of Z^N.
  const StabilizerSpec& canonical() const { return data_->canonical; }
  bool product_form() const { return data_->canonical.generators.empty(); }
  std::size_t size() const { return data_->cosets->size(); }

  ResidueVector rep(std::size_t point) const { return cosets().rep_vector(point); }
  std::size_t point(const ResidueVector& v) const { return cosets().point(v); }
  std::size_t act(const ResidueVector& g, std::size_t point) const { return cosets().act(g, point); }

  /// H <= H' for H' the stabilizer of `other`, i.e. a map exists.
  bool maps_to(const TransitiveZSet& other) const { return subgroup_le(stab(), other.subgroup()); }

  friend bool operator==(const TransitiveZSet& a, const TransitiveZSet& b) {
    return a.data_ == b.data_ || a.stab() == b.stab();
  }

 private:
  struct Data {
    StabilizerSpec stab;
    std::unique_ptr<CosetSpace> cosets;
    StabilizerSpec canonical;
  };
  std::shared_ptr<const Data> data_;
};

struct Orbit {
  std::string label;
  TransitiveZSet set;
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// A point given by its orbit label and minimal coset representative.
struct Element {
  std::string orbit;
  ResidueVector rep;
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Finite coproduct of labeled transitive sets. Carrier points have global
/// indices: orbit by orbit, points in CosetSpace order within each orbit.
class ZSet {
 public:
  ZSet() = default;
  explicit ZSet(std::vector<Orbit> orbits) : orbits_(std::move(orbits)) {
    std::set<std::string> seen;
    for (const auto& o : orbits_) {
      if (!seen.insert(o.label).second) throw InputError("duplicate orbit label '" + o.label + "'");
    }
    reindex();
  }

  /// Orbits labeled "o0", "o1", ...
  static ZSet of(const std::vector<TransitiveZSet>& sets) {
    std::vector<Orbit> orbits;
    for (std::size_t k = 0; k < sets.size(); ++k) orbits.push_back({"o" + std::to_string(k), sets[k]});
    return ZSet(std::move(orbits));
  }

  const std::vector<Orbit>& orbits() const { return orbits_; }
  const Orbit& orbit(std::size_t k) const { return orbits_[k]; }
  std::size_t orbit_count() const { return orbits_.size(); }
  bool empty() const { return orbits_.empty(); }
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.back(); }

  std::optional<std::size_t> find(const std::string& label) const {
    for (std::size_t k = 0; k < orbits_.size(); ++k) {
      if (orbits_[k].label == label) return k;
    }
    return std::nullopt;
  }
  std::size_t orbit_index(const std::string& label) const {
    auto k = find(label);
    if (!k) throw InputError("no orbit labeled '" + label + "'");
    return *k;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& o : orbits_) out.push_back(o.label);
    return out;
  }

  std::size_t global(std::size_t orbit, std::size_t point) const { return offsets_[orbit] + point; }
  std::pair<std::size_t, std::size_t> locate(std::size_t g) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), g);
    std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return {k, g - offsets_[k]};
  }
  std::size_t orbit_of(std::size_t g) const { return locate(g).first; }

  Element element(std::size_t g) const {
    auto [k, p] = locate(g);
    return Element{orbits_[k].label, orbits_[k].set.rep(p)};
  }
  std::size_t index(const Element& e) const {
    std::size_t k = orbit_index(e.orbit);
    const auto& t = orbits_[k].set;
    if (!e.rep.is_reduced(t.base())) throw InputError("element representative not reduced");
    std::size_t p = t.point(e.rep);
    if (t.rep(p) != e.rep) throw InputError("element representative is not the minimal one");
    return global(k, p);
  }

  /// g acting on the point with global index x.
  std::size_t act(const ResidueVector& g, std::size_t x) const {
    auto [k, p] = locate(x);
    return global(k, orbits_[k].set.act(g, p));
  }

  /// depth_meet of all orbit bases: an ambient A_D through which the whole
  /// action factors.
  DepthFn ambient() const {
    DepthFn d;
    for (const auto& o : orbits_) d = depth_meet(d, o.set.base());
    return d;
  }

  friend bool operator==(const ZSet& a, const ZSet& b) { return a.orbits_ == b.orbits_; }

 private:
  void reindex() {
    offsets_.assign(1, 0);
    for (const auto& o : orbits_) offsets_.push_back(offsets_.back() + o.set.size());
  }

  std::vector<Orbit> orbits_;
  std::vector<std::size_t> offsets_;
};

inline ZSet initial() { return ZSet{}; }
inline ZSet terminal(const std::string& label = "*") {
  return ZSet({Orbit{label, TransitiveZSet{}}});
}

inline ZSet transitive(const DepthFn& d, const std::string& label = "o0") {
  return ZSet({Orbit{label, TransitiveZSet(d)}});
}

inline ZSet transitive(const StabilizerSpec& s, const std::string& label = "o0") {
  return ZSet({Orbit{label, TransitiveZSet(s)}});
}

/// g + x, g reduced modulo the orbit base.
inline Element act(const ResidueVector& g, const Element& x, const ZSet& in) {
  return in.element(in.act(g, in.index(x)));
}

inline std::vector<std::string> pi0(const ZSet& x) { return x.labels(); }

/// Image of the basepoint of one source orbit.
struct OrbitImage {
  std::size_t orbit = 0;
  std::size_t point = 0;
  friend bool operator==(const OrbitImage&, const OrbitImage&) = default;
  friend auto operator<=>(const OrbitImage&, const OrbitImage&) = default;
};

/// Equivariant map, stored as the image of each source basepoint. The
/// constructor checks well-definedness: Stab(source orbit) <= Stab(image).
class EqMap {
 public:
  struct Unchecked {};

  EqMap() = default;
  /// Skips the well-definedness check; for images taken from hom_enumerate.
  EqMap(Unchecked, ZSet source, ZSet target, std::vector<OrbitImage> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}
  EqMap(ZSet source, ZSet target, std::vector<OrbitImage> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.orbit_count()) {
      throw InputError("map must assign every source orbit");
    }
    for (std::size_t k = 0; k < images_.size(); ++k) {
      const auto& im = images_[k];
      if (im.orbit >= target_.orbit_count() || im.point >= target_.orbit(im.orbit).set.size()) {
        throw InputError("map image out of range");
      }
      if (!source_.orbit(k).set.maps_to(target_.orbit(im.orbit).set)) {
        throw InputError("map is not well defined on orbit '" + source_.orbit(k).label +
                         "': its stabilizer does not fix the image");
      }
    }
  }

  /// From labels: source label -> image element.
  static EqMap from_assignment(ZSet source, ZSet target, const std::map<std::string, Element>& assignment) {
    std::vector<OrbitImage> images;
    for (const auto& o : source.orbits()) {
      auto it = assignment.find(o.label);
      if (it == assignment.end()) throw InputError("no image for orbit '" + o.label + "'");
      auto g = target.index(it->second);
      auto [k, p] = target.locate(g);
      images.push_back({k, p});
    }
    return EqMap(std::move(source), std::move(target), std::move(images));
  }

  const ZSet& source() const { return source_; }
  const ZSet& target() const { return target_; }
  const std::vector<OrbitImage>& images() const { return images_; }

  OrbitImage apply(std::size_t orbit, std::size_t point) const {
    const auto& im = images_[orbit];
    const auto& t = target_.orbit(im.orbit).set;
    return {im.orbit, t.act(source_.orbit(orbit).set.rep(point), im.point)};
  }
  std::size_t apply(std::size_t x) const {
    auto [k, p] = source_.locate(x);
    auto im = apply(k, p);
    return target_.global(im.orbit, im.point);
  }
  Element apply(const Element& x) const { return target_.element(apply(source_.index(x))); }

  std::map<std::string, Element> assignment() const {
    std::map<std::string, Element> out;
    for (std::size_t k = 0; k < images_.size(); ++k) {
      out.emplace(source_.orbit(k).label, target_.element(target_.global(images_[k].orbit, images_[k].point)));
    }
    return out;
  }

  /// Carrier function as a table of global indices.
  std::vector<std::size_t> table() const {
    std::vector<std::size_t> t(source_.size());
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = apply(x);
    return t;
  }

  friend bool operator==(const EqMap&, const EqMap&) = default;

 private:
  ZSet source_, target_;
  std::vector<OrbitImage> images_;
};

inline EqMap identity(const ZSet& x) {
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < x.orbit_count(); ++k) images.push_back({k, 0});
  return EqMap(x, x, std::move(images));
}

/// g after f.
inline EqMap compose(const EqMap& g, const EqMap& f) {
  if (!(f.target() == g.source())) throw InputError("compose: maps are not composable");
  std::vector<OrbitImage> images;
  for (const auto& im : f.images()) images.push_back(g.apply(im.orbit, im.point));
  return EqMap(f.source(), g.target(), std::move(images));
}

/// The unique map to a one-point object.
inline EqMap to_terminal(const ZSet& x, const ZSet& one = terminal()) {
  if (one.size() != 1) throw InputError("to_terminal: target is not a one-point object");
  return EqMap(x, one, std::vector<OrbitImage>(x.orbit_count(), OrbitImage{0, 0}));
}

inline EqMap from_initial(const ZSet& y) { return EqMap(initial(), y, {}); }

/// Every equivariant X -> Y, as basepoint images in (orbit, point) order.
/// For product-form stabilizers the list is nonempty exactly when the target
/// depth divides the source depth.
inline std::vector<OrbitImage> hom_enumerate(const TransitiveZSet& x, const ZSet& y) {
  std::vector<OrbitImage> out;
  for (std::size_t k = 0; k < y.orbit_count(); ++k) {
    const auto& t = y.orbit(k).set;
    if (!x.maps_to(t)) continue;
    for (std::size_t p = 0; p < t.size(); ++p) out.push_back({k, p});
  }
  return out;
}

/// Calls fn(map) for every map X -> Y, in lexicographic order of the per-orbit
/// choices from hom_enumerate. Stops early when fn returns false; returns
/// whether the enumeration ran to completion.
template <class Fn>
bool for_each_map(const ZSet& x, const ZSet& y, Fn&& fn) {
  std::vector<std::vector<OrbitImage>> options;
  for (const auto& o : x.orbits()) {
    options.push_back(hom_enumerate(o.set, y));
    if (options.back().empty()) return true;
  }
  std::vector<std::size_t> digit(options.size(), 0);
  while (true) {
    std::vector<OrbitImage> images;
    images.reserve(options.size());
    for (std::size_t k = 0; k < options.size(); ++k) images.push_back(options[k][digit[k]]);
    if (!fn(EqMap(EqMap::Unchecked{}, x, y, std::move(images)))) return false;
    std::size_t k = options.size();
    while (k > 0) {
      --k;
      if (++digit[k] < options[k].size()) break;
      digit[k] = 0;
      if (k == 0) return true;
    }
    if (options.empty()) return true;
  }
}

/// Number of maps X -> Y without listing them.
inline std::size_t count_maps(const ZSet& x, const ZSet& y) {
  std::size_t n = 1;
  for (const auto& o : x.orbits()) {
    std::size_t choices = 0;
    for (const auto& t : y.orbits()) {
      if (o.set.maps_to(t.set)) choices += t.set.size();
    }
    n *= choices;
    if (n == 0) return 0;
  }
  return n;
}

/// Orbits of the target hit by f.
inline std::vector<bool> pi0_image(const EqMap& f) {
  std::vector<bool> hit(f.target().orbit_count(), false);
  for (const auto& im : f.images()) hit[im.orbit] = true;
  return hit;
}

/// Epi iff surjective on orbit labels: maps between orbits are onto.
inline bool is_epi(const EqMap& f) {
  auto hit = pi0_image(f);
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool surjective_on_carriers(const EqMap& f) {
  std::vector<bool> hit(f.target().size(), false);
  for (std::size_t x = 0; x < f.source().size(); ++x) hit[f.apply(x)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool injective_on_carriers(const EqMap& f) {
  std::vector<bool> hit(f.target().size(), false);
  for (std::size_t x = 0; x < f.source().size(); ++x) {
    auto y = f.apply(x);
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

/// Orbit structure of a ZSet up to relabeling: sorted canonical stabilizers.
inline std::vector<std::pair<std::vector<std::pair<Coord, Depth>>, std::vector<ResidueVector>>>
orbit_signature(const ZSet& x) {
  std::vector<std::pair<std::vector<std::pair<Coord, Depth>>, std::vector<ResidueVector>>> sig;
  for (const auto& o : x.orbits()) {
    const auto& c = o.set.canonical();
    sig.emplace_back(std::vector<std::pair<Coord, Depth>>(c.base.entries().begin(), c.base.entries().end()),
                     c.generators);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

/// Isomorphic iff the orbit multisets agree: Z/H ~ Z/H' iff H = H' for an
/// abelian group.
inline bool isomorphic(const ZSet& x, const ZSet& y) { return orbit_signature(x) == orbit_signature(y); }

struct Coproduct {
  ZSet object;
  EqMap inl, inr;
};

/// Labels are kept when disjoint, otherwise prefixed "l." and "r.".
inline Coproduct coproduct(const ZSet& x, const ZSet& y) {
  bool clash = false;
  for (const auto& l : x.labels()) clash = clash || y.find(l).has_value();
  std::vector<Orbit> orbits;
  for (const auto& o : x.orbits()) orbits.push_back({clash ? "l." + o.label : o.label, o.set});
  for (const auto& o : y.orbits()) orbits.push_back({clash ? "r." + o.label : o.label, o.set});
  ZSet sum(std::move(orbits));
  std::vector<OrbitImage> li, ri;
  for (std::size_t k = 0; k < x.orbit_count(); ++k) li.push_back({k, 0});
  for (std::size_t k = 0; k < y.orbit_count(); ++k) ri.push_back({x.orbit_count() + k, 0});
  return Coproduct{sum, EqMap(x, sum, std::move(li)), EqMap(y, sum, std::move(ri))};
}

/// Sub-ZSet on the given orbits (in source order) with its inclusion.
inline std::pair<ZSet, EqMap> restrict_orbits(const ZSet& x, const std::vector<bool>& keep) {
  std::vector<Orbit> orbits;
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < x.orbit_count(); ++k) {
    if (!keep[k]) continue;
    orbits.push_back(x.orbit(k));
    images.push_back({k, 0});
  }
  ZSet sub(std::move(orbits));
  return {sub, EqMap(sub, x, std::move(images))};
}

/// Action of A_D on a carrier, tabulated: table[g][x] = g + x for every
/// element g of A_D. D must be a multiple of every orbit base.
class ActionTable {
 public:
  ActionTable(const ZSet& x, AmbientGroup group) : group_(std::move(group)), table_(group_.order()) {
    for (std::size_t g = 0; g < group_.order(); ++g) {
      ResidueVector v = group_.decode(g);
      auto& row = table_[g];
      row.resize(x.size());
      for (std::size_t e = 0; e < x.size(); ++e) row[e] = x.act(v, e);
    }
  }
  const AmbientGroup& group() const { return group_; }
  std::size_t operator()(std::size_t g, std::size_t x) const { return table_[g][x]; }

 private:
  AmbientGroup group_;
  std::vector<std::vector<std::size_t>> table_;
};

/// Decomposes the subset `points` (closed under the action) of some carrier
/// into orbits. `act(g, p)` gives the action of A_D on point ids.
/// Returns, per orbit, the basepoint id and the canonical stabilizer, plus for
/// every point its (orbit, point-in-orbit) location.
struct OrbitDecomposition {
  std::vector<std::size_t> basepoints;
  std::vector<TransitiveZSet> orbits;
  std::map<std::size_t, OrbitImage> location;
};

template <class Act>
OrbitDecomposition decompose_orbits(const std::vector<std::size_t>& points, const AmbientGroup& group, Act act) {
  OrbitDecomposition out;
  for (std::size_t p : points) {
    if (out.location.count(p)) continue;
    std::vector<char> stab(group.order(), 0);
    for (std::size_t g = 0; g < group.order(); ++g) stab[g] = act(g, p) == p;
    auto sub = Subgroup::from_members(group, std::move(stab));
    TransitiveZSet orbit(canonical_stabilizer(sub));
    std::size_t k = out.orbits.size();
    for (std::size_t g = 0; g < group.order(); ++g) {
      std::size_t q = act(g, p);
      if (!out.location.count(q)) out.location.emplace(q, OrbitImage{k, orbit.point(group.decode(g))});
    }
    out.basepoints.push_back(p);
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

/// X x_S Y with its projections. `locate` maps a pair of carrier indices in
/// the fibre to the global index of the corresponding point of `object`.
struct Pullback {
  ZSet object;
  EqMap proj1, proj2;
  std::size_t right_size = 0;
  std::map<std::size_t, std::size_t> pair_index;  // x * |Y| + y -> global index

  std::optional<std::size_t> locate(std::size_t x, std::size_t y) const {
    auto it = pair_index.find(x * right_size + y);
    if (it == pair_index.end()) return std::nullopt;
    return it->second;
  }
};

/// Fibered product by carrier enumeration: pairs (x, y) with f(x) = g(y),
/// decomposed into orbits under the diagonal action of A_D, D the meet of
/// all orbit bases of X and Y. Orbits are labeled "o0", "o1", ... in order of
/// their least pair.
inline Pullback pullback(const EqMap& f, const EqMap& g) {
  if (!(f.target() == g.target())) throw InputError("pullback: maps have different codomains");
  const ZSet& x = f.source();
  const ZSet& y = g.source();
  AmbientGroup group(depth_meet(x.ambient(), y.ambient()));
  ActionTable ax(x, group), ay(y, group);
  auto fx = f.table();
  auto gy = g.table();
  const std::size_t ny = y.size();
  std::vector<std::size_t> pairs;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      if (fx[a] == gy[b]) pairs.push_back(a * ny + b);
    }
  }
  auto dec = decompose_orbits(pairs, group, [&](std::size_t gi, std::size_t p) {
    return ax(gi, p / ny) * ny + ay(gi, p % ny);
  });
  std::vector<Orbit> orbits;
  std::vector<OrbitImage> im1, im2;
  for (std::size_t k = 0; k < dec.orbits.size(); ++k) {
    orbits.push_back({"o" + std::to_string(k), dec.orbits[k]});
    auto [k1, p1] = x.locate(dec.basepoints[k] / ny);
    auto [k2, p2] = y.locate(dec.basepoints[k] % ny);
    im1.push_back({k1, p1});
    im2.push_back({k2, p2});
  }
  Pullback out;
  out.object = ZSet(std::move(orbits));
  out.proj1 = EqMap(out.object, x, std::move(im1));
  out.proj2 = EqMap(out.object, y, std::move(im2));
  out.right_size = ny;
  for (const auto& [p, loc] : dec.location) out.pair_index.emplace(p, out.object.global(loc.orbit, loc.point));
  return out;
}

inline Pullback product(const ZSet& x, const ZSet& y) { return pullback(to_terminal(x), to_terminal(y)); }

/// Universal map into a pullback: the unique u with proj1 u = a, proj2 u = b.
inline EqMap pair_into(const Pullback& pb, const EqMap& a, const EqMap& b) {
  if (!(a.source() == b.source())) throw InputError("pair_into: maps have different sources");
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < a.source().orbit_count(); ++k) {
    auto x0 = a.apply(a.source().global(k, 0));
    auto y0 = b.apply(b.source().global(k, 0));
    auto g = pb.locate(x0, y0);
    if (!g) throw InputError("pair_into: maps do not agree over the base");
    auto [ko, po] = pb.object.locate(*g);
    images.push_back({ko, po});
  }
  return EqMap(a.source(), pb.object, std::move(images));
}

struct Equalizer {
  ZSet object;
  EqMap inclusion;
};

/// Orbits on which f and g agree at the basepoint (hence everywhere).
inline Equalizer equalizer(const EqMap& f, const EqMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) {
    throw InputError("equalizer: maps are not parallel");
  }
  std::vector<bool> keep(f.source().orbit_count());
  for (std::size_t k = 0; k < keep.size(); ++k) keep[k] = f.images()[k] == g.images()[k];
  auto [sub, inc] = restrict_orbits(f.source(), keep);
  return Equalizer{sub, inc};
}

/// Epi from a coproduct of product-form orbits Z/d, d the base of each orbit's
/// stabilizer, basepoint to basepoint.
inline EqMap canonical_cover(const ZSet& x) {
  std::vector<Orbit> orbits;
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < x.orbit_count(); ++k) {
    orbits.push_back({x.orbit(k).label, TransitiveZSet(x.orbit(k).set.base())});
    images.push_back({k, 0});
  }
  return EqMap(ZSet(std::move(orbits)), x, std::move(images));
}

}  // namespace zset
