#pragma once

// Deterministic bounded streams: depth functions, connected objects, objects,
// maps, and covers. Same bounds, same sequence.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zset/gset.hpp"

namespace zset {

/// Canonical depth functions with support size <= max_support, coordinates
/// < max_coord and values in 2..max_depth. Ordered by support size, then
/// coordinate tuple, then value tuple.
inline std::vector<DepthFn> enum_depthfns(const SearchBounds& b) {
  b.validate();
  std::vector<DepthFn> out;
  std::vector<Coord> coords;
  std::vector<Depth> values;
  for (std::size_t size = 0; size <= b.max_support && size <= b.max_coord; ++size) {
    // coordinate subsets of the given size, lexicographic
    std::vector<Coord> c(size);
    for (std::size_t k = 0; k < size; ++k) c[k] = static_cast<Coord>(k);
    while (true) {
      if (size == 0 || b.max_depth >= 2) {
        std::vector<Depth> v(size, 2);
        while (true) {
          DepthFn d;
          for (std::size_t k = 0; k < size; ++k) d.set(c[k], v[k]);
          out.push_back(std::move(d));
          std::size_t k = size;
          while (k > 0 && v[k - 1] == b.max_depth) v[--k] = 2;
          if (k == 0) break;
          ++v[k - 1];
        }
      }
      std::size_t k = size;
      while (k > 0 && c[k - 1] == b.max_coord - size + k - 1) --k;
      if (k == 0) break;
      ++c[k - 1];
      for (std::size_t j = k; j < size; ++j) c[j] = c[j - 1] + 1;
    }
  }
  return out;
}

/// All subgroups of a finite abelian group, by closure under adding one
/// element at a time.
inline std::vector<Subgroup> all_subgroups(const AmbientGroup& group) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> frontier{{}};
  std::vector<Subgroup> out;
  Subgroup trivial(group, std::vector<std::size_t>{});
  seen.insert({trivial.elements().begin(), trivial.elements().end()});
  out.push_back(trivial);
  for (std::size_t at = 0; at < out.size(); ++at) {
    std::vector<std::size_t> base(out[at].elements().begin(), out[at].elements().end());
    for (std::size_t g = 0; g < group.order(); ++g) {
      if (out[at].contains(g)) continue;
      auto gens = base;
      gens.push_back(g);
      Subgroup h(group, gens);
      std::vector<std::size_t> key(h.elements().begin(), h.elements().end());
      if (seen.insert(key).second) out.push_back(std::move(h));
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::lexicographical_compare(a.elements().begin(), a.elements().end(), b.elements().begin(),
                                        b.elements().end());
  });
  return out;
}

/// Every transitive Z-set whose minimal base is one of enum_depthfns(b),
/// each exactly once, in canonical form. Product-form Z/dZ comes first for
/// each d, then the rest by subgroup order.
inline std::vector<TransitiveZSet> enum_connected(const SearchBounds& b) {
  std::vector<TransitiveZSet> out;
  for (const auto& d : enum_depthfns(b)) {
    AmbientGroup group(d);
    for (const auto& h : all_subgroups(group)) {
      if (!(minimal_base(h) == d)) continue;
      out.emplace_back(StabilizerSpec{d, canonical_generators(h)});
    }
  }
  return out;
}

namespace detail {

/// Nondecreasing index tuples of length 1..max_len over [0, n).
inline void for_each_multiset(std::size_t n, std::size_t max_len,
                              const std::function<void(const std::vector<std::size_t>&)>& fn) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    if (n == 0) return;
    std::vector<std::size_t> t(len, 0);
    while (true) {
      fn(t);
      std::size_t k = len;
      while (k > 0 && t[k - 1] == n - 1) --k;
      if (k == 0) break;
      ++t[k - 1];
      for (std::size_t j = k; j < len; ++j) t[j] = t[k - 1];
    }
  }
}

inline std::string orbit_label(std::size_t k) { return "o" + std::to_string(k); }

}  // namespace detail

/// Nonempty objects with 1..max_orbits orbits drawn from enum_connected(b),
/// one per orbit multiset, labeled o0, o1, ...
inline std::vector<ZSet> enum_objects(const SearchBounds& b) {
  auto conn = enum_connected(b);
  std::vector<ZSet> out;
  detail::for_each_multiset(conn.size(), b.max_orbits, [&](const std::vector<std::size_t>& t) {
    std::vector<Orbit> orbits;
    for (std::size_t k = 0; k < t.size(); ++k) orbits.push_back({detail::orbit_label(k), conn[t[k]]});
    out.emplace_back(std::move(orbits));
  });
  return out;
}

inline std::vector<EqMap> enum_maps(const ZSet& x, const ZSet& y) {
  std::vector<EqMap> out;
  for_each_map(x, y, [&](const EqMap& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

/// An object over a base, given by its structure map.
struct Over {
  ZSet object;
  EqMap map;
};

namespace detail {

/// Connected candidates over each orbit of `base`: the orbit itself first,
/// then every bounded connected set mapping into it.
inline std::vector<std::vector<TransitiveZSet>> fibre_candidates(const ZSet& base, const SearchBounds& b) {
  auto conn = enum_connected(b);
  std::vector<std::vector<TransitiveZSet>> out;
  for (const auto& o : base.orbits()) {
    TransitiveZSet self(o.set.canonical());
    std::vector<TransitiveZSet> c{self};
    for (const auto& w : conn) {
      if (w.canonical() == self.canonical()) continue;
      if (w.maps_to(self)) c.push_back(w);
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Object over `base` whose orbits are (candidate, base orbit) pairs, each
/// sent to the basepoint of its base orbit.
inline Over assemble(const ZSet& base, const std::vector<std::pair<TransitiveZSet, std::size_t>>& parts) {
  std::vector<Orbit> orbits;
  std::vector<OrbitImage> images;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    orbits.push_back({orbit_label(k), parts[k].first});
    images.push_back({parts[k].second, 0});
  }
  ZSet v(std::move(orbits));
  EqMap p(v, base, std::move(images));
  return Over{v, p};
}

}  // namespace detail

/// Objects over `base` up to isomorphism over it, with at most `max_orbits`
/// orbits, starting with the empty object. A map from a connected set into
/// an orbit may be translated to hit the basepoint, so only basepoint images
/// are listed.
inline std::vector<Over> objects_over(const ZSet& base, const SearchBounds& b, std::size_t max_orbits) {
  auto cands = detail::fibre_candidates(base, b);
  std::vector<std::pair<TransitiveZSet, std::size_t>> flat;
  for (std::size_t u = 0; u < cands.size(); ++u) {
    for (const auto& w : cands[u]) flat.emplace_back(w, u);
  }
  std::vector<Over> out{detail::assemble(base, {})};
  detail::for_each_multiset(flat.size(), max_orbits, [&](const std::vector<std::size_t>& t) {
    std::vector<std::pair<TransitiveZSet, std::size_t>> parts;
    for (std::size_t k : t) parts.push_back(flat[k]);
    out.push_back(detail::assemble(base, parts));
  });
  return out;
}

inline std::vector<Over> objects_over(const ZSet& base, const SearchBounds& b) {
  return objects_over(base, b, b.max_orbits);
}

/// Epis V ->> U: the identity first, then every bounded object over U with
/// at most max_orbits * |pi0 U| orbits hitting every orbit of U.
inline std::vector<Over> covers_of(const ZSet& base, const SearchBounds& b) {
  std::vector<Over> out{Over{base, identity(base)}};
  if (base.empty()) return out;
  for (auto& o : objects_over(base, b, b.max_orbits * base.orbit_count())) {
    if (o.object.empty() || !is_epi(o.map)) continue;
    // the identity is already first
    if (o.object.orbit_count() == base.orbit_count() && isomorphic(o.object, base)) {
      bool same = true;
      for (std::size_t k = 0; k < base.orbit_count() && same; ++k) {
        same = o.map.images()[k].orbit == k && o.object.orbit(k).set.canonical() == base.orbit(k).set.canonical();
      }
      if (same) continue;
    }
    out.push_back(std::move(o));
  }
  return out;
}

/// Connected objects over `base`, one orbit each.
inline std::vector<Over> connected_over(const ZSet& base, const SearchBounds& b) {
  auto cands = detail::fibre_candidates(base, b);
  std::vector<Over> out;
  for (std::size_t u = 0; u < cands.size(); ++u) {
    for (const auto& w : cands[u]) out.push_back(detail::assemble(base, {{w, u}}));
  }
  return out;
}

}  // namespace zset
