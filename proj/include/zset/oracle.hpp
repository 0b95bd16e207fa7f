#pragma once

// Set-level recomputation of fibred products for cross-checking pullback():
// raw pairs, orbits by union-find under the unit vectors, and each orbit's
// depth read off by iterating e_i on its first pair.

#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "zset/gset.hpp"

namespace zset {

struct RawFibredProduct {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // global indices in X and Y
  std::vector<std::size_t> orbit_of;                        // pair -> orbit id
  std::vector<std::size_t> orbit_size;
  std::vector<DepthFn> orbit_depth;  // order of each e_i on the orbit's first pair

  std::size_t orbit_count() const { return orbit_size.size(); }
};

inline RawFibredProduct oracle_fibered_product(const EqMap& f, const EqMap& g) {
  const ZSet& x = f.source();
  const ZSet& y = g.source();
  auto tf = f.table();
  auto tg = g.table();
  RawFibredProduct r;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> where;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (tf[a] != tg[b]) continue;
      where[{a, b}] = r.pairs.size();
      r.pairs.emplace_back(a, b);
    }
  }
  std::vector<Coord> coords;
  const DepthFn ambient = depth_meet(x.ambient(), y.ambient());
  for (const auto& [i, n] : ambient.entries()) {
    (void)n;
    coords.push_back(i);
  }
  std::vector<std::size_t> parent(r.pairs.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  auto step = [&](Coord i, std::pair<std::size_t, std::size_t> p) {
    auto e = ResidueVector::unit(i, 1);
    return std::pair{x.act(e, p.first), y.act(e, p.second)};
  };
  for (std::size_t p = 0; p < r.pairs.size(); ++p) {
    for (Coord i : coords) parent[find(p)] = find(where.at(step(i, r.pairs[p])));
  }
  std::map<std::size_t, std::size_t> id;
  r.orbit_of.resize(r.pairs.size());
  for (std::size_t p = 0; p < r.pairs.size(); ++p) {
    auto [it, fresh] = id.emplace(find(p), id.size());
    r.orbit_of[p] = it->second;
    if (fresh) {
      r.orbit_size.push_back(0);
      DepthFn d;
      for (Coord i : coords) {
        Depth n = 1;
        for (auto q = step(i, r.pairs[p]); q != r.pairs[p]; q = step(i, q)) ++n;
        d.set(i, n);
      }
      r.orbit_depth.push_back(std::move(d));
    }
    ++r.orbit_size[it->second];
  }
  return r;
}

}  // namespace zset
