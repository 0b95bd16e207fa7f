#pragma once

// Brute-force oracles. These recompute things from raw residue tuples and
// never go through the library's group or orbit machinery.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "zset/depth.hpp"
#include "zset/group.hpp"

namespace zset::brute {

using Tuple = std::vector<std::int64_t>;

/// Every tuple in prod_k Z/moduli[k].
inline std::vector<Tuple> all_tuples(const std::vector<std::int64_t>& moduli) {
  std::vector<Tuple> out{Tuple{}};
  for (auto m : moduli) {
    std::vector<Tuple> next;
    for (const auto& t : out) {
      for (std::int64_t r = 0; r < m; ++r) {
        auto u = t;
        u.push_back(r);
        next.push_back(u);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Depth of d1Z \cap d2Z read off by element enumeration inside
/// prod Z/(d1(i) d2(i)): smallest n > 0 with n e_i in both subgroups.
inline zset::DepthFn intersect_depth(const zset::DepthFn& d1, const zset::DepthFn& d2) {
  std::set<zset::Coord> coords;
  for (auto& kv : d1.entries()) coords.insert(kv.first);
  for (auto& kv : d2.entries()) coords.insert(kv.first);
  std::vector<zset::Coord> cs(coords.begin(), coords.end());
  std::vector<std::int64_t> mod;
  for (auto c : cs) mod.push_back(static_cast<std::int64_t>(d1(c) * d2(c)));
  std::set<Tuple> inter;
  for (const auto& t : all_tuples(mod)) {
    bool in = true;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      in = in && t[k] % static_cast<std::int64_t>(d1(cs[k])) == 0 &&
           t[k] % static_cast<std::int64_t>(d2(cs[k])) == 0;
    }
    if (in) inter.insert(t);
  }
  zset::DepthFn out;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (std::int64_t n = 1; n <= mod[k]; ++n) {
      Tuple t(cs.size(), 0);
      t[k] = n % mod[k];
      if (inter.count(t)) {
        out.set(cs[k], static_cast<zset::Depth>(n));
        break;
      }
    }
  }
  return out;
}

/// d1Z <= d2Z checked on the elements of d1Z inside prod Z/(d1 d2).
inline bool contained(const zset::DepthFn& d1, const zset::DepthFn& d2) {
  std::set<zset::Coord> coords;
  for (auto& kv : d1.entries()) coords.insert(kv.first);
  for (auto& kv : d2.entries()) coords.insert(kv.first);
  std::vector<zset::Coord> cs(coords.begin(), coords.end());
  std::vector<std::int64_t> mod;
  for (auto c : cs) mod.push_back(static_cast<std::int64_t>(d1(c) * d2(c)));
  for (const auto& t : all_tuples(mod)) {
    bool in1 = true, in2 = true;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      in1 = in1 && t[k] % static_cast<std::int64_t>(d1(cs[k])) == 0;
      in2 = in2 && t[k] % static_cast<std::int64_t>(d2(cs[k])) == 0;
    }
    if (in1 && !in2) return false;
  }
  return true;
}

/// Subgroup of prod Z/moduli generated by `gens`, by repeated addition.
inline std::set<Tuple> generated(const std::vector<std::int64_t>& moduli, const std::vector<Tuple>& gens) {
  std::set<Tuple> s{Tuple(moduli.size(), 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Tuple> cur(s.begin(), s.end());
    for (const auto& a : cur) {
      for (const auto& g : gens) {
        Tuple b(moduli.size());
        for (std::size_t k = 0; k < b.size(); ++k) b[k] = (a[k] + g[k]) % moduli[k];
        if (s.insert(b).second) grew = true;
      }
    }
  }
  return s;
}

/// Number of functions f: X -> Y (carriers 0..nx-1, 0..ny-1) commuting with
/// the given generator permutations, by backtracking over all functions with
/// a consistency check after each assignment. Returns the function tables.
inline std::vector<std::vector<std::size_t>> equivariant_functions(
    std::size_t nx, std::size_t ny, const std::vector<std::vector<std::size_t>>& gen_x,
    const std::vector<std::vector<std::size_t>>& gen_y) {
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::vector<std::size_t>> inv_x(gen_x.size(), std::vector<std::size_t>(nx));
  for (std::size_t j = 0; j < gen_x.size(); ++j) {
    for (std::size_t a = 0; a < nx; ++a) inv_x[j][gen_x[j][a]] = a;
  }
  std::vector<std::size_t> f(nx, 0);
  std::vector<char> assigned(nx, 0);
  // Only constraints touching x can become violated when x is assigned.
  auto consistent = [&](std::size_t x) {
    for (std::size_t j = 0; j < gen_x.size(); ++j) {
      std::size_t b = gen_x[j][x];
      if (assigned[b] && f[b] != gen_y[j][f[x]]) return false;
      std::size_t a = inv_x[j][x];
      if (assigned[a] && f[x] != gen_y[j][f[a]]) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (x == nx) {
      found.push_back(f);
      return;
    }
    for (std::size_t y = 0; y < ny; ++y) {
      f[x] = y;
      assigned[x] = 1;
      if (consistent(x)) rec(x + 1);
      assigned[x] = 0;
    }
  };
  rec(0);
  return found;
}

/// Carrier of a coproduct of Z/H_k, built from raw tuples over a fixed list
/// of coordinates with moduli `moduli` (each a multiple of every base):
/// points are cosets of the preimage of H_k, and gens[j] is the permutation
/// induced by the unit vector at coordinate coords[j].
struct Carrier {
  std::vector<zset::Coord> coords;
  std::vector<std::int64_t> moduli;
  std::vector<std::size_t> orbit_of;
  std::map<std::pair<std::size_t, Tuple>, std::size_t> where;
  std::vector<std::vector<std::size_t>> gens;

  std::size_t size() const { return orbit_of.size(); }

  std::size_t find(std::size_t orbit, const zset::ResidueVector& v) const {
    Tuple t;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      t.push_back(((v(coords[k]) % moduli[k]) + moduli[k]) % moduli[k]);
    }
    return where.at({orbit, t});
  }
};

inline Carrier carrier(const std::vector<zset::StabilizerSpec>& orbits, const std::vector<zset::Coord>& coords,
                       const std::vector<std::int64_t>& moduli) {
  Carrier c;
  c.coords = coords;
  c.moduli = moduli;
  auto tuples = all_tuples(moduli);
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const auto& s = orbits[o];
    std::vector<std::int64_t> bm;
    for (auto co : coords) bm.push_back(static_cast<std::int64_t>(s.base(co)));
    std::vector<Tuple> gens;
    for (const auto& g : s.generators) {
      Tuple t;
      for (auto co : coords) t.push_back(g(co));
      gens.push_back(t);
    }
    auto h = generated(bm, gens);
    auto in_h = [&](const Tuple& t) {
      Tuple r(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) r[k] = t[k] % bm[k];
      return h.count(r) > 0;
    };
    std::vector<Tuple> preimage;
    for (const auto& t : tuples) {
      if (in_h(t)) preimage.push_back(t);
    }
    for (const auto& t : tuples) {
      if (c.where.count({o, t})) continue;
      std::size_t p = c.orbit_of.size();
      c.orbit_of.push_back(o);
      for (const auto& u : preimage) {
        Tuple w(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) w[k] = (t[k] + u[k]) % moduli[k];
        c.where[{o, w}] = p;
      }
    }
  }
  c.gens.assign(coords.size(), std::vector<std::size_t>(c.size()));
  for (const auto& [key, p] : c.where) {
    for (std::size_t j = 0; j < coords.size(); ++j) {
      Tuple w = key.second;
      w[j] = (w[j] + 1) % moduli[j];
      c.gens[j][p] = c.where.at({key.first, w});
    }
  }
  return c;
}

/// Coordinates and lcm moduli covering every base in `specs`.
inline std::pair<std::vector<zset::Coord>, std::vector<std::int64_t>> common_frame(
    const std::vector<zset::StabilizerSpec>& specs) {
  std::map<zset::Coord, std::int64_t> m;
  for (const auto& s : specs) {
    for (const auto& [i, n] : s.base.entries()) {
      auto& cur = m.try_emplace(i, 1).first->second;
      cur = std::lcm(cur, static_cast<std::int64_t>(n));
    }
  }
  std::vector<zset::Coord> cs;
  std::vector<std::int64_t> ms;
  for (const auto& [i, n] : m) {
    cs.push_back(i);
    ms.push_back(n);
  }
  return {cs, ms};
}

}  // namespace zset::brute
