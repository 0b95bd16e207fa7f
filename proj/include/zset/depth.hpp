#pragma once

// Local depth functions d: N -> N+ with finite support, naming the
// finite-index subgroups dZ = prod_i d(i)Z of Z^N.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zset/error.hpp"

namespace zset {

using Coord = std::uint32_t;
using Depth = std::uint64_t;

namespace detail {

inline Depth checked_lcm(Depth a, Depth b) {
  Depth g = std::gcd(a, b);
  Depth q = a / g;
  if (b != 0 && q > std::numeric_limits<Depth>::max() / b) {
    throw std::overflow_error("depth lcm overflows");
  }
  return q * b;
}

}  // namespace detail

/// Finite-support function coordinate -> depth >= 1. Depth 1 is never
/// stored, so two DepthFn are equal iff they name the same subgroup.
class DepthFn {
 public:
  using Map = std::map<Coord, Depth>;

  DepthFn() = default;
  DepthFn(std::initializer_list<std::pair<const Coord, Depth>> entries) {
    for (const auto& [i, n] : entries) set(i, n);
  }
  explicit DepthFn(const Map& entries) {
    for (const auto& [i, n] : entries) set(i, n);
  }

  Depth operator()(Coord i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? 1 : it->second;
  }

  void set(Coord i, Depth n) {
    if (n == 0) throw InputError("depth values must be >= 1");
    if (n == 1) {
      entries_.erase(i);
    } else {
      entries_[i] = n;
    }
  }

  const Map& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool trivial() const { return entries_.empty(); }

  std::vector<Coord> support() const {
    std::vector<Coord> out;
    out.reserve(entries_.size());
    for (const auto& kv : entries_) out.push_back(kv.first);
    return out;
  }

  /// |Z^N / dZ| = prod d(i).
  Depth index() const {
    Depth n = 1;
    for (const auto& kv : entries_) {
      if (kv.second > std::numeric_limits<Depth>::max() / n) {
        throw std::overflow_error("depth index overflows");
      }
      n *= kv.second;
    }
    return n;
  }

  /// Keeps the coordinates strictly below `bound`.
  DepthFn truncated(Coord bound) const {
    DepthFn out;
    for (const auto& [i, n] : entries_) {
      if (i < bound) out.entries_.emplace(i, n);
    }
    return out;
  }

  friend bool operator==(const DepthFn&, const DepthFn&) = default;
  friend auto operator<=>(const DepthFn& a, const DepthFn& b) {
    // (support size, coordinates, values)
    if (a.entries_.size() != b.entries_.size()) return a.entries_.size() <=> b.entries_.size();
    return a.entries_ <=> b.entries_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [i, n] : entries_) {
      if (!first) s += ", ";
      first = false;
      s += std::to_string(i) + "->" + std::to_string(n);
    }
    return s + "}";
  }

 private:
  Map entries_;
};

/// Pointwise lcm; names d1Z \cap d2Z.
inline DepthFn depth_meet(const DepthFn& d1, const DepthFn& d2) {
  DepthFn out = d1;
  for (const auto& [i, n] : d2.entries()) out.set(i, detail::checked_lcm(d1(i), n));
  return out;
}

/// True iff d2(i) | d1(i) everywhere, i.e. d1Z <= d2Z.
inline bool depth_divides(const DepthFn& d1, const DepthFn& d2) {
  for (const auto& [i, n] : d2.entries()) {
    if (d1(i) % n != 0) return false;
  }
  return true;
}

/// n at coordinate i, 1 elsewhere.
inline DepthFn delta_depth(Depth n, Coord i) {
  if (n < 1) throw InputError("delta_depth needs n >= 1");
  DepthFn d;
  d.set(i, n);
  return d;
}

/// Element of Z^N with finitely many nonzero coordinates, usually read modulo
/// some DepthFn. Zero coordinates are never stored.
class ResidueVector {
 public:
  using Map = std::map<Coord, std::int64_t>;

  ResidueVector() = default;
  ResidueVector(std::initializer_list<std::pair<const Coord, std::int64_t>> entries) {
    for (const auto& [i, r] : entries) set(i, r);
  }
  explicit ResidueVector(const Map& entries) {
    for (const auto& [i, r] : entries) set(i, r);
  }

  std::int64_t operator()(Coord i) const {
    auto it = coords_.find(i);
    return it == coords_.end() ? 0 : it->second;
  }
  void set(Coord i, std::int64_t r) {
    if (r == 0) {
      coords_.erase(i);
    } else {
      coords_[i] = r;
    }
  }
  const Map& coords() const { return coords_; }
  bool zero() const { return coords_.empty(); }

  /// Canonical residues in [0, d(i)); coordinates outside supp d vanish.
  ResidueVector reduced(const DepthFn& d) const {
    ResidueVector out;
    for (const auto& [i, r] : coords_) {
      auto m = static_cast<std::int64_t>(d(i));
      out.set(i, ((r % m) + m) % m);
    }
    return out;
  }

  bool is_reduced(const DepthFn& d) const {
    for (const auto& [i, r] : coords_) {
      if (r < 0 || static_cast<Depth>(r) >= d(i)) return false;
    }
    return true;
  }

  ResidueVector operator+(const ResidueVector& o) const {
    ResidueVector out = *this;
    for (const auto& [i, r] : o.coords_) out.set(i, (*this)(i) + r);
    return out;
  }
  ResidueVector operator-() const {
    ResidueVector out;
    for (const auto& [i, r] : coords_) out.set(i, -r);
    return out;
  }
  ResidueVector scaled(std::int64_t k) const {
    ResidueVector out;
    for (const auto& [i, r] : coords_) out.set(i, r * k);
    return out;
  }

  static ResidueVector unit(Coord i, std::int64_t k = 1) {
    ResidueVector v;
    v.set(i, k);
    return v;
  }

  friend bool operator==(const ResidueVector&, const ResidueVector&) = default;
  friend auto operator<=>(const ResidueVector&, const ResidueVector&) = default;

  std::string to_string() const {
    std::string s = "(";
    bool first = true;
    for (const auto& [i, r] : coords_) {
      if (!first) s += ", ";
      first = false;
      s += std::to_string(i) + "->" + std::to_string(r);
    }
    return s + ")";
  }

 private:
  Map coords_;
};

/// Finitizes the unbounded quantifiers: every enumerated object uses at most
/// `max_support` nonunit coordinates, all below `max_coord`, depth values at
/// most `max_depth`, and at most `max_orbits` orbits.
struct SearchBounds {
  std::uint32_t max_support = 1;
  std::uint32_t max_coord = 1;
  std::uint32_t max_depth = 2;
  std::uint32_t max_orbits = 1;

  void validate() const {
    if (max_support < 1 || max_coord < 1 || max_depth < 1 || max_orbits < 1) {
      throw InputError("search bounds must all be >= 1");
    }
  }

  friend bool operator==(const SearchBounds&, const SearchBounds&) = default;

  std::string to_string() const {
    return "(" + std::to_string(max_support) + "," + std::to_string(max_coord) + "," +
           std::to_string(max_depth) + "," + std::to_string(max_orbits) + ")";
  }
};

}  // namespace zset
