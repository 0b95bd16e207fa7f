#pragma once

// The finite quotients A_d = prod_{i in supp d} Z/d(i) and their subgroups.
// Everything here is decided by enumerating elements; the groups that occur
// at search scale have at most a few thousand elements.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <vector>

#include "zset/depth.hpp"
#include "zset/error.hpp"

namespace zset {

inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 22;

/// A_d in mixed radix: element index = sum digit_k * stride_k, the first
/// support coordinate being most significant, so index order is the
/// lexicographic order of residue tuples.
class AmbientGroup {
 public:
  AmbientGroup() : order_(1) {}
  explicit AmbientGroup(const DepthFn& d) : depth_(d), order_(1) {
    for (const auto& [i, n] : d.entries()) {
      coords_.push_back(i);
      moduli_.push_back(n);
    }
    strides_.assign(coords_.size(), 1);
    for (std::size_t k = coords_.size(); k-- > 0;) {
      strides_[k] = order_;
      if (moduli_[k] > kMaxGroupOrder / order_) {
        throw InputError("ambient group " + d.to_string() + " is too large to enumerate");
      }
      order_ *= moduli_[k];
    }
  }

  const DepthFn& depth() const { return depth_; }
  std::size_t order() const { return order_; }
  std::size_t rank() const { return coords_.size(); }
  std::span<const Coord> coords() const { return coords_; }
  std::span<const Depth> moduli() const { return moduli_; }
  std::size_t stride(std::size_t k) const { return strides_[k]; }

  std::size_t encode(const ResidueVector& v) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      auto m = static_cast<std::int64_t>(moduli_[k]);
      auto r = ((v(coords_[k]) % m) + m) % m;
      idx += static_cast<std::size_t>(r) * strides_[k];
    }
    return idx;
  }

  std::size_t digit(std::size_t idx, std::size_t k) const {
    return (idx / strides_[k]) % moduli_[k];
  }

  ResidueVector decode(std::size_t idx) const {
    ResidueVector v;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      v.set(coords_[k], static_cast<std::int64_t>(digit(idx, k)));
    }
    return v;
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      idx += ((digit(a, k) + digit(b, k)) % moduli_[k]) * strides_[k];
    }
    return idx;
  }

  std::size_t negate(std::size_t a) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < coords_.size(); ++k) {
      idx += ((moduli_[k] - digit(a, k)) % moduli_[k]) * strides_[k];
    }
    return idx;
  }

  /// a + e_{coords[k]}
  std::size_t shift(std::size_t a, std::size_t k) const {
    std::size_t dk = digit(a, k);
    return dk + 1 == moduli_[k] ? a - dk * strides_[k] : a + strides_[k];
  }

 private:
  DepthFn depth_;
  std::vector<Coord> coords_;
  std::vector<Depth> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_;
};

/// A subgroup of some A_d, stored as a membership table.
class Subgroup {
 public:
  Subgroup() = default;

  /// Closure of `generators` (given as element indices) under addition.
  Subgroup(AmbientGroup group, std::span<const std::size_t> generators)
      : group_(std::move(group)), member_(group_.order(), 0) {
    std::deque<std::size_t> queue{0};
    member_[0] = 1;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t g : generators) {
        std::size_t y = group_.add(x, g);
        if (!member_[y]) {
          member_[y] = 1;
          queue.push_back(y);
        }
      }
    }
    for (std::size_t i = 0; i < member_.size(); ++i) {
      if (member_[i]) elements_.push_back(i);
    }
  }

  /// `member` must already be closed under addition.
  static Subgroup from_members(AmbientGroup group, std::vector<char> member) {
    Subgroup h;
    h.group_ = std::move(group);
    h.member_ = std::move(member);
    for (std::size_t i = 0; i < h.member_.size(); ++i) {
      if (h.member_[i]) h.elements_.push_back(i);
    }
    return h;
  }

  const AmbientGroup& group() const { return group_; }
  bool contains(std::size_t idx) const { return member_[idx] != 0; }
  bool contains(const ResidueVector& v) const { return contains(group_.encode(v)); }
  std::span<const std::size_t> elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return group_.order() / elements_.size(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_.depth() == b.group_.depth() && a.elements_ == b.elements_;
  }

 private:
  AmbientGroup group_;
  std::vector<char> member_;
  std::vector<std::size_t> elements_;
};

/// A subgroup H of Z^N with dZ <= H, given as base d plus generators of
/// H/dZ inside A_d.
struct StabilizerSpec {
  DepthFn base;
  std::vector<ResidueVector> generators;

  void validate() const {
    for (const auto& g : generators) {
      if (!g.is_reduced(base)) {
        throw InputError("generator " + g.to_string() + " is not reduced modulo " +
                         base.to_string());
      }
    }
  }

  bool product_form() const { return generators.empty(); }

  friend bool operator==(const StabilizerSpec&, const StabilizerSpec&) = default;
};

inline StabilizerSpec product_form(DepthFn d) { return StabilizerSpec{std::move(d), {}}; }

inline Subgroup generated_subgroup(const StabilizerSpec& s) {
  AmbientGroup grp(s.base);
  std::vector<std::size_t> gens;
  gens.reserve(s.generators.size());
  for (const auto& g : s.generators) gens.push_back(grp.encode(g));
  return Subgroup(std::move(grp), gens);
}

inline bool subgroup_contains(const StabilizerSpec& s, const ResidueVector& v) {
  if (!v.is_reduced(s.base)) throw InputError("vector not reduced modulo the base");
  return generated_subgroup(s).contains(v);
}

/// [A_d : H/dZ], the size of the transitive set Z/H.
inline std::size_t subgroup_index(const StabilizerSpec& s) {
  return generated_subgroup(s).index();
}

/// H1 <= H2 as subgroups of Z^N. Checks the generators of H1 and the
/// relations d1(i) e_i on the union of both supports.
inline bool subgroup_le(const StabilizerSpec& s1, const Subgroup& h2) {
  const DepthFn& b2 = h2.group().depth();
  for (const auto& g : s1.generators) {
    if (!h2.contains(g)) return false;
  }
  for (const auto& [i, n] : b2.entries()) {
    (void)n;
    auto rel = ResidueVector::unit(i, static_cast<std::int64_t>(s1.base(i)));
    if (!h2.contains(rel)) return false;
  }
  return true;
}

inline bool subgroup_le(const StabilizerSpec& s1, const StabilizerSpec& s2) {
  return subgroup_le(s1, generated_subgroup(s2));
}

/// Greedy generating set: walk the elements in index order and keep each one
/// not already in the span of those kept. Depends only on the subgroup.
inline std::vector<ResidueVector> canonical_generators(const Subgroup& h) {
  const AmbientGroup& grp = h.group();
  std::vector<std::size_t> kept;
  Subgroup span(grp, kept);
  for (std::size_t e : h.elements()) {
    if (span.contains(e)) continue;
    kept.push_back(e);
    span = Subgroup(grp, kept);
  }
  std::vector<ResidueVector> out;
  out.reserve(kept.size());
  for (std::size_t e : kept) out.push_back(grp.decode(e));
  return out;
}

/// Smallest base d' with d'Z <= H, read off from the subgroup: d'(i) is the
/// order of e_i modulo H.
inline DepthFn minimal_base(const Subgroup& h) {
  const AmbientGroup& grp = h.group();
  DepthFn out;
  for (std::size_t k = 0; k < grp.rank(); ++k) {
    Depth n = 1;
    std::size_t x = grp.shift(0, k);
    while (!h.contains(x)) {
      ++n;
      x = grp.shift(x, k);
    }
    out.set(grp.coords()[k], n);
  }
  return out;
}

/// Normal form of a subgroup from an arbitrary element membership table:
/// minimal base plus canonical generators of H/d'Z. Two specs name the same
/// subgroup iff their canonical forms are equal.
inline StabilizerSpec canonical_stabilizer(const Subgroup& h) {
  DepthFn dmin = minimal_base(h);
  AmbientGroup small(dmin);
  std::vector<std::size_t> image;
  for (std::size_t e : h.elements()) image.push_back(small.encode(h.group().decode(e)));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  Subgroup projected(small, image);
  return StabilizerSpec{dmin, canonical_generators(projected)};
}

inline StabilizerSpec canonicalize(const StabilizerSpec& s) {
  s.validate();
  return canonical_stabilizer(generated_subgroup(s));
}

/// The transitive set Z/H = A_d / (H/dZ). Points are numbered 0..size-1 in
/// order of their minimal representatives; point 0 is the basepoint coset.
class CosetSpace {
 public:
  explicit CosetSpace(const StabilizerSpec& s) : sub_(generated_subgroup(s)) {
    const AmbientGroup& grp = sub_.group();
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    point_of_.assign(grp.order(), kUnset);
    for (std::size_t x = 0; x < grp.order(); ++x) {
      if (point_of_[x] != kUnset) continue;
      std::size_t p = reps_.size();
      reps_.push_back(x);
      for (std::size_t h : sub_.elements()) point_of_[grp.add(x, h)] = p;
    }
  }

  const AmbientGroup& group() const { return sub_.group(); }
  const Subgroup& subgroup() const { return sub_; }
  std::size_t size() const { return reps_.size(); }

  /// Point containing the group element with index `idx`.
  std::size_t point(std::size_t idx) const { return point_of_[idx]; }
  std::size_t point(const ResidueVector& v) const { return point_of_[group().encode(v)]; }
  /// Minimal representative of point p.
  std::size_t rep(std::size_t p) const { return reps_[p]; }
  ResidueVector rep_vector(std::size_t p) const { return group().decode(reps_[p]); }

  /// g + point, for g an arbitrary integer vector.
  std::size_t act(const ResidueVector& g, std::size_t p) const {
    return point_of_[group().add(group().encode(g), reps_[p])];
  }

 private:
  Subgroup sub_;
  std::vector<std::size_t> point_of_;
  std::vector<std::size_t> reps_;
};

}  // namespace zset
