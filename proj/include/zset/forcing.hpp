#pragma once

// Bounded evaluator for the stack-semantics forcing relation U ||- phi over
// finite Z-sets, with a certainty split: True and False are decided, while
// BoundedTrue and BoundedFalse only mean no decisive witness turned up
// within the search bounds.
//
// A stage is a Z-set U. Object values are objects over the stage (a Z-set
// with a structure map to U); arrow values are maps over the stage. Base
// change along p: V -> U takes pullbacks.

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "zset/enumerate.hpp"
#include "zset/formula.hpp"
#include "zset/gset.hpp"
#include "zset/io.hpp"

namespace zset {

enum class Status { True, False, BoundedTrue, BoundedFalse };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::True: return "True";
    case Status::False: return "False";
    case Status::BoundedTrue: return "BoundedTrue";
    case Status::BoundedFalse: return "BoundedFalse";
  }
  return {};
}

inline Status status_from_string(const std::string& s) {
  if (s == "True") return Status::True;
  if (s == "False") return Status::False;
  if (s == "BoundedTrue") return Status::BoundedTrue;
  if (s == "BoundedFalse") return Status::BoundedFalse;
  throw InputError("unknown status '" + s + "'");
}

inline bool certain(Status s) { return s == Status::True || s == Status::False; }
inline bool truthy(Status s) { return s == Status::True || s == Status::BoundedTrue; }

struct ObjVal {
  ZSet object;
  EqMap over;  // object -> stage
};
using ObjPtr = std::shared_ptr<const ObjVal>;

struct ArrVal {
  EqMap map;
  ObjPtr dom, cod;
};

inline ObjPtr make_obj(ZSet object, EqMap over) {
  return std::make_shared<const ObjVal>(ObjVal{std::move(object), std::move(over)});
}

inline bool is_identity(const EqMap& p) {
  if (!(p.source() == p.target())) return false;
  for (std::size_t k = 0; k < p.images().size(); ++k) {
    if (p.images()[k].orbit != k || p.images()[k].point != 0) return false;
  }
  return true;
}

/// Values of parameters ("$name") and bound variables at a stage.
class Env {
 public:
  Env() = default;
  explicit Env(ZSet stage) : stage_(std::move(stage)) {}

  const ZSet& stage() const { return stage_; }
  const std::map<std::string, ObjPtr>& objects() const { return objects_; }
  const std::map<std::string, ArrVal>& arrows() const { return arrows_; }

  Env with_object(const std::string& key, ObjPtr v) const {
    Env e = branch();
    e.objects_[key] = std::move(v);
    return e;
  }
  Env with_arrow(const std::string& key, ArrVal v) const {
    Env e = branch();
    e.arrows_[key] = std::move(v);
    return e;
  }

  ObjPtr object(const ObjTerm& t) const {
    switch (t.kind) {
      case ObjTerm::Kind::Var: return lookup_object(t.name);
      case ObjTerm::Kind::Param: return lookup_object("$" + t.name);
      case ObjTerm::Kind::Pullback: return fibre(t).obj;
    }
    return nullptr;
  }

  ArrVal arrow(const ArrTerm& t) const {
    switch (t.kind) {
      case ArrTerm::Kind::Var: return lookup_arrow(t.name);
      case ArrTerm::Kind::Param: return lookup_arrow("$" + t.name);
      case ArrTerm::Kind::Id: {
        ObjPtr x = object(*t.obj);
        return {identity(x->object), x, x};
      }
      case ArrTerm::Kind::Comp: {
        ArrVal g = arrow(*t.a), f = arrow(*t.b);
        return {compose(g.map, f.map), f.dom, g.cod};
      }
      case ArrTerm::Kind::Pr1:
      case ArrTerm::Kind::Pr2: {
        const Fibre& fb = fibre(ObjTerm::pullback(*t.a, *t.b));
        if (t.kind == ArrTerm::Kind::Pr1) return {fb.pb->proj1, fb.obj, arrow(*t.a).dom};
        return {fb.pb->proj2, fb.obj, arrow(*t.b).dom};
      }
    }
    return {};
  }

  /// p* of every value, for p: V -> stage. A pb(a, b) already built here is
  /// rebuilt from the pulled a and b, and arrows into or out of it are
  /// transported, so the pulled environment evaluates terms consistently.
  Env pull(const EqMap& p) const {
    if (!(p.target() == stage_)) throw InputError("base change: map does not land in the stage");
    if (is_identity(p)) return branch();
    Env e(p.source());
    struct Pulled {
      ObjPtr obj;
      EqMap to_old;                                            // new -> old object
      std::function<EqMap(const EqMap&, const EqMap&)> lift;  // (to V, to old) -> to new
    };
    std::map<const ObjVal*, Pulled> memo;
    std::function<const Pulled&(const ObjPtr&)> pull_obj;
    std::function<ArrVal(const ArrVal&)> pull_arr = [&](const ArrVal& f) {
      const Pulled& d = pull_obj(f.dom);
      const Pulled& c = pull_obj(f.cod);
      return ArrVal{c.lift(d.obj->over, compose(f.map, d.to_old)), d.obj, c.obj};
    };
    pull_obj = [&](const ObjPtr& a) -> const Pulled& {
      auto it = memo.find(a.get());
      if (it != memo.end()) return it->second;
      const Fibre* fb = nullptr;
      std::string key;
      for (const auto& [k, v] : cache_->fibres) {
        if (v.obj.get() == a.get()) {
          fb = &v;
          key = k;
        }
      }
      Pulled r;
      if (!fb) {
        auto pb = std::make_shared<const Pullback>(pullback(p, a->over));
        r.obj = make_obj(pb->object, pb->proj1);
        r.to_old = pb->proj2;
        r.lift = [pb](const EqMap& s, const EqMap& t) { return pair_into(*pb, s, t); };
      } else {
        ArrVal na = pull_arr(arrow(*fb->term.a));
        ArrVal nb = pull_arr(arrow(*fb->term.b));
        auto pb = std::make_shared<const Pullback>(pullback(na.map, nb.map));
        r.obj = make_obj(pb->object, compose(na.dom->over, pb->proj1));
        e.cache_->fibres[key] = Fibre{fb->term, pb, r.obj};
        const Pulled& pa = pull_obj(arrow(*fb->term.a).dom);
        const Pulled& pbb = pull_obj(arrow(*fb->term.b).dom);
        auto old = fb->pb;
        r.to_old = pair_into(*old, compose(pa.to_old, pb->proj1), compose(pbb.to_old, pb->proj2));
        auto la = pa.lift, lb = pbb.lift;
        r.lift = [pb, old, la, lb](const EqMap& s, const EqMap& t) {
          return pair_into(*pb, la(s, compose(old->proj1, t)), lb(s, compose(old->proj2, t)));
        };
      }
      return memo.emplace(a.get(), std::move(r)).first->second;
    };
    for (const auto& [k, a] : objects_) e.objects_[k] = pull_obj(a).obj;
    for (const auto& [k, f] : arrows_) e.arrows_[k] = pull_arr(f);
    for (const auto& [k, v] : cache_->fibres) pull_obj(v.obj);
    return e;
  }

 private:
  struct Fibre {
    ObjTerm term;
    std::shared_ptr<const Pullback> pb;
    ObjPtr obj;
  };
  struct Cache {
    std::map<std::string, Fibre> fibres;
  };

  ZSet stage_;
  std::map<std::string, ObjPtr> objects_;
  std::map<std::string, ArrVal> arrows_;
  // pb(a, b) is built once per environment so that every mention of it
  // denotes the same object
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  // copies share fibres built so far but not ones built later, which may
  // depend on bindings the copy does not have
  Env branch() const {
    Env e = *this;
    e.cache_ = std::make_shared<Cache>(*cache_);
    return e;
  }

  ObjPtr lookup_object(const std::string& k) const {
    auto it = objects_.find(k);
    if (it == objects_.end()) throw UnboundVariable(k);
    return it->second;
  }
  ArrVal lookup_arrow(const std::string& k) const {
    auto it = arrows_.find(k);
    if (it == arrows_.end()) throw UnboundVariable(k);
    return it->second;
  }

  const Fibre& fibre(const ObjTerm& t) const {
    std::string key = print(t);
    auto it = cache_->fibres.find(key);
    if (it != cache_->fibres.end()) return it->second;
    ArrVal a = arrow(*t.a), b = arrow(*t.b);
    auto pb = std::make_shared<const Pullback>(pullback(a.map, b.map));
    auto obj = make_obj(pb->object, compose(a.dom->over, pb->proj1));
    return cache_->fibres[key] = Fibre{t, pb, obj};
  }
};

/// A decision recorded at a node: the stage change p: V -> U, the value
/// bound by a quantifier, or the orbit subsets of a disjunction.
struct Choice {
  std::optional<Over> stage;
  ObjPtr object;
  std::optional<EqMap> arrow;
  std::vector<bool> left, right;
};

/// Result of forcing. Certain verdicts keep the sub-verdicts needed to
/// re-check them without search; bounded ones keep only counts.
struct Verdict {
  Status status = Status::BoundedFalse;
  std::string clause;
  std::optional<Choice> choice;
  std::vector<std::shared_ptr<const Verdict>> children;
  std::size_t explored = 0;
};

using VerdictPtr = std::shared_ptr<const Verdict>;

struct ForceOptions {
  /// Let forall range over connected stages only. Turning it off ranges
  /// over every bounded object over the stage.
  bool connected_only = true;
};

namespace detail {

inline Status bounded_meet(Status a, Status b) {
  if (a == Status::BoundedFalse || b == Status::BoundedFalse) return Status::BoundedFalse;
  return Status::BoundedTrue;
}

inline const Formula& bottom() {
  static const Formula f = Formula::bot();
  return f;
}

inline std::vector<bool> mask_bits(std::size_t mask, std::size_t n) {
  std::vector<bool> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = (mask >> k) & 1U;
  return out;
}

inline bool within(const DepthFn& d, const SearchBounds& b) {
  if (d.entries().size() > b.max_support) return false;
  for (const auto& [i, n] : d.entries()) {
    if (i >= b.max_coord || n > b.max_depth) return false;
  }
  return true;
}

/// Quantifiers range over bounded objects plus the stage's own orbits. A
/// stage outside the bounds would leave that domain degenerate.
inline void require_stage_in_bounds(const ZSet& u, const SearchBounds& b) {
  for (const auto& o : u.orbits()) {
    if (!within(o.set.canonical().base, b)) {
      throw BoundsTooSmall("stage orbit '" + o.label + "' lies outside the search bounds " + b.to_string());
    }
  }
}

inline bool commutes_over(const EqMap& m, const ObjVal& a, const ObjVal& b) {
  return compose(b.over, m).images() == a.over.images();
}

}  // namespace detail

class Forcer {
 public:
  explicit Forcer(SearchBounds b, ForceOptions opt = {}) : bounds_(b), opt_(opt) { bounds_.validate(); }

  const SearchBounds& bounds() const { return bounds_; }

  VerdictPtr force(const Env& env, const Formula& f) const {
    using K = Formula::Kind;
    if (env.stage().empty()) return leaf(Status::True, "initial");
    switch (f.kind) {
      case K::Top: return leaf(Status::True, "top");
      case K::Bot: return leaf(Status::False, "bot");
      case K::Equal:
        return leaf(env.arrow(*f.lhs).map.images() == env.arrow(*f.rhs).map.images() ? Status::True : Status::False,
                    "equal");
      case K::Epi: return leaf(is_epi(env.arrow(*f.lhs).map) ? Status::True : Status::False, "epi");
      case K::Pi0Iso: return leaf(pi0_bijective(env.arrow(*f.lhs).map) ? Status::True : Status::False, "pi0iso");
      case K::Conn: return leaf(env.object(*f.obj)->object.orbit_count() == 1 ? Status::True : Status::False, "conn");
      case K::And: return force_and(env, f);
      case K::Or: return force_or(env, f);
      case K::Implies: return force_implies(env, *f.left, *f.right, "implies");
      case K::Not: return force_implies(env, *f.left, detail::bottom(), "not");
      case K::ExistsObj:
      case K::ExistsArr: return force_exists(env, f);
      case K::ForallObj:
      case K::ForallArr: return force_forall(env, f);
    }
    return leaf(Status::BoundedFalse, "unknown");
  }

  static bool pi0_bijective(const EqMap& f) {
    std::vector<int> hits(f.target().orbit_count(), 0);
    for (const auto& im : f.images()) ++hits[im.orbit];
    for (int h : hits) {
      if (h != 1) return false;
    }
    return true;
  }

  /// Stages a forall ranges over: connected objects over U, or (with
  /// connected_only off) the identity followed by every nonempty bounded
  /// object over U.
  std::vector<Over> forall_stages(const ZSet& u) const {
    std::vector<Over> out;
    if (opt_.connected_only) {
      out = connected_over(u, bounds_);
    } else {
      out.push_back(Over{u, identity(u)});
      for (auto& o : objects_over(u, bounds_)) {
        if (!o.object.empty()) out.push_back(std::move(o));
      }
    }
    if (out.empty() && !u.empty()) throw BoundsTooSmall("no stage over " + std::to_string(u.orbit_count()) + " orbits within bounds");
    return out;
  }

  /// Stages for implication: every p: V -> U, identity first.
  std::vector<Over> implication_stages(const ZSet& u) const {
    std::vector<Over> out{Over{u, identity(u)}};
    for (auto& o : objects_over(u, bounds_)) {
      if (!o.object.empty()) out.push_back(std::move(o));
    }
    return out;
  }

  /// Values of a binder's sort at stage `env`: objects over the stage, or
  /// maps over it between the binder's (pulled back) domain and codomain.
  void for_each_value(const Env& env, const Formula& f, const std::function<bool(const Env&, const Choice&)>& fn) const {
    if (!f.is_arrow_binder()) {
      for (const auto& a : objects_over(env.stage(), bounds_)) {
        Choice c;
        c.object = make_obj(a.object, a.map);
        if (!fn(env.with_object(f.var, c.object), c)) return;
      }
      return;
    }
    ObjPtr a = env.object(*f.dom);
    ObjPtr b = env.object(*f.cod);
    for_each_map(a->object, b->object, [&](const EqMap& m) {
      if (!detail::commutes_over(m, *a, *b)) return true;
      Choice c;
      c.arrow = m;
      return fn(env.with_arrow(f.var, ArrVal{m, a, b}), c);
    });
  }

 private:
  SearchBounds bounds_;
  ForceOptions opt_;

  static VerdictPtr leaf(Status s, std::string clause) {
    auto v = std::make_shared<Verdict>();
    v->status = s;
    v->clause = std::move(clause);
    return v;
  }

  VerdictPtr force_and(const Env& env, const Formula& f) const {
    auto v = std::make_shared<Verdict>();
    v->clause = "and";
    auto a = force(env, *f.left);
    if (a->status == Status::False) {
      v->status = Status::False;
      v->clause = "and_left";
      v->children = {a};
      return v;
    }
    auto b = force(env, *f.right);
    if (b->status == Status::False) {
      v->status = Status::False;
      v->clause = "and_right";
      v->children = {b};
      return v;
    }
    if (a->status == Status::True && b->status == Status::True) {
      v->status = Status::True;
      v->children = {a, b};
      return v;
    }
    v->status = detail::bounded_meet(a->status, b->status);
    return v;
  }

  VerdictPtr force_or(const Env& env, const Formula& f) const {
    const ZSet& u = env.stage();
    const std::size_t n = u.orbit_count();
    if (n > 16) throw InputError("disjunction over more than 16 orbits");
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<VerdictPtr> l(full + 1), r(full + 1);
    for (std::size_t m = 0; m <= full; ++m) {
      auto [sub, inc] = restrict_orbits(u, detail::mask_bits(m, n));
      Env e = env.pull(inc);
      l[m] = force(e, *f.left);
      r[m] = force(e, *f.right);
    }
    auto v = std::make_shared<Verdict>();
    v->clause = "or";
    bool refuted = true, possible = false;
    for (std::size_t s1 = 0; s1 <= full; ++s1) {
      // s2 ranges over supersets of the complement of s1
      std::size_t comp = full & ~s1;
      for (std::size_t sub = s1;; sub = (sub - 1) & s1) {
        std::size_t s2 = comp | sub;
        Status a = l[s1]->status, b = r[s2]->status;
        if (a == Status::True && b == Status::True) {
          v->status = Status::True;
          v->choice = Choice{};
          v->choice->left = detail::mask_bits(s1, n);
          v->choice->right = detail::mask_bits(s2, n);
          v->children = {l[s1], r[s2]};
          return v;
        }
        if (a != Status::False && b != Status::False) refuted = false;
        if (truthy(a) && truthy(b)) possible = true;
        if (sub == 0) break;
      }
    }
    if (refuted) {
      v->status = Status::False;
      v->children = l;
      v->children.insert(v->children.end(), r.begin(), r.end());
      return v;
    }
    v->status = possible ? Status::BoundedTrue : Status::BoundedFalse;
    return v;
  }

  VerdictPtr force_implies(const Env& env, const Formula& a, const Formula& b, const char* clause) const {
    auto v = std::make_shared<Verdict>();
    v->clause = clause;
    auto ca = constant_value(a);
    if (ca && !*ca) {
      // only the initial object forces a false constant
      v->status = Status::True;
      v->clause = std::string(clause) + "_vacuous";
      return v;
    }
    auto here = force(env, b);
    if (here->status == Status::True) {
      v->status = Status::True;
      v->clause = std::string(clause) + "_stable";
      v->children = {here};
      return v;
    }
    if (ca && *ca) {
      // every stage forces a true constant, so this is forcing b at U
      v->status = here->status;
      v->clause = std::string(clause) + "_constant";
      v->children = {here};
      return v;
    }
    Status acc = Status::BoundedTrue;
    for (const auto& s : implication_stages(env.stage())) {
      ++v->explored;
      Env e = env.pull(s.map);
      auto av = force(e, a);
      if (!truthy(av->status)) continue;
      auto bv = is_identity(s.map) ? here : force(e, b);
      if (av->status == Status::True && bv->status == Status::False) {
        v->status = Status::False;
        v->choice = Choice{};
        v->choice->stage = s;
        v->children = {av, bv};
        return v;
      }
      if (!truthy(bv->status) || bv->status == Status::BoundedFalse) acc = Status::BoundedFalse;
    }
    v->status = acc;
    return v;
  }

  static bool is_exists(const Formula& f) {
    return f.kind == Formula::Kind::ExistsObj || f.kind == Formula::Kind::ExistsArr;
  }
  static bool is_forall(const Formula& f) {
    return f.kind == Formula::Kind::ForallObj || f.kind == Formula::Kind::ForallArr;
  }

  // A cover of a cover is a cover, so an existential directly under another
  // one keeps the outer stage; likewise for universals and stages over U.
  VerdictPtr force_body(const Env& inner, const Formula& f) const {
    const Formula& body = f.body();
    if (is_exists(f) && is_exists(body)) return force_exists(inner, body, true);
    if (is_forall(f) && is_forall(body)) return force_forall(inner, body, true);
    return force(inner, body);
  }

  VerdictPtr force_exists(const Env& env, const Formula& f, bool same_stage = false) const {
    auto v = std::make_shared<Verdict>();
    v->clause = f.is_arrow_binder() ? "exists_arr" : "exists_obj";
    detail::require_stage_in_bounds(env.stage(), bounds_);
    bool maybe = false;
    if (env.stage().empty()) return leaf(Status::True, "initial");
    auto covers = same_stage ? std::vector<Over>{Over{env.stage(), identity(env.stage())}} : covers_of(env.stage(), bounds_);
    for (const auto& cover : covers) {
      Env e = env.pull(cover.map);
      bool found = false;
      for_each_value(e, f, [&](const Env& inner, const Choice& c) {
        ++v->explored;
        auto r = force_body(inner, f);
        if (r->status == Status::True) {
          v->status = Status::True;
          v->choice = c;
          v->choice->stage = cover;
          v->children = {r};
          found = true;
          return false;
        }
        if (truthy(r->status)) maybe = true;
        return true;
      });
      if (found) return v;
    }
    v->status = maybe ? Status::BoundedTrue : Status::BoundedFalse;
    return v;
  }

  VerdictPtr force_forall(const Env& env, const Formula& f, bool same_stage = false) const {
    auto v = std::make_shared<Verdict>();
    v->clause = f.is_arrow_binder() ? "forall_arr" : "forall_obj";
    detail::require_stage_in_bounds(env.stage(), bounds_);
    if (!mentions(f.body(), f.var) && !f.is_arrow_binder()) {
      // every stage has objects over it, so forall X . phi is phi here
      auto r = force(env, f.body());
      if (certain(r->status)) {
        v->status = r->status;
        v->clause += "_unused";
        v->children = {r};
        return v;
      }
    }
    Status acc = Status::BoundedTrue;
    if (env.stage().empty()) return leaf(Status::True, "initial");
    auto stages = same_stage ? std::vector<Over>{Over{env.stage(), identity(env.stage())}} : forall_stages(env.stage());
    for (const auto& s : stages) {
      Env e = env.pull(s.map);
      bool refuted = false;
      for_each_value(e, f, [&](const Env& inner, const Choice& c) {
        ++v->explored;
        auto r = force_body(inner, f);
        if (r->status == Status::False) {
          v->status = Status::False;
          v->choice = c;
          v->choice->stage = s;
          v->children = {r};
          refuted = true;
          return false;
        }
        if (r->status == Status::BoundedFalse) acc = Status::BoundedFalse;
        return true;
      });
      if (refuted) return v;
    }
    v->status = acc;
    return v;
  }
};

inline VerdictPtr force(const Env& env, const Formula& f, const SearchBounds& b, ForceOptions opt = {}) {
  return Forcer(b, opt).force(env, f);
}

// ------------------------------------------------------------ revalidation

namespace detail {

/// Re-checks a certain verdict along its recorded choices only. Bounded
/// verdicts carry no claim and pass trivially.
inline bool revalidate(const Env& env, const Formula& f, const Verdict& v) {
  using K = Formula::Kind;
  if (!certain(v.status)) return true;
  const ZSet& u = env.stage();
  if (u.empty()) return v.status == Status::True && v.clause == "initial";
  if (v.clause == "initial") return false;
  auto child = [&](std::size_t k) -> const Verdict& { return *v.children.at(k); };
  auto stage_ok = [&](const Choice& c, bool need_epi) {
    if (!c.stage) return false;
    const Over& s = *c.stage;
    if (!(s.map.target() == u) || !(s.map.source() == s.object)) return false;
    return !need_epi || is_epi(s.map);
  };
  switch (f.kind) {
    case K::Top: return v.status == Status::True;
    case K::Bot: return v.status == Status::False;
    case K::Equal:
      return (env.arrow(*f.lhs).map.images() == env.arrow(*f.rhs).map.images()) == (v.status == Status::True);
    case K::Epi: return is_epi(env.arrow(*f.lhs).map) == (v.status == Status::True);
    case K::Pi0Iso: return Forcer::pi0_bijective(env.arrow(*f.lhs).map) == (v.status == Status::True);
    case K::Conn: return (env.object(*f.obj)->object.orbit_count() == 1) == (v.status == Status::True);
    case K::And:
      if (v.status == Status::True) {
        return child(0).status == Status::True && child(1).status == Status::True &&
               revalidate(env, *f.left, child(0)) && revalidate(env, *f.right, child(1));
      }
      if (v.clause == "and_left") return child(0).status == Status::False && revalidate(env, *f.left, child(0));
      return child(0).status == Status::False && revalidate(env, *f.right, child(0));
    case K::Or: {
      const std::size_t n = u.orbit_count();
      if (v.status == Status::True) {
        const auto& c = *v.choice;
        for (std::size_t k = 0; k < n; ++k) {
          if (!c.left[k] && !c.right[k]) return false;
        }
        auto [s1, i1] = restrict_orbits(u, c.left);
        auto [s2, i2] = restrict_orbits(u, c.right);
        return child(0).status == Status::True && child(1).status == Status::True &&
               revalidate(env.pull(i1), *f.left, child(0)) && revalidate(env.pull(i2), *f.right, child(1));
      }
      const std::size_t full = (std::size_t{1} << n) - 1;
      if (v.children.size() != 2 * (full + 1)) return false;
      for (std::size_t m = 0; m <= full; ++m) {
        auto [sub, inc] = restrict_orbits(u, mask_bits(m, n));
        Env e = env.pull(inc);
        if (!revalidate(e, *f.left, child(m)) || !revalidate(e, *f.right, child(full + 1 + m))) return false;
      }
      for (std::size_t s1 = 0; s1 <= full; ++s1) {
        for (std::size_t s2 = 0; s2 <= full; ++s2) {
          if ((s1 | s2) != full) continue;
          if (child(s1).status != Status::False && child(full + 1 + s2).status != Status::False) return false;
        }
      }
      return true;
    }
    case K::Implies:
    case K::Not: {
      const Formula& a = *f.left;
      const Formula& b = f.kind == K::Not ? bottom() : *f.right;
      const std::string& cl = v.clause;
      if (cl.ends_with("_vacuous")) {
        auto ca = constant_value(a);
        return v.status == Status::True && ca && !*ca;
      }
      if (cl.ends_with("_stable")) return v.status == Status::True && child(0).status == Status::True && revalidate(env, b, child(0));
      if (cl.ends_with("_constant")) {
        auto ca = constant_value(a);
        return ca && *ca && child(0).status == v.status && revalidate(env, b, child(0));
      }
      if (v.status != Status::False || !stage_ok(*v.choice, false)) return false;
      Env e = env.pull(v.choice->stage->map);
      return child(0).status == Status::True && child(1).status == Status::False && revalidate(e, a, child(0)) &&
             revalidate(e, b, child(1));
    }
    case K::ExistsObj:
    case K::ExistsArr:
    case K::ForallObj:
    case K::ForallArr: {
      bool exists = f.kind == K::ExistsObj || f.kind == K::ExistsArr;
      if (v.clause.ends_with("_unused")) {
        return !exists && !mentions(f.body(), f.var) && child(0).status == v.status && revalidate(env, f.body(), child(0));
      }
      // an existential is decided only by a witness, a universal only by a counterexample
      if (v.status != (exists ? Status::True : Status::False)) return false;
      const Choice& c = *v.choice;
      if (!stage_ok(c, exists)) return false;
      Env e = env.pull(c.stage->map);
      Env inner;
      if (f.is_arrow_binder()) {
        if (!c.arrow) return false;
        ObjPtr a = e.object(*f.dom), b = e.object(*f.cod);
        if (!(c.arrow->source() == a->object) || !(c.arrow->target() == b->object)) return false;
        if (!commutes_over(*c.arrow, *a, *b)) return false;
        inner = e.with_arrow(f.var, ArrVal{*c.arrow, a, b});
      } else {
        if (!c.object || !(c.object->over.target() == e.stage()) || !(c.object->over.source() == c.object->object)) {
          return false;
        }
        inner = e.with_object(f.var, c.object);
      }
      return child(0).status == v.status && revalidate(inner, f.body(), child(0));
    }
  }
  return false;
}

}  // namespace detail

inline bool revalidate(const Env& env, const Formula& f, const Verdict& v) { return detail::revalidate(env, f, v); }

// -------------------------------------------------------------------- JSON

inline json to_json(const Over& o) { return {{"object", to_json(o.object)}, {"map", to_json(o.map)}}; }

inline json to_json(const Verdict& v) {
  json j = {{"status", to_string(v.status)}, {"clause", v.clause}};
  if (v.explored) j["explored"] = v.explored;
  if (v.choice) {
    json c = json::object();
    if (v.choice->stage) c["stage"] = to_json(*v.choice->stage);
    if (v.choice->object) c["object"] = {{"object", to_json(v.choice->object->object)}, {"map", to_json(v.choice->object->over)}};
    if (v.choice->arrow) c["arrow"] = to_json(*v.choice->arrow);
    if (!v.choice->left.empty()) c["left"] = v.choice->left;
    if (!v.choice->right.empty()) c["right"] = v.choice->right;
    j["choice"] = c;
  }
  if (!v.children.empty()) {
    json ch = json::array();
    for (const auto& c : v.children) ch.push_back(to_json(*c));
    j["children"] = ch;
  }
  return j;
}

/// {"status", "witness", "bounds", "elapsed_ms"}; the witness is the
/// decision tree of a certain verdict and null otherwise.
inline json verdict_report(const Verdict& v, const SearchBounds& b, double elapsed_ms) {
  return {{"status", to_string(v.status)},
          {"witness", certain(v.status) ? to_json(v) : json(nullptr)},
          {"bounds", to_json(b)},
          {"elapsed_ms", elapsed_ms}};
}

// ---------------------------------------------------------------- stability

struct StabilityReport {
  std::size_t checked = 0;
  std::size_t inconclusive = 0;  // BoundedFalse at a pulled stage
  std::vector<json> violations;
  bool ok() const { return violations.empty(); }
};

/// For a formula forced True at U, checks that up to `samples` stages
/// p: V -> U still force p* phi. A certain False is a violation; a
/// BoundedFalse only means the witness at V lies beyond the bounds.
inline StabilityReport stability_spotcheck(const Env& env, const Formula& f, const SearchBounds& b, std::size_t samples,
                                           ForceOptions opt = {}) {
  Forcer forcer(b, opt);
  auto v = forcer.force(env, f);
  if (v->status != Status::True) throw InputError("stability_spotcheck: formula is not forced True at the stage");
  StabilityReport r;
  for (const auto& s : forcer.implication_stages(env.stage())) {
    if (r.checked >= samples) break;
    ++r.checked;
    auto w = forcer.force(env.pull(s.map), f);
    if (w->status == Status::BoundedFalse) ++r.inconclusive;
    if (w->status == Status::False) {
      r.violations.push_back({{"formula", print(f)}, {"stage", to_json(s)}, {"status", to_string(w->status)}});
    }
  }
  return r;
}

// ------------------------------------------------------------------ context

/// Parameter values over a stage, read from
///   {"params": {"A": {"object": ZSet, "map": EqMap},
///               "f": {"dom": "A", "cod": "B", "map": EqMap}}}
/// Object parameters come first; arrow parameters name object parameters.
inline std::pair<Env, Signature> context_from_json(const json& j, const ZSet& stage) {
  Env env(stage);
  Signature sig;
  if (j.is_null()) return {env, sig};
  const json& params = detail::field(j, "params");
  if (!params.is_object()) throw InputError("params must be an object");
  for (const auto& [name, p] : params.items()) {
    if (p.contains("dom")) continue;
    auto [x, over] = over_from_json(p, stage);
    env = env.with_object("$" + name, make_obj(x, over));
    sig[name] = ParamSort::object();
  }
  for (const auto& [name, p] : params.items()) {
    if (!p.contains("dom")) continue;
    std::string d = detail::field(p, "dom").get<std::string>();
    std::string c = detail::field(p, "cod").get<std::string>();
    auto da = env.objects().find("$" + d);
    auto db = env.objects().find("$" + c);
    if (da == env.objects().end() || db == env.objects().end()) {
      throw InputError("arrow parameter '" + name + "' names an unknown object parameter");
    }
    EqMap m = eqmap_from_json(detail::field(p, "map"), da->second->object, db->second->object);
    if (!detail::commutes_over(m, *da->second, *db->second)) {
      throw InputError("arrow parameter '" + name + "' does not commute with the structure maps");
    }
    env = env.with_arrow("$" + name, ArrVal{m, da->second, db->second});
    sig[name] = ParamSort::arrow_between(ObjTerm::param(d), ObjTerm::param(c));
  }
  return {env, sig};
}

}  // namespace zset
