#pragma once

// Machine forms of the WISC sentences.

#include <string>
#include <vector>

#include "zset/formula.hpp"

namespace zset {

struct CorpusEntry {
  std::string name;
  std::string text;
  Signature signature;
  Formula formula;
};

namespace detail {

inline CorpusEntry entry(std::string name, std::string text, Signature sig = {}) {
  Formula f = parse(text, sig);
  return CorpusEntry{std::move(name), std::move(text), std::move(sig), std::move(f)};
}

}  // namespace detail

/// int_WISC: every X has a Y such that every epi onto X is split, up to an
/// epi, by a map out of Y. Unfolding the quantifiers over a connected stage
/// gives the cover-and-pullback prefix forall X, exists V ->> U, forall W,
/// exists T ->> W, ending in an epi.
/// neg_WISC: its negation with the negation pushed inward.
/// neg_WISC_simple: the sufficient condition with an Omega over N_d; $N is
/// the truncated natural numbers.
/// neg_WISC_inner: the part of neg_WISC_simple after Omega is chosen, with
/// V, Y, the cover y and Omega as parameters.
inline std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back(detail::entry(
      "int_WISC",
      "forall X . exists Y . forall Z . forall q : Z -> X . epi(q) implies "
      "(exists s : Y -> Z . epi(comp(q, s)))"));
  out.push_back(detail::entry(
      "neg_WISC",
      "exists X . forall Y . exists Z . exists q : Z -> X . epi(q) and "
      "(forall s : Y -> Z . not epi(comp(q, s)))"));
  Signature nat{{"N", ParamSort::object()}};
  out.push_back(detail::entry(
      "neg_WISC_simple",
      "forall V . forall Y . forall y : Y -> V . conn(V) and epi(y) implies "
      "(exists O . exists w : O -> $N . epi(w) and pi0iso(w) and "
      "(forall T . forall r : T -> V . conn(T) and epi(r) implies "
      "(forall l : pb(r, y) -> O . not epi(l))))",
      nat));
  Signature inner{{"V", ParamSort::object()},
                  {"Y", ParamSort::object()},
                  {"Omega", ParamSort::object()},
                  {"y", ParamSort::arrow_between(ObjTerm::param("Y"), ObjTerm::param("V"))}};
  out.push_back(detail::entry(
      "neg_WISC_inner",
      "forall T . forall r : T -> $V . conn(T) and epi(r) implies "
      "(forall l : pb(r, $y) -> $Omega . not epi(l))",
      inner));
  return out;
}

inline CorpusEntry corpus_entry(const std::string& name) {
  for (auto& e : builtin_corpus()) {
    if (e.name == name) return e;
  }
  throw InputError("no corpus formula named '" + name + "'");
}

}  // namespace zset
