#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "zset/corpus.hpp"
#include "zset/formula.hpp"

using namespace zset;

TEST(Parse, Examples) {
  EXPECT_EQ(parse("top"), Formula::top());
  auto f = parse("forall X . exists f : X -> X . f = f");
  auto x = ObjTerm::var("X");
  EXPECT_EQ(f, Formula::forall_obj("X", Formula::exists_arr("f", x, x, Formula::equal(ArrTerm::var("f"), ArrTerm::var("f")))));

  Signature sig{{"X", ParamSort::object()}, {"Y", ParamSort::object()}};
  auto g = parse("not (exists p : $Y -> $X . epi(p))", sig);
  EXPECT_EQ(g, Formula::negation(Formula::exists_arr("p", ObjTerm::param("Y"), ObjTerm::param("X"),
                                                     Formula::epi(ArrTerm::var("p")))));
}

TEST(Parse, PrecedenceAndAssociativity) {
  auto t = Formula::top();
  auto b = Formula::bot();
  EXPECT_EQ(parse("top and bot or top"), Formula::disj(Formula::conj(t, b), t));
  EXPECT_EQ(parse("top or bot and top"), Formula::disj(t, Formula::conj(b, t)));
  EXPECT_EQ(parse("top implies bot implies top"), Formula::implies(t, Formula::implies(b, t)));
  EXPECT_EQ(parse("not top and bot"), Formula::conj(Formula::negation(t), b));
  EXPECT_EQ(parse("top and bot and top"), Formula::conj(Formula::conj(t, b), t));
  // binders reach to the end
  EXPECT_EQ(parse("forall X . top and bot"), Formula::forall_obj("X", Formula::conj(t, b)));
  EXPECT_EQ(parse("top and forall X . bot or top"), Formula::conj(t, Formula::forall_obj("X", Formula::disj(b, t))));
  EXPECT_EQ(parse("  top\n\tand(bot)"), Formula::conj(t, b));
}

TEST(Parse, TermTyping) {
  auto f = parse("forall X . forall Y . forall Z . forall f : X -> Y . forall g : Y -> Z . forall h : X -> Z . comp(g, f) = h");
  EXPECT_EQ(f.kind, Formula::Kind::ForallObj);
  EXPECT_NO_THROW(parse("forall A . forall B . forall C . forall a : A -> C . forall b : B -> C . "
                        "forall k : pb(a, b) -> A . pr1(a, b) = k and comp(a, pr1(a, b)) = comp(b, pr2(a, b))"));
  EXPECT_NO_THROW(parse("forall X . id(X) = id(X) and conn(X)"));
}

TEST(Parse, Errors) {
  try {
    parse("top and");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse("top & bot"), SyntaxError);
  EXPECT_THROW(parse("(top"), SyntaxError);
  EXPECT_THROW(parse("forall f . top"), SyntaxError);
  EXPECT_THROW(parse("forall X . forall X . top"), SyntaxError);
  EXPECT_THROW(parse("epi(f)"), UnboundVariable);
  EXPECT_THROW(parse("conn(X)"), UnboundVariable);
  EXPECT_THROW(parse("conn($A)"), UnboundVariable);
  EXPECT_THROW(parse("forall X . forall f : X -> X . conn(f)"), SortError);
  EXPECT_THROW(parse("forall X . epi(X)"), SortError);
  EXPECT_THROW(parse("forall X . forall Y . forall f : X -> Y . forall g : X -> Y . comp(g, f) = f"), SortError);
  EXPECT_THROW(parse("forall X . forall Y . forall f : X -> Y . f = id(X)"), SortError);
  Signature sig{{"A", ParamSort::object()}};
  EXPECT_THROW(parse("epi($A)", sig), SortError);
  try {
    parse("forall X . forall Y . forall f : X -> Y . forall g : X -> Y . comp(g, f) = f");
  } catch (const SortError& e) {
    EXPECT_EQ(e.variable(), "g");
  }
}

TEST(Corpus, ContainsStatements) {
  auto corpus = builtin_corpus();
  std::vector<std::string> names;
  for (const auto& e : corpus) names.push_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"int_WISC", "neg_WISC", "neg_WISC_simple", "neg_WISC_inner"}));

  // forall X, exists Y (the cover V ->> U after unfolding), forall Z, forall q
  const Formula* f = &corpus[0].formula;
  std::vector<Formula::Kind> prefix;
  while (f->is_binder()) {
    prefix.push_back(f->kind);
    f = &f->body();
  }
  using K = Formula::Kind;
  EXPECT_EQ(prefix, (std::vector<K>{K::ForallObj, K::ExistsObj, K::ForallObj, K::ForallArr}));

  auto simple = corpus_entry("neg_WISC_simple");
  std::vector<std::string> params;
  collect_params(simple.formula, params);
  EXPECT_EQ(params, (std::vector<std::string>{"N"}));
  EXPECT_NE(simple.text.find("pi0iso"), std::string::npos);
  EXPECT_THROW(corpus_entry("nope"), InputError);
}

TEST(Corpus, RoundTrips) {
  for (const auto& e : builtin_corpus()) {
    EXPECT_EQ(parse(print(e.formula), e.signature), e.formula) << e.name;
    EXPECT_EQ(formula_from_json(to_json(e.formula)), e.formula) << e.name;
    EXPECT_NO_THROW(check(e.formula, e.signature));
  }
}

namespace {

/// Random well-sorted formulas over a growing scope.
class Generator {
 public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  Formula formula(int depth) {
    int choice = pick(depth <= 1 ? 5 : 13);
    switch (choice) {
      case 0: return Formula::top();
      case 1: return Formula::bot();
      case 2:
        if (!arrows_.empty()) {
          auto [a, d, c] = arrow(2);
          auto b = pick(2) ? a : ArrTerm::comp(ArrTerm::id(c), a);
          return Formula::equal(a, b);
        }
        return Formula::top();
      case 3:
        if (!arrows_.empty()) {
          auto [a, d, c] = arrow(2);
          return pick(2) ? Formula::epi(a) : Formula::pi0iso(a);
        }
        return Formula::bot();
      case 4:
        if (!objects_.empty()) return Formula::conn(object(2));
        return Formula::top();
      case 5: return Formula::conj(formula(depth - 1), formula(depth - 1));
      case 6: return Formula::disj(formula(depth - 1), formula(depth - 1));
      case 7: return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 8: return Formula::negation(formula(depth - 1));
      case 9:
      case 10: {
        std::string v = "X" + std::to_string(fresh_++);
        objects_.push_back(v);
        Formula body = formula(depth - 1);
        objects_.pop_back();
        return choice == 9 ? Formula::forall_obj(v, body) : Formula::exists_obj(v, body);
      }
      default: {
        if (objects_.empty()) return formula(depth);
        std::string v = "f" + std::to_string(fresh_++);
        ObjTerm d = object(1), c = object(1);
        arrows_.push_back(Typed{ArrTerm::var(v), d, c});
        Formula body = formula(depth - 1);
        arrows_.pop_back();
        return choice == 11 ? Formula::forall_arr(v, d, c, body) : Formula::exists_arr(v, d, c, body);
      }
    }
  }

 private:
  struct Typed {
    ArrTerm term;
    ObjTerm dom, cod;
  };
  std::mt19937 rng_;
  int fresh_ = 0;
  std::vector<std::string> objects_;
  std::vector<Typed> arrows_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  ObjTerm object(int depth) {
    if (depth > 0 && !arrows_.empty() && pick(3) == 0) {
      auto a = arrow(depth - 1);
      return ObjTerm::pullback(a.term, a.term);
    }
    return ObjTerm::var(objects_[static_cast<std::size_t>(pick(static_cast<int>(objects_.size())))]);
  }

  Typed arrow(int depth) {
    Typed t = arrows_[static_cast<std::size_t>(pick(static_cast<int>(arrows_.size())))];
    if (depth <= 0) return t;
    switch (pick(4)) {
      case 0: {
        ObjTerm x = object(depth - 1);
        return {ArrTerm::id(x), x, x};
      }
      case 1: return {ArrTerm::comp(ArrTerm::id(t.cod), t.term), t.dom, t.cod};
      case 2: return {ArrTerm::pr2(t.term, t.term), ObjTerm::pullback(t.term, t.term), t.dom};
      default: return t;
    }
  }
};

}  // namespace

TEST(Printer, ParseInvertsPrintOnRandomFormulas) {
  Generator gen(20261015);
  for (int k = 0; k < 1000; ++k) {
    Formula f = gen.formula(6);
    std::string text = print(f);
    Formula g;
    ASSERT_NO_THROW(g = parse(text)) << text;
    EXPECT_EQ(g, f) << text;
    EXPECT_EQ(formula_from_json(to_json(f)), f);
  }
}
