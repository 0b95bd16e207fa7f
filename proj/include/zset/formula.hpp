#pragma once

// Two-sorted language of category theory: object terms, arrow terms and
// formulas, with a parser that checks scope and sorts as it goes, a printer
// that parse() inverts, and a node-tagged JSON form.
//
// Grammar (whitespace-insensitive):
//   formula  := binder | disj ["implies" formula]
//   binder   := ("forall" | "exists") OBJVAR "." formula
//             | ("forall" | "exists") arrvar ":" obj "->" obj "." formula
//   disj     := conj {"or" conj}
//   conj     := unary {"and" unary}
//   unary    := "not" unary | binder | atom
//   atom     := "top" | "bot" | "(" formula ")" | "epi" "(" arr ")"
//             | "conn" "(" obj ")" | "pi0iso" "(" arr ")" | arr "=" arr
//   obj      := OBJVAR | "$"name | "pb" "(" arr "," arr ")"
//   arr      := arrvar | "$"name | "id" "(" obj ")" | "comp" "(" arr "," arr ")"
//             | "pr1" "(" arr "," arr ")" | "pr2" "(" arr "," arr ")"
// Object variables start with an uppercase letter, arrow variables with a
// lowercase one. comp(g, f) is g after f. A binder may not reuse a name
// that is already in scope.

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "zset/error.hpp"

namespace zset {

struct ArrTerm;

struct ObjTerm {
  enum class Kind { Var, Param, Pullback };
  Kind kind = Kind::Var;
  std::string name;                      // Var, Param
  std::shared_ptr<const ArrTerm> a, b;  // Pullback

  static ObjTerm var(std::string n) { return {Kind::Var, std::move(n), nullptr, nullptr}; }
  static ObjTerm param(std::string n) { return {Kind::Param, std::move(n), nullptr, nullptr}; }
  static ObjTerm pullback(ArrTerm a, ArrTerm b);

  friend bool operator==(const ObjTerm& x, const ObjTerm& y);
};

struct ArrTerm {
  enum class Kind { Var, Param, Id, Comp, Pr1, Pr2 };
  Kind kind = Kind::Var;
  std::string name;                      // Var, Param
  std::shared_ptr<const ObjTerm> obj;   // Id
  std::shared_ptr<const ArrTerm> a, b;  // Comp (g, f), Pr1, Pr2

  static ArrTerm var(std::string n) { return {Kind::Var, std::move(n), nullptr, nullptr, nullptr}; }
  static ArrTerm param(std::string n) { return {Kind::Param, std::move(n), nullptr, nullptr, nullptr}; }
  static ArrTerm id(ObjTerm x) { return {Kind::Id, {}, std::make_shared<const ObjTerm>(std::move(x)), nullptr, nullptr}; }
  static ArrTerm binary(Kind k, ArrTerm x, ArrTerm y) {
    return {k, {}, nullptr, std::make_shared<const ArrTerm>(std::move(x)), std::make_shared<const ArrTerm>(std::move(y))};
  }
  static ArrTerm comp(ArrTerm g, ArrTerm f) { return binary(Kind::Comp, std::move(g), std::move(f)); }
  static ArrTerm pr1(ArrTerm x, ArrTerm y) { return binary(Kind::Pr1, std::move(x), std::move(y)); }
  static ArrTerm pr2(ArrTerm x, ArrTerm y) { return binary(Kind::Pr2, std::move(x), std::move(y)); }

  friend bool operator==(const ArrTerm& x, const ArrTerm& y) {
    if (x.kind != y.kind || x.name != y.name) return false;
    if (!!x.obj != !!y.obj || (x.obj && !(*x.obj == *y.obj))) return false;
    if (!!x.a != !!y.a || (x.a && !(*x.a == *y.a))) return false;
    if (!!x.b != !!y.b || (x.b && !(*x.b == *y.b))) return false;
    return true;
  }
};

inline ObjTerm ObjTerm::pullback(ArrTerm a, ArrTerm b) {
  return {Kind::Pullback, {}, std::make_shared<const ArrTerm>(std::move(a)), std::make_shared<const ArrTerm>(std::move(b))};
}

inline bool operator==(const ObjTerm& x, const ObjTerm& y) {
  if (x.kind != y.kind || x.name != y.name) return false;
  if (!!x.a != !!y.a || (x.a && !(*x.a == *y.a))) return false;
  if (!!x.b != !!y.b || (x.b && !(*x.b == *y.b))) return false;
  return true;
}

struct Formula {
  enum class Kind {
    Top, Bot, Equal, Epi, Conn, Pi0Iso, And, Or, Implies, Not,
    ForallObj, ExistsObj, ForallArr, ExistsArr
  };
  Kind kind = Kind::Top;
  std::string var;                         // binders
  std::shared_ptr<const ObjTerm> obj;     // Conn
  std::shared_ptr<const ObjTerm> dom, cod;  // arrow binders
  std::shared_ptr<const ArrTerm> lhs, rhs;  // Equal (lhs, rhs), Epi / Pi0Iso (lhs)
  std::shared_ptr<const Formula> left, right;  // connectives (Not uses left), binder body in left

  static Formula top() { return Formula{}; }
  static Formula bot() { Formula f; f.kind = Kind::Bot; return f; }
  static Formula equal(ArrTerm a, ArrTerm b) {
    Formula f;
    f.kind = Kind::Equal;
    f.lhs = std::make_shared<const ArrTerm>(std::move(a));
    f.rhs = std::make_shared<const ArrTerm>(std::move(b));
    return f;
  }
  static Formula epi(ArrTerm a) {
    Formula f;
    f.kind = Kind::Epi;
    f.lhs = std::make_shared<const ArrTerm>(std::move(a));
    return f;
  }
  static Formula pi0iso(ArrTerm a) {
    Formula f;
    f.kind = Kind::Pi0Iso;
    f.lhs = std::make_shared<const ArrTerm>(std::move(a));
    return f;
  }
  static Formula conn(ObjTerm x) {
    Formula f;
    f.kind = Kind::Conn;
    f.obj = std::make_shared<const ObjTerm>(std::move(x));
    return f;
  }
  static Formula binary(Kind k, Formula a, Formula b) {
    Formula f;
    f.kind = k;
    f.left = std::make_shared<const Formula>(std::move(a));
    f.right = std::make_shared<const Formula>(std::move(b));
    return f;
  }
  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
  static Formula negation(Formula a) {
    Formula f;
    f.kind = Kind::Not;
    f.left = std::make_shared<const Formula>(std::move(a));
    return f;
  }
  static Formula obj_binder(Kind k, std::string v, Formula body) {
    Formula f;
    f.kind = k;
    f.var = std::move(v);
    f.left = std::make_shared<const Formula>(std::move(body));
    return f;
  }
  static Formula forall_obj(std::string v, Formula body) { return obj_binder(Kind::ForallObj, std::move(v), std::move(body)); }
  static Formula exists_obj(std::string v, Formula body) { return obj_binder(Kind::ExistsObj, std::move(v), std::move(body)); }
  static Formula arr_binder(Kind k, std::string v, ObjTerm d, ObjTerm c, Formula body) {
    Formula f = obj_binder(k, std::move(v), std::move(body));
    f.dom = std::make_shared<const ObjTerm>(std::move(d));
    f.cod = std::make_shared<const ObjTerm>(std::move(c));
    return f;
  }
  static Formula forall_arr(std::string v, ObjTerm d, ObjTerm c, Formula body) {
    return arr_binder(Kind::ForallArr, std::move(v), std::move(d), std::move(c), std::move(body));
  }
  static Formula exists_arr(std::string v, ObjTerm d, ObjTerm c, Formula body) {
    return arr_binder(Kind::ExistsArr, std::move(v), std::move(d), std::move(c), std::move(body));
  }

  bool is_binder() const { return kind >= Kind::ForallObj; }
  bool is_arrow_binder() const { return kind == Kind::ForallArr || kind == Kind::ExistsArr; }
  const Formula& body() const { return *left; }

  friend bool operator==(const Formula& x, const Formula& y) {
    auto same = [](const auto& p, const auto& q) { return !!p == !!q && (!p || *p == *q); };
    return x.kind == y.kind && x.var == y.var && same(x.obj, y.obj) && same(x.dom, y.dom) && same(x.cod, y.cod) &&
           same(x.lhs, y.lhs) && same(x.rhs, y.rhs) && same(x.left, y.left) && same(x.right, y.right);
  }
};

/// Sort of a parameter: an object, or an arrow between object terms built
/// from other parameters.
struct ParamSort {
  bool arrow = false;
  std::optional<ObjTerm> dom, cod;

  static ParamSort object() { return {}; }
  static ParamSort arrow_between(ObjTerm d, ObjTerm c) { return {true, std::move(d), std::move(c)}; }
};

using Signature = std::map<std::string, ParamSort>;

// ---------------------------------------------------------------- printing

std::string print(const ArrTerm& a);

inline std::string print(const ObjTerm& x) {
  switch (x.kind) {
    case ObjTerm::Kind::Var: return x.name;
    case ObjTerm::Kind::Param: return "$" + x.name;
    case ObjTerm::Kind::Pullback: return "pb(" + print(*x.a) + ", " + print(*x.b) + ")";
  }
  return {};
}

inline std::string print(const ArrTerm& a) {
  switch (a.kind) {
    case ArrTerm::Kind::Var: return a.name;
    case ArrTerm::Kind::Param: return "$" + a.name;
    case ArrTerm::Kind::Id: return "id(" + print(*a.obj) + ")";
    case ArrTerm::Kind::Comp: return "comp(" + print(*a.a) + ", " + print(*a.b) + ")";
    case ArrTerm::Kind::Pr1: return "pr1(" + print(*a.a) + ", " + print(*a.b) + ")";
    case ArrTerm::Kind::Pr2: return "pr2(" + print(*a.a) + ", " + print(*a.b) + ")";
  }
  return {};
}

namespace detail {

// Binding strength; binders are loosest and only print bare where they can
// extend to the end of the enclosing text.
inline int level(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Implies: return 1;
    case K::Or: return 2;
    case K::And: return 3;
    case K::Not: return 4;
    default: return f.is_binder() ? 0 : 5;
  }
}

inline std::string print_formula(const Formula& f, int need);

inline std::string wrap(const Formula& f, int need) {
  std::string s = print_formula(f, need);
  return level(f) < need ? "(" + s + ")" : s;
}

inline std::string print_formula(const Formula& f, int /*need*/) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top: return "top";
    case K::Bot: return "bot";
    case K::Equal: return print(*f.lhs) + " = " + print(*f.rhs);
    case K::Epi: return "epi(" + print(*f.lhs) + ")";
    case K::Pi0Iso: return "pi0iso(" + print(*f.lhs) + ")";
    case K::Conn: return "conn(" + print(*f.obj) + ")";
    case K::And: return wrap(*f.left, 3) + " and " + wrap(*f.right, 4);
    case K::Or: return wrap(*f.left, 2) + " or " + wrap(*f.right, 3);
    case K::Implies: return wrap(*f.left, 2) + " implies " + wrap(*f.right, 0);
    case K::Not: return "not " + wrap(*f.left, 4);
    case K::ForallObj: return "forall " + f.var + " . " + wrap(f.body(), 0);
    case K::ExistsObj: return "exists " + f.var + " . " + wrap(f.body(), 0);
    case K::ForallArr:
    case K::ExistsArr:
      return std::string(f.kind == K::ForallArr ? "forall " : "exists ") + f.var + " : " + print(*f.dom) + " -> " +
             print(*f.cod) + " . " + wrap(f.body(), 0);
  }
  return {};
}

}  // namespace detail

inline std::string print(const Formula& f) { return detail::print_formula(f, 0); }

// ----------------------------------------------------------------- parsing

namespace detail {

struct Token {
  enum class Kind { Ident, Param, Sym, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Token::Kind::Ident, s.substr(start, i - start), start});
    } else if (c == '$') {
      ++i;
      while (i < s.size() && ident_char(s[i])) ++i;
      if (i == start + 1) throw SyntaxError(start, "expected a parameter name after '$'");
      out.push_back({Token::Kind::Param, s.substr(start + 1, i - start - 1), start});
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      i += 2;
      out.push_back({Token::Kind::Sym, "->", start});
    } else if (c == '(' || c == ')' || c == ',' || c == '.' || c == ':' || c == '=') {
      ++i;
      out.push_back({Token::Kind::Sym, std::string(1, c), start});
    } else {
      throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

inline bool is_keyword(const std::string& w) {
  static const char* const kw[] = {"top", "bot", "and", "or", "implies", "not", "forall", "exists", "epi",
                                   "conn", "pi0iso", "id", "comp", "pr1", "pr2", "pb"};
  for (const char* k : kw) {
    if (w == k) return true;
  }
  return false;
}

inline bool object_name(const std::string& w) { return std::isupper(static_cast<unsigned char>(w[0])) != 0; }

struct Arrow {
  ArrTerm term;
  ObjTerm dom, cod;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig) : toks_(lex(text)), sig_(sig) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

  ObjTerm parse_object_all() {
    ObjTerm x = object();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return x;
  }

  Arrow parse_arrow_all() {
    Arrow a = arrow();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return a;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  const Signature& sig_;
  // in-scope variables; arrows carry their type
  std::vector<std::string> objects_;
  std::vector<std::pair<std::string, std::pair<ObjTerm, ObjTerm>>> arrows_;

  const Token& peek() const { return toks_[at_]; }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(peek().pos, what); }
  bool word(const char* w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
  bool sym(const char* s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
  void expect_sym(const char* s) {
    if (!sym(s)) fail(std::string("expected '") + s + "'");
    ++at_;
  }

  Formula formula() {
    if (word("forall") || word("exists")) return binder();
    Formula lhs = disjunction();
    if (word("implies")) {
      ++at_;
      return Formula::implies(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (word("or")) {
      ++at_;
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (word("and")) {
      ++at_;
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    if (word("not")) {
      ++at_;
      return Formula::negation(unary());
    }
    if (word("forall") || word("exists")) return binder();
    return atom();
  }

  bool in_scope(const std::string& n) const {
    for (const auto& o : objects_) {
      if (o == n) return true;
    }
    for (const auto& a : arrows_) {
      if (a.first == n) return true;
    }
    return false;
  }

  Formula binder() {
    bool forall = word("forall");
    ++at_;
    if (peek().kind != Token::Kind::Ident || is_keyword(peek().text)) fail("expected a variable name");
    std::string v = peek().text;
    std::size_t vpos = peek().pos;
    ++at_;
    if (in_scope(v)) throw SyntaxError(vpos, "'" + v + "' is already bound");
    if (object_name(v)) {
      expect_sym(".");
      objects_.push_back(v);
      Formula body = formula();
      objects_.pop_back();
      return forall ? Formula::forall_obj(v, std::move(body)) : Formula::exists_obj(v, std::move(body));
    }
    expect_sym(":");
    ObjTerm d = object();
    expect_sym("->");
    ObjTerm c = object();
    expect_sym(".");
    arrows_.push_back({v, {d, c}});
    Formula body = formula();
    arrows_.pop_back();
    return forall ? Formula::forall_arr(v, d, c, std::move(body)) : Formula::exists_arr(v, d, c, std::move(body));
  }

  Formula atom() {
    if (word("top")) {
      ++at_;
      return Formula::top();
    }
    if (word("bot")) {
      ++at_;
      return Formula::bot();
    }
    if (sym("(")) {
      ++at_;
      Formula f = formula();
      expect_sym(")");
      return f;
    }
    if (word("epi") || word("pi0iso")) {
      bool epi = word("epi");
      ++at_;
      expect_sym("(");
      Arrow a = arrow();
      expect_sym(")");
      return epi ? Formula::epi(a.term) : Formula::pi0iso(a.term);
    }
    if (word("conn")) {
      ++at_;
      expect_sym("(");
      ObjTerm x = object();
      expect_sym(")");
      return Formula::conn(x);
    }
    std::size_t pos = peek().pos;
    Arrow a = arrow();
    expect_sym("=");
    Arrow b = arrow();
    if (!(a.dom == b.dom) || !(a.cod == b.cod)) {
      throw SortError(print(b.term), "arrow " + print(a.dom) + " -> " + print(a.cod),
                      "arrow " + print(b.dom) + " -> " + print(b.cod));
    }
    (void)pos;
    return Formula::equal(a.term, b.term);
  }

  ObjTerm object() {
    const Token t = peek();
    if (t.kind == Token::Kind::Param) {
      ++at_;
      auto it = sig_.find(t.text);
      if (it == sig_.end()) throw UnboundVariable("$" + t.text);
      if (it->second.arrow) throw SortError("$" + t.text, "object", "arrow");
      return ObjTerm::param(t.text);
    }
    if (t.kind != Token::Kind::Ident) fail("expected an object term");
    if (t.text == "pb") {
      ++at_;
      expect_sym("(");
      Arrow a = arrow();
      expect_sym(",");
      Arrow b = arrow();
      expect_sym(")");
      if (!(a.cod == b.cod)) throw SortError(print(b.term), "codomain " + print(a.cod), "codomain " + print(b.cod));
      return ObjTerm::pullback(a.term, b.term);
    }
    if (is_keyword(t.text)) fail("expected an object term");
    ++at_;
    if (!object_name(t.text)) {
      if (in_scope(t.text)) throw SortError(t.text, "object", "arrow");
      throw UnboundVariable(t.text);
    }
    for (const auto& o : objects_) {
      if (o == t.text) return ObjTerm::var(t.text);
    }
    throw UnboundVariable(t.text);
  }

  std::pair<Arrow, Arrow> arrow_pair() {
    expect_sym("(");
    Arrow a = arrow();
    expect_sym(",");
    Arrow b = arrow();
    expect_sym(")");
    return {std::move(a), std::move(b)};
  }

  Arrow arrow() {
    const Token t = peek();
    if (t.kind == Token::Kind::Param) {
      ++at_;
      auto it = sig_.find(t.text);
      if (it == sig_.end()) throw UnboundVariable("$" + t.text);
      if (!it->second.arrow) throw SortError("$" + t.text, "arrow", "object");
      return {ArrTerm::param(t.text), *it->second.dom, *it->second.cod};
    }
    if (t.kind != Token::Kind::Ident) fail("expected an arrow term");
    if (t.text == "id") {
      ++at_;
      expect_sym("(");
      ObjTerm x = object();
      expect_sym(")");
      return {ArrTerm::id(x), x, x};
    }
    if (t.text == "comp") {
      ++at_;
      auto [g, f] = arrow_pair();
      if (!(f.cod == g.dom)) throw SortError(print(g.term), "domain " + print(f.cod), "domain " + print(g.dom));
      return {ArrTerm::comp(g.term, f.term), f.dom, g.cod};
    }
    if (t.text == "pr1" || t.text == "pr2") {
      bool first = t.text == "pr1";
      ++at_;
      auto [a, b] = arrow_pair();
      if (!(a.cod == b.cod)) throw SortError(print(b.term), "codomain " + print(a.cod), "codomain " + print(b.cod));
      ObjTerm p = ObjTerm::pullback(a.term, b.term);
      return first ? Arrow{ArrTerm::pr1(a.term, b.term), p, a.dom} : Arrow{ArrTerm::pr2(a.term, b.term), p, b.dom};
    }
    if (is_keyword(t.text)) fail("expected an arrow term");
    ++at_;
    if (object_name(t.text)) {
      if (in_scope(t.text)) throw SortError(t.text, "arrow", "object");
      throw UnboundVariable(t.text);
    }
    for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
      if (it->first == t.text) return {ArrTerm::var(t.text), it->second.first, it->second.second};
    }
    throw UnboundVariable(t.text);
  }
};

}  // namespace detail

inline Formula parse(const std::string& text, const Signature& sig = {}) {
  return detail::Parser(text, sig).parse_all();
}

inline ObjTerm parse_object(const std::string& text, const Signature& sig = {}) {
  return detail::Parser(text, sig).parse_object_all();
}

/// Sorts a well-formed formula by printing and re-parsing it.
inline void check(const Formula& f, const Signature& sig = {}) { (void)parse(print(f), sig); }

/// Parameters mentioned anywhere in the formula.
inline void collect_params(const ObjTerm& x, std::vector<std::string>& out);
inline void collect_params(const ArrTerm& a, std::vector<std::string>& out) {
  if (a.kind == ArrTerm::Kind::Param) out.push_back(a.name);
  if (a.obj) collect_params(*a.obj, out);
  if (a.a) collect_params(*a.a, out);
  if (a.b) collect_params(*a.b, out);
}
inline void collect_params(const ObjTerm& x, std::vector<std::string>& out) {
  if (x.kind == ObjTerm::Kind::Param) out.push_back(x.name);
  if (x.a) collect_params(*x.a, out);
  if (x.b) collect_params(*x.b, out);
}
inline void collect_params(const Formula& f, std::vector<std::string>& out) {
  if (f.obj) collect_params(*f.obj, out);
  if (f.dom) collect_params(*f.dom, out);
  if (f.cod) collect_params(*f.cod, out);
  if (f.lhs) collect_params(*f.lhs, out);
  if (f.rhs) collect_params(*f.rhs, out);
  if (f.left) collect_params(*f.left, out);
  if (f.right) collect_params(*f.right, out);
}

/// Whether variable `v` occurs in the formula (bound occurrences included;
/// names are never rebound, so this is the free-occurrence test for the body
/// of v's binder).
inline bool mentions(const ObjTerm& x, const std::string& v);
inline bool mentions(const ArrTerm& a, const std::string& v) {
  if (a.kind == ArrTerm::Kind::Var && a.name == v) return true;
  return (a.obj && mentions(*a.obj, v)) || (a.a && mentions(*a.a, v)) || (a.b && mentions(*a.b, v));
}
inline bool mentions(const ObjTerm& x, const std::string& v) {
  if (x.kind == ObjTerm::Kind::Var && x.name == v) return true;
  return (x.a && mentions(*x.a, v)) || (x.b && mentions(*x.b, v));
}
inline bool mentions(const Formula& f, const std::string& v) {
  return (f.obj && mentions(*f.obj, v)) || (f.dom && mentions(*f.dom, v)) || (f.cod && mentions(*f.cod, v)) ||
         (f.lhs && mentions(*f.lhs, v)) || (f.rhs && mentions(*f.rhs, v)) || (f.left && mentions(*f.left, v)) ||
         (f.right && mentions(*f.right, v));
}

/// Classical truth value of a sentence built from top and bot by the
/// connectives alone; nullopt if it has any other atom or a quantifier.
inline std::optional<bool> constant_value(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top: return true;
    case K::Bot: return false;
    case K::Not: {
      auto a = constant_value(*f.left);
      if (!a) return std::nullopt;
      return !*a;
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      auto a = constant_value(*f.left);
      auto b = constant_value(*f.right);
      if (!a || !b) return std::nullopt;
      if (f.kind == K::And) return *a && *b;
      if (f.kind == K::Or) return *a || *b;
      return !*a || *b;
    }
    default: return std::nullopt;
  }
}

// -------------------------------------------------------------------- JSON

using nlohmann::json;

inline json to_json(const ArrTerm& a);

inline json to_json(const ObjTerm& x) {
  switch (x.kind) {
    case ObjTerm::Kind::Var: return {{"node", "obj_var"}, {"name", x.name}};
    case ObjTerm::Kind::Param: return {{"node", "obj_param"}, {"name", x.name}};
    case ObjTerm::Kind::Pullback: return {{"node", "pb"}, {"left", to_json(*x.a)}, {"right", to_json(*x.b)}};
  }
  return {};
}

inline json to_json(const ArrTerm& a) {
  switch (a.kind) {
    case ArrTerm::Kind::Var: return {{"node", "arr_var"}, {"name", a.name}};
    case ArrTerm::Kind::Param: return {{"node", "arr_param"}, {"name", a.name}};
    case ArrTerm::Kind::Id: return {{"node", "id"}, {"object", to_json(*a.obj)}};
    case ArrTerm::Kind::Comp: return {{"node", "comp"}, {"outer", to_json(*a.a)}, {"inner", to_json(*a.b)}};
    case ArrTerm::Kind::Pr1: return {{"node", "pr1"}, {"left", to_json(*a.a)}, {"right", to_json(*a.b)}};
    case ArrTerm::Kind::Pr2: return {{"node", "pr2"}, {"left", to_json(*a.a)}, {"right", to_json(*a.b)}};
  }
  return {};
}

inline json to_json(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Top: return {{"node", "top"}};
    case K::Bot: return {{"node", "bot"}};
    case K::Equal: return {{"node", "equal"}, {"left", to_json(*f.lhs)}, {"right", to_json(*f.rhs)}};
    case K::Epi: return {{"node", "epi"}, {"arrow", to_json(*f.lhs)}};
    case K::Pi0Iso: return {{"node", "pi0iso"}, {"arrow", to_json(*f.lhs)}};
    case K::Conn: return {{"node", "conn"}, {"object", to_json(*f.obj)}};
    case K::And: return {{"node", "and"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
    case K::Or: return {{"node", "or"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
    case K::Implies: return {{"node", "implies"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
    case K::Not: return {{"node", "not"}, {"body", to_json(*f.left)}};
    case K::ForallObj: return {{"node", "forall_obj"}, {"var", f.var}, {"body", to_json(f.body())}};
    case K::ExistsObj: return {{"node", "exists_obj"}, {"var", f.var}, {"body", to_json(f.body())}};
    case K::ForallArr:
    case K::ExistsArr:
      return {{"node", f.kind == K::ForallArr ? "forall_arr" : "exists_arr"},
              {"var", f.var},
              {"dom", to_json(*f.dom)},
              {"cod", to_json(*f.cod)},
              {"body", to_json(f.body())}};
  }
  return {};
}

inline ArrTerm arr_from_json(const json& j);

inline ObjTerm obj_from_json(const json& j) {
  const std::string n = j.at("node").get<std::string>();
  if (n == "obj_var") return ObjTerm::var(j.at("name").get<std::string>());
  if (n == "obj_param") return ObjTerm::param(j.at("name").get<std::string>());
  if (n == "pb") return ObjTerm::pullback(arr_from_json(j.at("left")), arr_from_json(j.at("right")));
  throw InputError("unknown object node '" + n + "'");
}

inline ArrTerm arr_from_json(const json& j) {
  const std::string n = j.at("node").get<std::string>();
  if (n == "arr_var") return ArrTerm::var(j.at("name").get<std::string>());
  if (n == "arr_param") return ArrTerm::param(j.at("name").get<std::string>());
  if (n == "id") return ArrTerm::id(obj_from_json(j.at("object")));
  if (n == "comp") return ArrTerm::comp(arr_from_json(j.at("outer")), arr_from_json(j.at("inner")));
  if (n == "pr1") return ArrTerm::pr1(arr_from_json(j.at("left")), arr_from_json(j.at("right")));
  if (n == "pr2") return ArrTerm::pr2(arr_from_json(j.at("left")), arr_from_json(j.at("right")));
  throw InputError("unknown arrow node '" + n + "'");
}

/// Inverse of to_json. Structure only: run check() for scope and sorts.
inline Formula formula_from_json(const json& j) {
  const std::string n = j.at("node").get<std::string>();
  auto sub = [&](const char* k) { return formula_from_json(j.at(k)); };
  if (n == "top") return Formula::top();
  if (n == "bot") return Formula::bot();
  if (n == "equal") return Formula::equal(arr_from_json(j.at("left")), arr_from_json(j.at("right")));
  if (n == "epi") return Formula::epi(arr_from_json(j.at("arrow")));
  if (n == "pi0iso") return Formula::pi0iso(arr_from_json(j.at("arrow")));
  if (n == "conn") return Formula::conn(obj_from_json(j.at("object")));
  if (n == "and") return Formula::conj(sub("left"), sub("right"));
  if (n == "or") return Formula::disj(sub("left"), sub("right"));
  if (n == "implies") return Formula::implies(sub("left"), sub("right"));
  if (n == "not") return Formula::negation(sub("body"));
  std::string v = j.value("var", "");
  if (n == "forall_obj") return Formula::forall_obj(v, sub("body"));
  if (n == "exists_obj") return Formula::exists_obj(v, sub("body"));
  if (n == "forall_arr" || n == "exists_arr") {
    auto k = n == "forall_arr" ? Formula::Kind::ForallArr : Formula::Kind::ExistsArr;
    return Formula::arr_binder(k, v, obj_from_json(j.at("dom")), obj_from_json(j.at("cod")), sub("body"));
  }
  throw InputError("unknown formula node '" + n + "'");
}

}  // namespace zset
