#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "llrel/colour.hpp"
#include "llrel/eval.hpp"
#include "llrel/fixpoint.hpp"
#include "llrel/syntax.hpp"

namespace llrel {

// --- term types ---------------------------------------------------------------

/// Term types: base objects, `A => B` and `A & B`.
struct TType {
  enum class Kind { Base, Arrow, With };
  Kind kind = Kind::Base;
  std::string name;
  std::shared_ptr<const TType> l, r;

  static TType base(std::string n) { return {Kind::Base, std::move(n), nullptr, nullptr}; }
  static TType arrow(TType a, TType b) {
    return {Kind::Arrow, "", std::make_shared<TType>(std::move(a)), std::make_shared<TType>(std::move(b))};
  }
  static TType with(TType a, TType b) {
    return {Kind::With, "", std::make_shared<TType>(std::move(a)), std::make_shared<TType>(std::move(b))};
  }

  friend bool operator==(const TType& a, const TType& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Base) return a.name == b.name;
    return *a.l == *b.l && *a.r == *b.r;
  }

  std::string str(int ctx = 0) const {
    switch (kind) {
      case Kind::Base: return name;
      case Kind::Arrow: {
        auto s = l->str(2) + " => " + r->str(1);
        return ctx > 1 ? "(" + s + ")" : s;
      }
      case Kind::With: {
        auto s = l->str(2) + " & " + r->str(3);
        return ctx > 2 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }
};

namespace detail {
inline TType parse_ttype_prec(TokenStream& ts, int prec) {
  TType lhs;
  if (ts.accept("(")) {
    lhs = parse_ttype_prec(ts, 1);
    ts.expect(")");
  } else {
    lhs = TType::base(ts.expect_ident());
  }
  while (true) {
    if (prec <= 1 && ts.accept("=>")) {
      lhs = TType::arrow(lhs, parse_ttype_prec(ts, 1));
    } else if (prec <= 2 && ts.accept("&")) {
      lhs = TType::with(lhs, parse_ttype_prec(ts, 3));
    } else {
      return lhs;
    }
  }
}
}  // namespace detail

inline TType parse_ttype(TokenStream& ts) { return detail::parse_ttype_prec(ts, 1); }

// --- terms -------------------------------------------------------------------

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Lam, App, Y, Const };
  Kind kind;
  std::string name;
  TType type;  // Lam binder type
  TermP a, b;
  int line = 0, column = 0;

  std::string str(int ctx = 0) const {
    switch (kind) {
      case Kind::Var:
      case Kind::Const: return name;
      case Kind::Lam: {
        auto s = "\\" + name + ":" + type.str() + ". " + a->str(0);
        return ctx > 0 ? "(" + s + ")" : s;
      }
      case Kind::App: {
        auto s = a->str(1) + " " + b->str(2);
        return ctx > 1 ? "(" + s + ")" : s;
      }
      case Kind::Y: {
        auto s = "Y " + a->str(2);
        return ctx > 1 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }
};

inline bool same_term(const Term& x, const Term& y) {
  if (x.kind != y.kind || x.name != y.name) return false;
  if (x.kind == Term::Kind::Lam && !(x.type == y.type)) return false;
  if (bool(x.a) != bool(y.a) || bool(x.b) != bool(y.b)) return false;
  return (!x.a || same_term(*x.a, *y.a)) && (!x.b || same_term(*x.b, *y.b));
}

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> w = {"object", "colours", "rel", "term", "query", "Y"};
  return w;
}

namespace detail {
struct TermParser {
  TokenStream& ts;
  /// Names a free identifier may refer to; empty accepts anything.
  const std::set<std::string>* known;
  std::vector<std::string> scope;

  TermP node(Term t, const Token& at) {
    t.line = at.line;
    t.column = at.column;
    return std::make_shared<const Term>(std::move(t));
  }

  bool starts_atom() const {
    const auto& t = ts.peek();
    if (t.kind == Tok::Ident) return !reserved_words().count(t.text) || t.text == "Y";
    return ts.is("(") || ts.is("\\");
  }

  TermP atom() {
    auto at = ts.peek();
    if (ts.is("\\")) return lam();
    if (ts.accept("(")) {
      auto t = term();
      ts.expect(")");
      return t;
    }
    if (ts.is_word("Y")) {
      ts.next();
      if (!starts_atom()) ts.fail("expected the argument of Y");
      return node({Term::Kind::Y, "", {}, atom(), nullptr}, at);
    }
    auto name = ts.expect_ident();
    if (reserved_words().count(name)) throw ParseError("unexpected keyword '" + name + "'", at.line, at.column);
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (*it == name) return node({Term::Kind::Var, name, {}, nullptr, nullptr}, at);
    if (known && !known->count(name)) throw ParseError("unbound name '" + name + "'", at.line, at.column);
    return node({Term::Kind::Const, name, {}, nullptr, nullptr}, at);
  }

  TermP lam() {
    auto at = ts.peek();
    ts.expect("\\");
    auto x = ts.expect_ident();
    if (reserved_words().count(x)) throw ParseError("'" + x + "' cannot be bound", at.line, at.column);
    ts.expect(":");
    auto ty = parse_ttype(ts);
    ts.expect(".");
    scope.push_back(x);
    auto body = term();
    scope.pop_back();
    return node({Term::Kind::Lam, x, ty, body, nullptr}, at);
  }

  TermP term() {
    auto at = ts.peek();
    auto t = atom();
    while (starts_atom()) {
      bool last = ts.is("\\");
      t = node({Term::Kind::App, "", {}, t, atom()}, at);
      if (last) break;
    }
    return t;
  }
};
}  // namespace detail

/// Parses a term; with `known`, free names outside it are rejected.
inline TermP parse_term(TokenStream& ts, const std::set<std::string>* known = nullptr) {
  detail::TermParser p{ts, known, {}};
  return p.term();
}

inline TermP parse_term(const std::string& text) {
  TokenStream ts(text);
  auto t = parse_term(ts);
  if (!ts.at_end()) ts.fail("trailing input after term");
  return t;
}

// --- model files ---------------------------------------------------------------

struct ObjectDecl {
  std::string name;
  std::vector<std::string> elements;
};
struct ColoursDecl {
  int n;
};
struct RelDecl {
  std::string name;
  Object type;  // dom -o cod
  std::vector<std::pair<Point, Point>> rows;

  Rel rel() const { return Rel::table(type.left(), type.right(), rows); }
};
struct TermDecl {
  std::string name;
  TermP term;
  TType type;
};
struct QueryDecl {
  std::string target;
  Point point;
};
using Decl = std::variant<ObjectDecl, ColoursDecl, RelDecl, TermDecl, QueryDecl>;

struct Model {
  std::vector<Decl> decls;
  TypeEnv env;

  int colours() const { return env.colours; }
  Exp exp() const { return env.colours > 0 ? Exp::coloured(env.colours) : Exp::bang(); }

  const RelDecl* rel(const std::string& n) const {
    for (const auto& d : decls)
      if (auto r = std::get_if<RelDecl>(&d); r && r->name == n) return r;
    return nullptr;
  }
  const TermDecl* term(const std::string& n) const {
    for (const auto& d : decls)
      if (auto t = std::get_if<TermDecl>(&d); t && t->name == n) return t;
    return nullptr;
  }
  template <class D>
  std::vector<const D*> all() const {
    std::vector<const D*> out;
    for (const auto& d : decls)
      if (auto x = std::get_if<D>(&d)) out.push_back(x);
    return out;
  }
};

/// The object interpreting a term type: A => B is E A -o B.
inline Object to_object(const TType& t, const Model& m) {
  switch (t.kind) {
    case TType::Kind::Base: {
      auto it = m.env.objects.find(t.name);
      if (it == m.env.objects.end()) throw TypeError("unknown base type '" + t.name + "'");
      return it->second;
    }
    case TType::Kind::Arrow: return Object::lolli(m.exp().obj(to_object(*t.l, m)), to_object(*t.r, m));
    case TType::Kind::With: return Object::with(to_object(*t.l, m), to_object(*t.r, m));
  }
  throw TypeError("bad type");
}

/// Inverse of to_object on the objects it produces.
inline std::optional<TType> read_type(const Object& o, const Model& m) {
  auto unexp = [&](const Object& x) -> std::optional<Object> {
    if (x.kind() != ObjKind::Bang) return std::nullopt;
    if (m.colours() == 0) return x.left();
    if (x.left().kind() != ObjKind::Box || x.left().colours() != m.colours()) return std::nullopt;
    return x.left().left();
  };
  switch (o.kind()) {
    case ObjKind::Base: {
      auto it = m.env.objects.find(o.name());
      if (it == m.env.objects.end() || !(it->second == o)) return std::nullopt;
      return TType::base(o.name());
    }
    case ObjKind::With: {
      auto a = read_type(o.left(), m), b = read_type(o.right(), m);
      if (!a || !b) return std::nullopt;
      return TType::with(*a, *b);
    }
    case ObjKind::Lolli: {
      auto d = unexp(o.left());
      if (!d) return std::nullopt;
      auto a = read_type(*d, m), b = read_type(o.right(), m);
      if (!a || !b) return std::nullopt;
      return TType::arrow(*a, *b);
    }
    default: return std::nullopt;
  }
}

/// A rel usable as a term constant: dom is 1 or a left-nested tensor of
/// exponentials E A1 * ... * E An; its term type is A1 => ... => An => cod.
struct ConstShape {
  TType type;
  std::vector<Object> factors;  // E A1 .. E An
};

inline std::optional<ConstShape> const_shape(const RelDecl& r, const Model& m) {
  auto is_exp = [&](const Object& x) {
    if (x.kind() != ObjKind::Bang) return false;
    return m.colours() == 0 || (x.left().kind() == ObjKind::Box && x.left().colours() == m.colours());
  };
  ConstShape s;
  Object d = r.type.left();
  if (d.kind() != ObjKind::Unit) {
    while (d.kind() == ObjKind::Tensor && is_exp(d.right())) {
      s.factors.insert(s.factors.begin(), d.right());
      d = d.left();
    }
    if (!is_exp(d)) return std::nullopt;
    s.factors.insert(s.factors.begin(), d);
  }
  auto cod = read_type(r.type.right(), m);
  if (!cod) return std::nullopt;
  s.type = *cod;
  for (auto it = s.factors.rbegin(); it != s.factors.rend(); ++it) {
    auto a = read_type(Object::lolli(*it, r.type.right()), m);  // reads E Ai
    if (!a) return std::nullopt;
    s.type = TType::arrow(*a->l, s.type);
  }
  return s;
}

/// Type of a closed or open term; throws TypeError with the position.
inline TType typecheck(const Term& t, const Model& m, std::vector<std::pair<std::string, TType>>& ctx) {
  auto fail = [&](const std::string& msg) -> TType {
    throw TypeError(std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + msg);
  };
  switch (t.kind) {
    case Term::Kind::Var:
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        if (it->first == t.name) return it->second;
      return fail("unbound variable '" + t.name + "'");
    case Term::Kind::Const: {
      if (auto r = m.rel(t.name)) {
        auto s = const_shape(*r, m);
        if (!s) return fail("rel '" + t.name + "' of type " + r->type.str() + " has no term type");
        return s->type;
      }
      if (auto d = m.term(t.name)) return d->type;
      return fail("unbound name '" + t.name + "'");
    }
    case Term::Kind::Lam: {
      to_object(t.type, m);
      ctx.emplace_back(t.name, t.type);
      auto b = typecheck(*t.a, m, ctx);
      ctx.pop_back();
      return TType::arrow(t.type, b);
    }
    case Term::Kind::App: {
      auto f = typecheck(*t.a, m, ctx);
      auto x = typecheck(*t.b, m, ctx);
      if (f.kind != TType::Kind::Arrow) return fail("applying a term of type " + f.str() + ", not a function");
      if (!(*f.l == x)) return fail("argument has type " + x.str() + ", expected " + f.l->str());
      return *f.r;
    }
    case Term::Kind::Y: {
      auto f = typecheck(*t.a, m, ctx);
      if (f.kind != TType::Kind::Arrow || !(*f.l == *f.r))
        return fail("Y needs a body of type A => A, got " + f.str());
      return *f.l;
    }
  }
  return fail("bad term");
}

inline TType typecheck(const Term& t, const Model& m) {
  std::vector<std::pair<std::string, TType>> ctx;
  return typecheck(t, m, ctx);
}

/// The object a query on `target` ranges over: the rel's own type, or the
/// interpretation of the term's type.
inline Object query_object(const Model& m, const std::string& target) {
  if (auto r = m.rel(target)) return r->type;
  if (auto t = m.term(target)) return to_object(t->type, m);
  throw Error("no rel or term named '" + target + "'");
}

inline Model parse_model(const std::string& text) {
  TokenStream ts(text);
  Model m;
  std::set<std::string> names;
  auto fresh = [&](const Token& at, const std::string& n) {
    if (reserved_words().count(n)) throw ParseError("'" + n + "' is a keyword", at.line, at.column);
    if (!names.insert(n).second) throw ParseError("duplicate declaration of '" + n + "'", at.line, at.column);
  };
  while (!ts.at_end()) {
    auto kw = ts.peek();
    if (kw.kind != Tok::Ident) ts.fail("expected a declaration");
    ts.next();
    if (kw.text == "object") {
      auto at = ts.peek();
      auto name = ts.expect_ident();
      fresh(at, name);
      if (name == "T") throw ParseError("'T' names the top object", at.line, at.column);
      ts.expect("=");
      ts.expect("{");
      ObjectDecl d{name, {}};
      if (!ts.is("}")) do {
          auto et = ts.peek();
          auto e = ts.expect_ident();
          if (std::find(d.elements.begin(), d.elements.end(), e) != d.elements.end())
            throw ParseError("duplicate element '" + e + "'", et.line, et.column);
          d.elements.push_back(e);
        } while (ts.accept(","));
      ts.expect("}");
      m.env.objects.emplace(name, Object::base(name, d.elements));
      m.decls.push_back(std::move(d));
    } else if (kw.text == "colours") {
      if (m.env.colours > 0) throw ParseError("duplicate colours declaration", kw.line, kw.column);
      auto at = ts.peek();
      auto n = static_cast<int>(ts.expect_nat());
      if (n < 1) throw ParseError("colours must be at least 1", at.line, at.column);
      m.env.colours = n;
      m.decls.push_back(ColoursDecl{n});
    } else if (kw.text == "rel") {
      auto at = ts.peek();
      auto name = ts.expect_ident();
      fresh(at, name);
      ts.expect(":");
      auto tt = ts.peek();
      auto type = parse_type(ts, m.env);
      if (type.kind() != ObjKind::Lolli) throw ParseError("a rel type must have the form A -o B", tt.line, tt.column);
      ts.expect("=");
      ts.expect("{");
      RelDecl d{name, type, {}};
      if (!ts.is("}")) do {
          auto x = parse_point(ts, type.left());
          ts.expect("->");
          auto y = parse_point(ts, type.right());
          d.rows.emplace_back(x, y);
        } while (ts.accept(";"));
      ts.expect("}");
      m.decls.push_back(std::move(d));
    } else if (kw.text == "term") {
      auto at = ts.peek();
      auto name = ts.expect_ident();
      ts.expect("=");
      auto t = parse_term(ts, &names);
      fresh(at, name);
      TermDecl d{name, t, {}};
      try {
        d.type = typecheck(*t, m);
      } catch (const TypeError& e) {
        throw ParseError(std::string("type error: ") + e.what(), at.line, at.column);
      }
      m.decls.push_back(std::move(d));
    } else if (kw.text == "query") {
      auto at = ts.peek();
      auto target = ts.expect_ident();
      if (!m.rel(target) && !m.term(target))
        throw ParseError("unbound name '" + target + "'", at.line, at.column);
      auto p = parse_point(ts, query_object(m, target));
      m.decls.push_back(QueryDecl{target, p});
    } else {
      throw ParseError("unknown declaration '" + kw.text + "'", kw.line, kw.column);
    }
  }
  return m;
}

/// Canonical text of a model; parsing it back gives the same model.
inline std::string print_model(const Model& m) {
  std::string s;
  for (const auto& d : m.decls) {
    if (auto o = std::get_if<ObjectDecl>(&d)) {
      s += "object " + o->name + " = {";
      for (std::size_t i = 0; i < o->elements.size(); ++i) s += (i ? ", " : "") + o->elements[i];
      s += "}\n";
    } else if (auto c = std::get_if<ColoursDecl>(&d)) {
      s += "colours " + std::to_string(c->n) + "\n";
    } else if (auto r = std::get_if<RelDecl>(&d)) {
      s += "rel " + r->name + " : " + r->type.str() + " = {";
      for (std::size_t i = 0; i < r->rows.size(); ++i)
        s += std::string(i ? ";" : "") + "\n  " + r->rows[i].first.str() + " -> " + r->rows[i].second.str();
      s += r->rows.empty() ? "}\n" : "\n}\n";
    } else if (auto t = std::get_if<TermDecl>(&d)) {
      s += "term " + t->name + " = " + t->term->str() + "\n";
    } else if (auto q = std::get_if<QueryDecl>(&d)) {
      s += "query " + q->target + " " + q->point.str() + "\n";
    }
  }
  return s;
}

// --- fixpoint bodies ---------------------------------------------------------------

/// Reads a rel of type E X * E A -o A as a fixpoint body.
inline std::optional<FixTable> fix_body(const RelDecl& r, const Model& m) {
  const auto& d = r.type.left();
  if (d.kind() != ObjKind::Tensor || d.left().kind() != ObjKind::Bang || d.right().kind() != ObjKind::Bang)
    return std::nullopt;
  Object x = d.left().left(), a = d.right().left();
  int colours = 0;
  if (m.colours() > 0 && x.kind() == ObjKind::Box && a.kind() == ObjKind::Box) {
    colours = x.colours();
    x = x.left();
    a = a.left();
  }
  if (!(a == r.type.right())) return std::nullopt;
  return FixTable::from_rel(r.rel(), x, a, colours);
}

/// A model declaring X, A, the colours and `name` as the body `t`.
inline Model fix_model(const FixTable& t, const std::string& name) {
  Model m;
  for (const auto& o : {t.X, t.A}) {
    if (m.env.objects.count(o.name())) continue;
    m.env.objects.emplace(o.name(), o);
    m.decls.push_back(ObjectDecl{o.name(), o.elements()});
  }
  if (t.coloured()) {
    m.env.colours = t.colours;
    m.decls.push_back(ColoursDecl{t.colours});
  }
  RelDecl r{name, Object::lolli(t.dom(), t.A), {}};
  for (const auto& row : t.rows) r.rows.emplace_back(Point::pair(Point::bag(row.xs), Point::bag(row.as)), row.b);
  m.decls.push_back(std::move(r));
  return m;
}

// --- interpretation ---------------------------------------------------------------

struct InterpOptions {
  FixMode mode = FixMode::Classic;
  /// Premises of Y bodies are tabulated up to this bound.
  Bounds tabulate{3, false, 3};
  Bounds eval{3, false, 3};
  int witness = 3;
};

/// Fixpoint of a tabulated body, as a relation E X -o A.
class FixpointOracle : public RelOracle {
 public:
  FixpointOracle(FixTable t, FixMode mode, int witness) : t_(std::move(t)), mode_(mode), witness_(witness) {}

  Verdict member(const Point& x, const Point& y, const EvalCtx&) const override {
    auto key = std::make_pair(x, y);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto v = fix_member(t_, mode_, x.multiset(), y, witness_).verdict;
    memo_.emplace(key, v);
    return v;
  }
  Image image(const Point& x, const EvalCtx& ctx) const override {
    Image out;
    for (const auto& a : points_of(t_.A, ctx.bounds)) {
      auto v = member(x, a, ctx);
      if (v == Verdict::True) out.points.push_back(a);
      if (v == Verdict::BoundLimited) out.truncated = true;
    }
    return out;
  }
  std::string describe() const override { return std::string("Y[") + to_string(mode_) + "]"; }
  const FixTable& table() const { return t_; }

 private:
  FixTable t_;
  FixMode mode_;
  int witness_;
  mutable std::map<std::pair<Point, Point>, Verdict> memo_;
};

class Interpreter {
 public:
  Interpreter(const Model& m, InterpOptions o) : m_(m), o_(o), e_(m.exp()) {
    if (o.mode == FixMode::Parity && m.colours() == 0)
      throw TypeError("parity mode needs a colours declaration");
  }

  /// Closed term t : B as a relation E T -o [[B]].
  Rel closed(const Term& t) {
    std::vector<std::pair<std::string, TType>> ctx;
    typecheck(t, m_, ctx);
    return go(t, ctx);
  }

  /// The points of [[B]] related to the empty context, within eval bounds.
  Image values(const Rel& r) const { return image(r, Point::bag({}), EvalCtx{o_.eval}); }

  Verdict query(const std::string& target, const Point& p) {
    if (auto r = m_.rel(target)) return member(r->rel(), p.first(), p.second(), EvalCtx{o_.eval});
    auto t = m_.term(target);
    if (!t) throw Error("no rel or term named '" + target + "'");
    return member(closed(*t->term), Point::bag({}), p, EvalCtx{o_.eval});
  }

 private:
  using Ctx = std::vector<std::pair<std::string, TType>>;

  Object gamma(const Ctx& ctx, std::size_t n) const {
    Object g = Object::top();
    for (std::size_t i = 0; i < n; ++i) g = Object::with(g, to_object(ctx[i].second, m_));
    return g;
  }

  Rel constant(const std::string& name) {
    if (auto it = consts_.find(name); it != consts_.end()) return it->second;
    Rel out;
    if (auto r = m_.rel(name)) {
      auto s = *const_shape(*r, m_);
      Rel body = r->rel();
      for (std::size_t k = 1; k < s.factors.size(); ++k) body = Rel::curry(body);
      if (!s.factors.empty()) body = Rel::curry(seq(Rel::unit_l(s.factors[0]), body));
      auto top = e_.obj(Object::top());
      out = seq(Rel::table(top, Object::unit(), {{Point::bag({}), Point::star()}}), body);
    } else {
      Ctx none;
      out = go(*m_.term(name)->term, none);
    }
    consts_.emplace(name, out);
    return out;
  }

  Rel go(const Term& t, Ctx& ctx) {
    Object g = gamma(ctx, ctx.size());
    switch (t.kind) {
      case Term::Kind::Var: {
        std::size_t i = ctx.size();
        while (ctx[--i].first != t.name) {}
        Rel r = e_.der(g);
        for (std::size_t k = ctx.size(); k > i + 1; --k)
          r = seq(r, Rel::proj1(gamma(ctx, k - 1), to_object(ctx[k - 1].second, m_)));
        return seq(r, Rel::proj2(gamma(ctx, i), to_object(ctx[i].second, m_)));
      }
      case Term::Kind::Const: {
        Rel c = constant(t.name);
        if (ctx.empty()) return c;
        return seq(e_.map(Rel::table(g, Object::top(), {})), c);
      }
      case Term::Kind::Lam: {
        Object a = to_object(t.type, m_);
        ctx.emplace_back(t.name, t.type);
        Rel body = go(*t.a, ctx);
        ctx.pop_back();
        return Rel::curry(seq(e_.m2(g, a), body));
      }
      case Term::Kind::App: {
        Rel f = go(*t.a, ctx), x = go(*t.b, ctx);
        Rel promoted = seq(e_.dig(g), e_.map(x));
        const auto& fa = f.cod();
        return seq(e_.map(Rel::diag(g)), e_.m2_inv(g, g), Rel::tensor(f, promoted), Rel::eval(fa.left(), fa.right()));
      }
      case Term::Kind::Y: {
        Rel f = go(*t.a, ctx);
        Object a = f.cod().right();
        auto en = enumerate(Rel::uncurry(f), o_.tabulate, o_.eval);
        FixTable tab{g, a, m_.colours(), {}};
        for (const auto& [x, y] : en.pairs) tab.rows.push_back({x.first().multiset(), x.second().multiset(), y});
        std::sort(tab.rows.begin(), tab.rows.end());
        auto o = std::make_shared<const FixpointOracle>(std::move(tab), o_.mode, o_.witness);
        return Rel::oracle(e_.obj(g), a, o);
      }
    }
    throw Error("bad term");
  }

  const Model& m_;
  InterpOptions o_;
  Exp e_;
  std::map<std::string, Rel> consts_;
};

}  // namespace llrel
