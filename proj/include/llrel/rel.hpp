#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "llrel/point.hpp"
#include "llrel/universe.hpp"

namespace llrel {

enum class RelKind {
  Table, Id, Compose, Tensor, Pairing, Proj1, Proj2, Diag,
  BangMap, Dig, Der, M0, M2, M2Inv,
  BoxMap, BoxDig, BoxCounit, DistLaw, BoxWith, BoxWithInv,
  Assoc, AssocInv, Sym, UnitL, UnitLInv, UnitR, UnitRInv,
  Curry, Uncurry, Eval, Oracle,
};

/// Which distributive law !<>A -o <>!A to use. `Max` tags a multiset with
/// the maximum of its colours (1 when empty). `Uniform` only relates
/// multisets whose colours all agree, and the empty multiset to every colour.
enum class DistKind { Max, Uniform };

/// Result of an image computation: the points found, and whether the true
/// image has further points that bounded generation did not reach.
struct Image {
  std::vector<Point> points;
  bool truncated = false;

  bool contains(const Point& p) const { return std::binary_search(points.begin(), points.end(), p); }
  void normalize() {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
};

struct EvalCtx {
  Bounds bounds;
};

/// Intensional relation supplied from outside the engine (fixpoints, and
/// mutated relations in tests).
class RelOracle {
 public:
  virtual ~RelOracle() = default;
  virtual Image image(const Point& x, const EvalCtx& ctx) const = 0;
  virtual Verdict member(const Point& x, const Point& y, const EvalCtx& ctx) const {
    auto im = image(x, ctx);
    if (im.contains(y)) return Verdict::True;
    return im.truncated ? Verdict::BoundLimited : Verdict::False;
  }
  /// Preimage by exhaustive probing of the domain within bounds.
  virtual Image coimage(const Point& y, const EvalCtx& ctx, const Object& dom) const {
    Image out;
    for (const auto& x : points_of(dom, ctx.bounds)) {
      auto v = member(x, y, ctx);
      if (v == Verdict::True) out.points.push_back(x);
      if (v == Verdict::BoundLimited) out.truncated = true;
    }
    out.truncated |= dom.bang_depth() > 0;
    return out;
  }
  virtual std::string describe() const = 0;
};

struct RelNode;

/// A typed relation dom -o cod, built as an immutable expression tree.
/// Type mismatches are rejected at construction with TypeError.
class Rel {
 public:
  Rel() = default;

  static Rel table(Object dom, Object cod, const std::vector<std::pair<Point, Point>>& pairs);
  static Rel id(Object a);
  /// g . f
  static Rel compose(const Rel& g, const Rel& f);
  static Rel tensor(const Rel& f, const Rel& g);
  static Rel pairing(const Rel& f, const Rel& g);
  static Rel proj1(Object a, Object b);
  static Rel proj2(Object a, Object b);
  static Rel diag(Object a);
  static Rel bang(const Rel& f);
  static Rel dig(Object a);
  static Rel der(Object a);
  static Rel m0();
  static Rel m2(Object a, Object b);
  static Rel m2_inv(Object a, Object b);
  static Rel box(const Rel& f, int colours);
  static Rel box_dig(Object a, int colours);
  static Rel box_counit(Object a, int colours);
  static Rel dist_law(Object a, int colours, DistKind kind = DistKind::Uniform);
  static Rel box_with(Object a, Object b, int colours);
  static Rel box_with_inv(Object a, Object b, int colours);
  static Rel assoc(Object a, Object b, Object c);
  static Rel assoc_inv(Object a, Object b, Object c);
  static Rel sym(Object a, Object b);
  static Rel unit_l(Object a);
  static Rel unit_l_inv(Object a);
  static Rel unit_r(Object a);
  static Rel unit_r_inv(Object a);
  static Rel curry(const Rel& f);
  static Rel uncurry(const Rel& g);
  static Rel eval(Object a, Object b);
  static Rel oracle(Object dom, Object cod, std::shared_ptr<const RelOracle> o);

  const Object& dom() const;
  const Object& cod() const;
  RelKind kind() const;
  const RelNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  std::string str() const;

 private:
  explicit Rel(std::shared_ptr<const RelNode> n) : node_(std::move(n)) {}
  static Rel make(RelNode n);
  std::shared_ptr<const RelNode> node_;
};

/// Diagrammatic composition: seq(f, g, h) = h . g . f
inline Rel seq(const Rel& f) { return f; }
template <class... Rs>
Rel seq(const Rel& f, const Rel& g, const Rs&... rest) {
  return seq(Rel::compose(g, f), rest...);
}

struct RelNode {
  RelKind kind;
  Object dom, cod;
  Object a, b, c;  // parameter objects of structural maps
  int colours = 0;
  DistKind dist = DistKind::Uniform;
  std::vector<Rel> args;
  std::map<Point, std::vector<Point>> table;
  std::shared_ptr<const RelOracle> oracle;
};

inline Rel Rel::make(RelNode n) { return Rel(std::make_shared<const RelNode>(std::move(n))); }
inline const Object& Rel::dom() const { return node_->dom; }
inline const Object& Rel::cod() const { return node_->cod; }
inline RelKind Rel::kind() const { return node_->kind; }

namespace detail {
inline void expect(bool ok, const std::string& what) {
  if (!ok) throw TypeError(what);
}
inline const Object& expect_kind(const Object& o, ObjKind k, const char* what) {
  expect(o.kind() == k, std::string(what) + ": unexpected object " + o.str());
  return o;
}
inline RelNode structural(RelKind k, Object dom, Object cod) {
  RelNode n;
  n.kind = k;
  n.dom = std::move(dom);
  n.cod = std::move(cod);
  return n;
}
}  // namespace detail

inline Rel Rel::table(Object dom, Object cod, const std::vector<std::pair<Point, Point>>& pairs) {
  RelNode n = detail::structural(RelKind::Table, dom, cod);
  for (const auto& [x, y] : pairs) {
    detail::expect(well_typed(x, dom), "table row " + x.str() + " is not a point of " + dom.str());
    detail::expect(well_typed(y, cod), "table row " + y.str() + " is not a point of " + cod.str());
    n.table[x].push_back(y);
  }
  for (auto& [x, ys] : n.table) {
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  }
  return make(std::move(n));
}

inline Rel Rel::id(Object a) {
  auto n = detail::structural(RelKind::Id, a, a);
  n.a = a;
  return make(std::move(n));
}

inline Rel Rel::compose(const Rel& g, const Rel& f) {
  detail::expect(f.cod() == g.dom(),
                 "cannot compose " + f.dom().str() + " -o " + f.cod().str() + " with " + g.dom().str() + " -o " +
                     g.cod().str());
  auto n = detail::structural(RelKind::Compose, f.dom(), g.cod());
  n.args = {f, g};
  return make(std::move(n));
}

inline Rel Rel::tensor(const Rel& f, const Rel& g) {
  auto n = detail::structural(RelKind::Tensor, Object::tensor(f.dom(), g.dom()), Object::tensor(f.cod(), g.cod()));
  n.args = {f, g};
  return make(std::move(n));
}

inline Rel Rel::pairing(const Rel& f, const Rel& g) {
  detail::expect(f.dom() == g.dom(), "pairing needs a common domain");
  auto n = detail::structural(RelKind::Pairing, f.dom(), Object::with(f.cod(), g.cod()));
  n.args = {f, g};
  return make(std::move(n));
}

inline Rel Rel::proj1(Object a, Object b) {
  auto n = detail::structural(RelKind::Proj1, Object::with(a, b), a);
  return make(std::move(n));
}
inline Rel Rel::proj2(Object a, Object b) {
  auto n = detail::structural(RelKind::Proj2, Object::with(a, b), b);
  return make(std::move(n));
}
inline Rel Rel::diag(Object a) {
  auto n = detail::structural(RelKind::Diag, a, Object::with(a, a));
  return make(std::move(n));
}

inline Rel Rel::bang(const Rel& f) {
  auto n = detail::structural(RelKind::BangMap, Object::bang(f.dom()), Object::bang(f.cod()));
  n.args = {f};
  return make(std::move(n));
}
inline Rel Rel::dig(Object a) {
  return make(detail::structural(RelKind::Dig, Object::bang(a), Object::bang(Object::bang(a))));
}
inline Rel Rel::der(Object a) { return make(detail::structural(RelKind::Der, Object::bang(a), a)); }
inline Rel Rel::m0() { return make(detail::structural(RelKind::M0, Object::unit(), Object::bang(Object::top()))); }
inline Rel Rel::m2(Object a, Object b) {
  return make(detail::structural(RelKind::M2, Object::tensor(Object::bang(a), Object::bang(b)),
                                 Object::bang(Object::with(a, b))));
}
inline Rel Rel::m2_inv(Object a, Object b) {
  return make(detail::structural(RelKind::M2Inv, Object::bang(Object::with(a, b)),
                                 Object::tensor(Object::bang(a), Object::bang(b))));
}

inline Rel Rel::box(const Rel& f, int colours) {
  auto n = detail::structural(RelKind::BoxMap, Object::box(f.dom(), colours), Object::box(f.cod(), colours));
  n.colours = colours;
  n.args = {f};
  return make(std::move(n));
}
inline Rel Rel::box_dig(Object a, int colours) {
  auto n = detail::structural(RelKind::BoxDig, Object::box(a, colours), Object::box(Object::box(a, colours), colours));
  n.colours = colours;
  return make(std::move(n));
}
inline Rel Rel::box_counit(Object a, int colours) {
  auto n = detail::structural(RelKind::BoxCounit, Object::box(a, colours), a);
  n.colours = colours;
  return make(std::move(n));
}
inline Rel Rel::dist_law(Object a, int colours, DistKind kind) {
  auto n = detail::structural(RelKind::DistLaw, Object::bang(Object::box(a, colours)),
                              Object::box(Object::bang(a), colours));
  n.colours = colours;
  n.dist = kind;
  return make(std::move(n));
}
inline Rel Rel::box_with(Object a, Object b, int colours) {
  auto n = detail::structural(RelKind::BoxWith, Object::with(Object::box(a, colours), Object::box(b, colours)),
                              Object::box(Object::with(a, b), colours));
  n.colours = colours;
  return make(std::move(n));
}
inline Rel Rel::box_with_inv(Object a, Object b, int colours) {
  auto n = detail::structural(RelKind::BoxWithInv, Object::box(Object::with(a, b), colours),
                              Object::with(Object::box(a, colours), Object::box(b, colours)));
  n.colours = colours;
  return make(std::move(n));
}

inline Rel Rel::assoc(Object a, Object b, Object c) {
  return make(detail::structural(RelKind::Assoc, Object::tensor(Object::tensor(a, b), c),
                                 Object::tensor(a, Object::tensor(b, c))));
}
inline Rel Rel::assoc_inv(Object a, Object b, Object c) {
  return make(detail::structural(RelKind::AssocInv, Object::tensor(a, Object::tensor(b, c)),
                                 Object::tensor(Object::tensor(a, b), c)));
}
inline Rel Rel::sym(Object a, Object b) {
  return make(detail::structural(RelKind::Sym, Object::tensor(a, b), Object::tensor(b, a)));
}
inline Rel Rel::unit_l(Object a) {
  return make(detail::structural(RelKind::UnitL, Object::tensor(Object::unit(), a), a));
}
inline Rel Rel::unit_l_inv(Object a) {
  return make(detail::structural(RelKind::UnitLInv, a, Object::tensor(Object::unit(), a)));
}
inline Rel Rel::unit_r(Object a) {
  return make(detail::structural(RelKind::UnitR, Object::tensor(a, Object::unit()), a));
}
inline Rel Rel::unit_r_inv(Object a) {
  return make(detail::structural(RelKind::UnitRInv, a, Object::tensor(a, Object::unit())));
}

inline Rel Rel::curry(const Rel& f) {
  const auto& d = detail::expect_kind(f.dom(), ObjKind::Tensor, "curry");
  auto n = detail::structural(RelKind::Curry, d.left(), Object::lolli(d.right(), f.cod()));
  n.args = {f};
  return make(std::move(n));
}
inline Rel Rel::uncurry(const Rel& g) {
  const auto& h = detail::expect_kind(g.cod(), ObjKind::Lolli, "uncurry");
  auto n = detail::structural(RelKind::Uncurry, Object::tensor(g.dom(), h.left()), h.right());
  n.args = {g};
  return make(std::move(n));
}
inline Rel Rel::eval(Object a, Object b) {
  return make(detail::structural(RelKind::Eval, Object::tensor(Object::lolli(a, b), a), b));
}
inline Rel Rel::oracle(Object dom, Object cod, std::shared_ptr<const RelOracle> o) {
  auto n = detail::structural(RelKind::Oracle, std::move(dom), std::move(cod));
  n.oracle = std::move(o);
  return make(std::move(n));
}

inline std::string Rel::str() const {
  const auto& n = *node_;
  auto arg = [&](std::size_t i) { return n.args[i].str(); };
  switch (n.kind) {
    case RelKind::Table: return "table(" + std::to_string(n.table.size()) + " keys)";
    case RelKind::Id: return "id";
    case RelKind::Compose: return "(" + arg(1) + " . " + arg(0) + ")";
    case RelKind::Tensor: return "(" + arg(0) + " * " + arg(1) + ")";
    case RelKind::Pairing: return "<" + arg(0) + ", " + arg(1) + ">";
    case RelKind::Proj1: return "pi1";
    case RelKind::Proj2: return "pi2";
    case RelKind::Diag: return "diag";
    case RelKind::BangMap: return "!" + arg(0);
    case RelKind::Dig: return "dig";
    case RelKind::Der: return "der";
    case RelKind::M0: return "m0";
    case RelKind::M2: return "m2";
    case RelKind::M2Inv: return "m2inv";
    case RelKind::BoxMap: return "<>" + arg(0);
    case RelKind::BoxDig: return "bdig";
    case RelKind::BoxCounit: return "beps";
    case RelKind::DistLaw: return n.dist == DistKind::Max ? "lambda_max" : "lambda";
    case RelKind::BoxWith: return "bwith";
    case RelKind::BoxWithInv: return "bwithinv";
    case RelKind::Assoc: return "alpha";
    case RelKind::AssocInv: return "alphainv";
    case RelKind::Sym: return "gamma";
    case RelKind::UnitL: return "lambda1";
    case RelKind::UnitLInv: return "lambda1inv";
    case RelKind::UnitR: return "rho";
    case RelKind::UnitRInv: return "rhoinv";
    case RelKind::Curry: return "curry(" + arg(0) + ")";
    case RelKind::Uncurry: return "uncurry(" + arg(0) + ")";
    case RelKind::Eval: return "ev";
    case RelKind::Oracle: return n.oracle->describe();
  }
  return "?";
}

}  // namespace llrel
