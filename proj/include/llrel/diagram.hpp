#pragma once

#include <optional>
#include <string>
#include <vector>

#include "llrel/colour.hpp"
#include "llrel/eval.hpp"

namespace llrel {

enum class CheckStatus { Pass, Fail, BoundLimited };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "bound-limited";
  }
}

/// Two parallel composites expected to be equal, compared on every domain
/// point within `probe`; images are computed under `eval` (at least as
/// large as `probe`, so intermediate points have room).
struct DiagramCheck {
  std::string name;
  Rel left, right;
  Bounds probe{2, false, 3};
  Bounds eval{4, false, 4};
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  /// Distinguishing pair, and which side contains it.
  std::optional<std::pair<Point, Point>> counterexample;
  std::string side;
  std::size_t probes = 0;

  std::string describe() const {
    std::string s = name + ": " + to_string(status);
    if (!counterexample) return s;
    auto at = "(" + counterexample->first.str() + ", " + counterexample->second.str() + ")";
    if (status == CheckStatus::Fail)
      s += " at " + at + " only on the " + side + " side";
    else
      s += " at " + at + (side == "left" || side == "right" ? ", holds on the " + side + " side" : "");
    return s;
  }
};

inline CheckResult check_diagram(const DiagramCheck& d) {
  if (!(d.left.dom() == d.right.dom()) || !(d.left.cod() == d.right.cod()))
    throw TypeError("diagram " + d.name + ": sides have different types");
  CheckResult res;
  res.name = d.name;
  EvalCtx ctx{d.eval};
  auto record = [&](CheckStatus s, const Point& x, const Point& y, const char* side) {
    if (s == CheckStatus::Fail && res.status != CheckStatus::Fail) {
      res.status = CheckStatus::Fail;
      res.counterexample = {x, y};
      res.side = side;
    } else if (s == CheckStatus::BoundLimited && res.status == CheckStatus::Pass) {
      res.status = CheckStatus::BoundLimited;
      res.counterexample = {x, y};
      res.side = side;
    }
  };
  for (const auto& x : points_of(d.left.dom(), d.probe)) {
    ++res.probes;
    auto l = image(d.left, x, ctx);
    auto r = image(d.right, x, ctx);
    auto compare = [&](const Image& mine, const Rel& other, const char* side) {
      for (const auto& y : mine.points) {
        if (!fits(y, d.probe)) continue;
        auto v = member(other, x, y, ctx);
        if (v == Verdict::False)
          record(CheckStatus::Fail, x, y, side);
        else if (v == Verdict::BoundLimited)
          record(CheckStatus::BoundLimited, x, y, side);
      }
    };
    compare(l, d.right, "left");
    compare(r, d.left, "right");
    if (res.status == CheckStatus::Fail) break;
  }
  return res;
}

/// With-level structure built from pairings and projections.
namespace with_iso {
inline Rel assoc(const Object& a, const Object& b, const Object& c) {
  auto ab = Object::with(a, b);
  auto p1 = Rel::compose(Rel::proj1(a, b), Rel::proj1(ab, c));
  auto p2 = Rel::compose(Rel::proj2(a, b), Rel::proj1(ab, c));
  return Rel::pairing(p1, Rel::pairing(p2, Rel::proj2(ab, c)));
}
inline Rel sym(const Object& a, const Object& b) { return Rel::pairing(Rel::proj2(a, b), Rel::proj1(a, b)); }
}  // namespace with_iso

/// The coherence diagrams of a Seely category for the exponential `e`
/// instantiated at objects a, b, c.
inline std::vector<DiagramCheck> seely_diagrams(const Exp& e, const Object& a, const Object& b, const Object& c,
                                                Bounds probe, Bounds eval) {
  std::vector<DiagramCheck> out;
  auto ea = e.obj(a), eb = e.obj(b), ec = e.obj(c);
  auto ab = Object::with(a, b);
  auto add = [&](std::string name, Rel l, Rel r) { out.push_back({std::move(name), l, r, probe, eval}); };

  // m2 and digging: !A (x) !B -> !(!A & !B)
  {
    auto left = seq(Rel::tensor(e.dig(a), e.dig(b)), e.m2(ea, eb));
    auto pair = Rel::pairing(e.map(Rel::proj1(a, b)), e.map(Rel::proj2(a, b)));
    auto right = seq(e.m2(a, b), e.dig(ab), e.map(pair));
    add("seely.dig-m2", left, right);
  }
  // associativity
  {
    auto left = seq(Rel::tensor(e.m2(a, b), Rel::id(ec)), e.m2(ab, c), e.map(with_iso::assoc(a, b, c)));
    auto right = seq(Rel::assoc(ea, eb, ec), Rel::tensor(Rel::id(ea), e.m2(b, c)), e.m2(a, Object::with(b, c)));
    add("seely.assoc", left, right);
  }
  // units
  {
    auto top = Object::top();
    auto left = Rel::unit_r(ea);
    auto right = seq(Rel::tensor(Rel::id(ea), e.m0()), e.m2(a, top), e.map(Rel::proj1(a, top)));
    add("seely.unit-right", left, right);
    auto left2 = Rel::unit_l(eb);
    auto right2 = seq(Rel::tensor(e.m0(), Rel::id(eb)), e.m2(top, b), e.map(Rel::proj2(top, b)));
    add("seely.unit-left", left2, right2);
  }
  // symmetry
  {
    auto left = seq(Rel::sym(ea, eb), e.m2(b, a));
    auto right = seq(e.m2(a, b), e.map(with_iso::sym(a, b)));
    add("seely.sym", left, right);
  }
  // m2 is an isomorphism
  add("seely.m2-inv-m2", seq(e.m2(a, b), e.m2_inv(a, b)), Rel::id(Object::tensor(ea, eb)));
  add("seely.m2-m2-inv", seq(e.m2_inv(a, b), e.m2(a, b)), Rel::id(e.obj(ab)));
  return out;
}

/// Comonad laws for an exponential given by its functor, counit and
/// comultiplication.
struct ComonadOps {
  std::string name;
  std::function<Object(const Object&)> obj;
  std::function<Rel(const Rel&)> map;
  std::function<Rel(const Object&)> counit, comult;
};

inline ComonadOps comonad_of(const Exp& e) {
  return {e.is_coloured() ? "coloured-bang" : "bang", [e](const Object& a) { return e.obj(a); },
          [e](const Rel& f) { return e.map(f); }, [e](const Object& a) { return e.der(a); },
          [e](const Object& a) { return e.dig(a); }};
}

inline ComonadOps box_comonad(int n) {
  return {"box", [n](const Object& a) { return Object::box(a, n); }, [n](const Rel& f) { return Rel::box(f, n); },
          [n](const Object& a) { return Rel::box_counit(a, n); }, [n](const Object& a) { return Rel::box_dig(a, n); }};
}

inline std::vector<DiagramCheck> comonad_diagrams(const ComonadOps& c, const Object& a, Bounds probe, Bounds eval) {
  auto ta = c.obj(a);
  std::vector<DiagramCheck> out;
  out.push_back({c.name + ".counit-left", seq(c.comult(a), c.counit(ta)), Rel::id(ta), probe, eval});
  out.push_back({c.name + ".counit-right", seq(c.comult(a), c.map(c.counit(a))), Rel::id(ta), probe, eval});
  out.push_back(
      {c.name + ".coassoc", seq(c.comult(a), c.comult(ta)), seq(c.comult(a), c.map(c.comult(a))), probe, eval});
  return out;
}

/// The four compatibility diagrams of the distributive law !<> -o <>!.
inline std::vector<DiagramCheck> distributive_diagrams(const Object& a, int n, DistKind law, Bounds probe,
                                                       Bounds eval) {
  auto lam = [&](const Object& o) { return Rel::dist_law(o, n, law); };
  auto ba = Object::box(a, n);
  auto ea = Object::bang(a);
  std::vector<DiagramCheck> out;
  auto add = [&](std::string name, Rel l, Rel r) { out.push_back({std::move(name), l, r, probe, eval}); };
  add("dist.bang-counit", seq(lam(a), Rel::box(Rel::der(a), n)), Rel::der(ba));
  add("dist.box-counit", seq(lam(a), Rel::box_counit(ea, n)), Rel::bang(Rel::box_counit(a, n)));
  add("dist.bang-comult", seq(lam(a), Rel::box(Rel::dig(a), n)), seq(Rel::dig(ba), Rel::bang(lam(a)), lam(ea)));
  add("dist.box-comult", seq(lam(a), Rel::box_dig(ea, n)),
      seq(Rel::bang(Rel::box_dig(a, n)), lam(ba), Rel::box(lam(a), n)));
  return out;
}

}  // namespace llrel
