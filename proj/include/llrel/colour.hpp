#pragma once

#include "llrel/rel.hpp"

namespace llrel {

/// Structure maps of the composite comonad !<>: counit, comultiplication
/// assembled from ! digging, box digging and the distributive law.
inline Rel composite_der(const Object& a, int colours) {
  return seq(Rel::der(Object::box(a, colours)), Rel::box_counit(a, colours));
}

inline Rel composite_dig(const Object& a, int colours, DistKind law = DistKind::Uniform) {
  auto ba = Object::box(a, colours);
  auto bba = Object::box(ba, colours);
  return seq(Rel::bang(Rel::box_dig(a, colours)), Rel::dig(bba), Rel::bang(Rel::dist_law(ba, colours, law)));
}

/// An exponential comonad with its Seely structure: either the plain
/// multiset exponential, or the coloured one !<> with N colours.
struct Exp {
  enum class Kind { Bang, Coloured };
  Kind kind = Kind::Bang;
  int colours = 0;
  DistKind law = DistKind::Uniform;

  static Exp bang() { return {}; }
  static Exp coloured(int n, DistKind law = DistKind::Uniform) { return {Kind::Coloured, n, law}; }

  bool is_coloured() const { return kind == Kind::Coloured; }

  Object obj(const Object& a) const {
    return is_coloured() ? Object::bang(Object::box(a, colours)) : Object::bang(a);
  }
  Rel map(const Rel& f) const { return is_coloured() ? Rel::bang(Rel::box(f, colours)) : Rel::bang(f); }
  Rel der(const Object& a) const { return is_coloured() ? composite_der(a, colours) : Rel::der(a); }
  Rel dig(const Object& a) const { return is_coloured() ? composite_dig(a, colours, law) : Rel::dig(a); }

  /// E a (x) E b -o E (a & b)
  Rel m2(const Object& a, const Object& b) const {
    if (!is_coloured()) return Rel::m2(a, b);
    return seq(Rel::m2(Object::box(a, colours), Object::box(b, colours)), Rel::bang(Rel::box_with(a, b, colours)));
  }
  Rel m2_inv(const Object& a, const Object& b) const {
    if (!is_coloured()) return Rel::m2_inv(a, b);
    return seq(Rel::bang(Rel::box_with_inv(a, b, colours)), Rel::m2_inv(Object::box(a, colours), Object::box(b, colours)));
  }
  /// 1 -o E T
  Rel m0() const {
    if (!is_coloured()) return Rel::m0();
    return seq(Rel::m0(), Rel::bang(Rel::table(Object::top(), Object::box(Object::top(), colours), {})));
  }
};

}  // namespace llrel
