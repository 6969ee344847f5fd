#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "llrel/colour.hpp"
#include "llrel/eval.hpp"
#include "llrel/fixpoint.hpp"

namespace llrel {

/// Finite difference a - b; requires b <= a and a w-free.
inline Multiset ms_minus(const Multiset& a, const Multiset& b) {
  std::vector<Multiset::Entry> out;
  for (const auto& [p, m] : a.entries()) {
    auto k = b.count(p);
    if (m.is_omega() || k.is_omega()) throw Error("ms_minus: infinite multiplicity");
    if (k.finite() > m.finite()) throw Error("ms_minus: not a sub-multiset");
    if (k.finite() < m.finite()) out.emplace_back(p, Mult(m.finite() - k.finite()));
  }
  return Multiset(std::move(out));
}

/// Every sub-multiset of a finite multiset.
inline std::vector<Multiset> sub_multisets(const Multiset& m) {
  std::vector<Multiset> out;
  std::vector<Multiset::Entry> cur;
  const auto& es = m.entries();
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == es.size()) {
      out.emplace_back(cur);
      return;
    }
    if (es[i].second.is_omega()) throw Error("sub_multisets: infinite multiplicity");
    for (std::uint32_t k = 0; k <= es[i].second.finite(); ++k) {
      if (k) cur.emplace_back(es[i].first, Mult(k));
      go(i + 1);
      if (k) cur.pop_back();
    }
  };
  go(0);
  return out;
}

/// Recolours every entry <c>p of a coloured multiset to <max(c,d)>p; the
/// identity on uncoloured multisets (d = 0).
inline Multiset bump(const Multiset& v, int d) {
  if (d == 0) return v;
  return v.map([d](const Point& p) { return Point::coloured(std::max(p.colour(), d), p.inner()); });
}

/// Every v with bump(v, d) = t.
inline std::vector<Multiset> unbump(const Multiset& t, int d) {
  if (d == 0) return {t};
  std::vector<std::vector<Multiset>> per;
  for (const auto& [p, m] : t.entries()) {
    if (p.colour() < d) return {};
    if (p.colour() > d) {
      per.push_back({Multiset::singleton(p, m)});
      continue;
    }
    std::vector<Point> srcs;
    for (int c = 1; c <= d; ++c) srcs.push_back(Point::coloured(c, p.inner()));
    per.push_back(detail::exact_total(srcs, m.finite()));
  }
  std::vector<Multiset> out;
  std::function<void(std::size_t, const Multiset&)> go = [&](std::size_t i, const Multiset& acc) {
    if (i == per.size()) {
      out.push_back(acc);
      return;
    }
    for (const auto& o : per[i]) go(i + 1, acc + o);
  };
  go(0, Multiset());
  return out;
}

/// Colour of an occurrence and its underlying point.
inline std::pair<int, Point> split_colour(const Point& p, bool coloured) {
  return coloured ? std::make_pair(p.colour(), p.inner()) : std::make_pair(0, p);
}

/// Occurrences of a finite multiset, one per unit of multiplicity.
inline std::vector<Point> occurrences(const Multiset& m) {
  std::vector<Point> out;
  for (const auto& [p, k] : m.entries()) {
    if (k.is_omega()) throw Error("occurrences: infinite multiplicity");
    for (std::uint32_t i = 0; i < k.finite(); ++i) out.push_back(p);
  }
  return out;
}

/// A finite relation E P (x) E C -o R given by rows ((xs, cs), r), where E is
/// ! or the coloured exponential.
struct Morph {
  Object P, C, R;
  int colours = 0;
  std::vector<FixRow> rows;

  bool coloured() const { return colours > 0; }
  Object exp(const Object& o) const { return coloured() ? Object::bang(Object::box(o, colours)) : Object::bang(o); }
  Exp e() const { return coloured() ? Exp::coloured(colours) : Exp::bang(); }

  Rel rel() const {
    std::vector<std::pair<Point, Point>> ps;
    for (const auto& r : rows) ps.emplace_back(Point::pair(Point::bag(r.xs), Point::bag(r.as)), r.b);
    return Rel::table(Object::tensor(exp(P), exp(C)), R, ps);
  }
  /// E P -o R, for rows without children.
  Rel rel_unary() const {
    std::vector<std::pair<Point, Point>> ps;
    for (const auto& r : rows) {
      if (!r.as.empty()) throw TypeError("rel_unary: row with children");
      ps.emplace_back(Point::bag(r.xs), r.b);
    }
    return Rel::table(exp(P), R, ps);
  }
  FixTable table() const {
    if (!(C == R)) throw TypeError("fixpoint body needs matching child and result objects");
    FixTable t{P, R, colours, rows};
    std::sort(t.rows.begin(), t.rows.end());
    t.rows.erase(std::unique(t.rows.begin(), t.rows.end()), t.rows.end());
    return t;
  }
  static Morph of(const FixTable& t) { return {t.X, t.A, t.A, t.colours, t.rows}; }
};

/// A finite relation E X (x) E A (x) E A -o A, rows ((xs, u1, u2), a).
struct TriRow {
  Multiset xs, u1, u2;
  Point b;
  friend auto operator<=>(const TriRow&, const TriRow&) = default;
  friend bool operator==(const TriRow&, const TriRow&) = default;
};

struct TriMorph {
  Object X, A;
  int colours = 0;
  std::vector<TriRow> rows;

  bool coloured() const { return colours > 0; }
  Object exp(const Object& o) const { return coloured() ? Object::bang(Object::box(o, colours)) : Object::bang(o); }
  Exp e() const { return coloured() ? Exp::coloured(colours) : Exp::bang(); }

  /// As a relation E X (x) (E A (x) E A) -o A.
  Rel rel() const {
    std::vector<std::pair<Point, Point>> ps;
    for (const auto& r : rows)
      ps.emplace_back(Point::pair(Point::bag(r.xs), Point::pair(Point::bag(r.u1), Point::bag(r.u2))), r.b);
    return Rel::table(Object::tensor(exp(X), Object::tensor(exp(A), exp(A))), A, ps);
  }
};

/// Replaces each occurrence <d>c of `holes` by a row (xs, cs, c) of `g`,
/// bumped by d; calls `emit` with the summed xs and cs of every choice.
inline void substitute(const Multiset& holes, const std::vector<FixRow>& g, bool coloured,
                       const std::function<void(const Multiset&, const Multiset&)>& emit) {
  auto occ = occurrences(holes);
  std::function<void(std::size_t, const Multiset&, const Multiset&)> go = [&](std::size_t i, const Multiset& xs,
                                                                              const Multiset& cs) {
    if (i == occ.size()) {
      emit(xs, cs);
      return;
    }
    auto [d, c] = split_colour(occ[i], coloured);
    for (const auto& r : g)
      if (r.b == c) go(i + 1, xs + bump(r.xs, d), cs + bump(r.as, d));
  };
  go(0, Multiset(), Multiset());
}

inline void dedupe(std::vector<FixRow>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

/// f * g as a table: the B-children of f replaced by rows of g.
inline FixTable tabulate_star(const Morph& f, const Morph& g) {
  if (!(f.P == g.P) || !(f.C == g.R) || !(g.C == f.R) || f.colours != g.colours)
    throw TypeError("star: f and g do not fit together");
  FixTable t{f.P, f.R, f.colours, {}};
  for (const auto& r : f.rows)
    substitute(r.as, g.rows, f.coloured(),
               [&](const Multiset& xs, const Multiset& cs) { t.rows.push_back({r.xs + xs, cs, r.b}); });
  dedupe(t.rows);
  return t;
}

/// The body k = f . ((E g . dig) (x) E A) of the naturality law, for
/// g : E X -o Z (rows with empty child part) and f : E Z (x) E A -o A.
inline FixTable tabulate_naturality_body(const Morph& f, const Morph& g) {
  if (!(f.P == g.R) || !(f.C == f.R) || f.colours != g.colours) throw TypeError("naturality: g does not fit f");
  FixTable t{g.P, f.R, f.colours, {}};
  for (const auto& r : f.rows)
    substitute(r.xs, g.rows, f.coloured(),
               [&](const Multiset& xs, const Multiset&) { t.rows.push_back({xs, r.as, r.b}); });
  dedupe(t.rows);
  return t;
}

/// k = f . (E X (x) (m2^-1 . E diag)): both A-arguments merged.
inline FixTable tabulate_diagonal_body(const TriMorph& f) {
  FixTable t{f.X, f.A, f.colours, {}};
  for (const auto& r : f.rows) t.rows.push_back({r.xs, r.u1 + r.u2, r.b});
  dedupe(t.rows);
  return t;
}

/// f . (m2^-1 (x) E A) : E (X & A) (x) E A -o A, the first A-argument moved
/// into the parameter.
inline FixTable tabulate_diagonal_inner(const TriMorph& f) {
  FixTable t{Object::with(f.X, f.A), f.A, f.colours, {}};
  auto tag = [&](const Multiset& m, bool left) {
    return m.map([&](const Point& p) {
      auto [c, q] = split_colour(p, f.coloured());
      auto t2 = left ? Point::in1(q) : Point::in2(q);
      return f.coloured() ? Point::coloured(c, t2) : t2;
    });
  };
  for (const auto& r : f.rows) t.rows.push_back({tag(r.xs, true) + tag(r.u1, false), r.u2, r.b});
  dedupe(t.rows);
  return t;
}

/// Membership of a morphism E P -o C, three-valued.
using KleisliOracle = std::function<Verdict(const Multiset&, const Point&)>;

/// Caches an oracle's answers.
inline KleisliOracle memoize(KleisliOracle o) {
  auto cache = std::make_shared<std::map<std::pair<Multiset, Point>, Verdict>>();
  return [o = std::move(o), cache](const Multiset& w, const Point& c) {
    auto key = std::make_pair(w, c);
    if (auto it = cache->find(key); it != cache->end()) return it->second;
    auto v = o(w, c);
    cache->emplace(key, v);
    return v;
  };
}

/// Whether (w, r) is in f . (E P (x) (E h . dig)) . m2^-1 . E diag, the
/// one-step unfolding of f with h plugged into its children: some row
/// ((xs, [<d_i>c_i]), r) with w = xs + sum bump(v_i, d_i), (v_i, c_i) in h.
/// w must be finite.
inline Verdict unfold(const Morph& f, const KleisliOracle& h, const Multiset& w, const Point& r) {
  Verdict out = Verdict::False;
  for (const auto& row : f.rows) {
    if (!(row.b == r) || !row.xs.leq(w)) continue;
    auto rest = ms_minus(w, row.xs);
    auto kids = occurrences(row.as);
    std::function<Verdict(std::size_t, const Multiset&)> go = [&](std::size_t i, const Multiset& left) -> Verdict {
      if (i == kids.size()) return left.empty() ? Verdict::True : Verdict::False;
      auto [d, c] = split_colour(kids[i], f.coloured());
      Verdict acc = Verdict::False;
      for (const auto& t : sub_multisets(left)) {
        auto after = ms_minus(left, t);
        for (const auto& v : unbump(t, d)) {
          auto here = h(v, c);
          if (here == Verdict::False) continue;
          acc = v_or(acc, v_and(here, go(i + 1, after)));
          if (acc == Verdict::True) return acc;
        }
      }
      return acc;
    };
    out = v_or(out, go(0, rest));
    if (out == Verdict::True) break;
  }
  return out;
}

// Relational expressions of the composites, exactly as drawn.

/// f * g : E X (x) E A -o A for f : E X (x) E B -o A and g : E X (x) E A -o B.
inline Rel star(const Rel& f, const Rel& g, const Exp& e = Exp::bang()) {
  const Object& ex = f.dom().left();
  const Object& ea = g.dom().right();
  if (!(g.dom().left() == ex) || !(f.dom().right() == e.obj(g.cod())) || !(ea == e.obj(f.cod())))
    throw TypeError("star: f : " + f.dom().str() + " -o " + f.cod().str() + " and g : " + g.dom().str() + " -o " +
                    g.cod().str() + " do not fit together");
  auto strip = [&](const Object& o) { return e.is_coloured() ? o.left().left() : o.left(); };
  Object X = strip(ex), A = f.cod();
  auto id = [](const Object& o) { return Rel::id(o); };
  auto xa = Object::with(X, A);
  return seq(Rel::tensor(e.map(Rel::diag(X)), id(ea)), Rel::tensor(e.m2_inv(X, X), id(ea)),
             Rel::assoc(ex, ex, ea), Rel::tensor(id(ex), e.m2(X, A)), Rel::tensor(id(ex), e.dig(xa)),
             Rel::tensor(id(ex), e.map(e.m2_inv(X, A))), Rel::tensor(id(ex), e.map(g)), f);
}

/// k = f . ((E g . dig) (x) E A) for g : E X -o Z and f : E Z (x) E A -o A.
inline Rel naturality_body(const Rel& f, const Rel& g, const Exp& e = Exp::bang()) {
  const Object& ea = f.dom().right();
  auto strip = [&](const Object& o) { return e.is_coloured() ? o.left().left() : o.left(); };
  return seq(Rel::tensor(seq(e.dig(strip(g.dom())), e.map(g)), Rel::id(ea)), f);
}

/// f . (E X (x) (m2^-1 . E diag)) for f : E X (x) (E A (x) E A) -o A.
inline Rel diagonal_body(const Rel& f, const Exp& e = Exp::bang()) {
  const Object& ex = f.dom().left();
  const Object& A = f.cod();
  return seq(Rel::tensor(Rel::id(ex), seq(e.map(Rel::diag(A)), e.m2_inv(A, A))), f);
}

/// f . assoc . (m2^-1 (x) E A) : E (X & A) (x) E A -o A.
inline Rel diagonal_inner(const Rel& f, const Exp& e = Exp::bang()) {
  auto strip = [&](const Object& o) { return e.is_coloured() ? o.left().left() : o.left(); };
  Object X = strip(f.dom().left()), A = f.cod();
  auto ex = e.obj(X), ea = e.obj(A);
  return seq(Rel::tensor(e.m2_inv(X, A), Rel::id(ea)), Rel::assoc(ex, ea, ea), f);
}

/// The right side of the fixpoint property, f . (E X (x) (E y . dig)) .
/// m2^-1 . E diag, for y : E X -o A.
inline Rel unfolding(const Rel& f, const Rel& y, const Exp& e = Exp::bang()) {
  const Object& ex = f.dom().left();
  auto strip = [&](const Object& o) { return e.is_coloured() ? o.left().left() : o.left(); };
  Object X = strip(ex);
  return seq(e.map(Rel::diag(X)), e.m2_inv(X, X), Rel::tensor(Rel::id(ex), seq(e.dig(X), e.map(y))), f);
}

}  // namespace llrel
