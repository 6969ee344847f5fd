#pragma once

#include <functional>
#include <set>
#include <vector>

#include "llrel/rel.hpp"

namespace llrel {

inline Verdict v_and(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::True && b == Verdict::True) return Verdict::True;
  return Verdict::BoundLimited;
}
inline Verdict v_or(Verdict a, Verdict b) {
  if (a == Verdict::True || b == Verdict::True) return Verdict::True;
  if (a == Verdict::False && b == Verdict::False) return Verdict::False;
  return Verdict::BoundLimited;
}

Image image(const Rel& r, const Point& x, const EvalCtx& ctx);
Image coimage(const Rel& r, const Point& y, const EvalCtx& ctx);
Verdict member(const Rel& r, const Point& x, const Point& y, const EvalCtx& ctx);

namespace detail {

/// Images keep every point they compute; bounds only limit the generation
/// of candidates in inherently infinite cases, which set `truncated`.
inline Image filtered(std::vector<Point> raw, const Bounds&, bool truncated = false) {
  Image im;
  im.truncated = truncated;
  im.points = std::move(raw);
  im.normalize();
  return im;
}

/// Multisets over `support` whose finite total is exactly `m`.
inline std::vector<Multiset> exact_total(const std::vector<Point>& support, std::uint32_t m) {
  std::vector<Multiset> out;
  std::vector<Multiset::Entry> cur;
  std::function<void(std::size_t, std::uint32_t)> go = [&](std::size_t i, std::uint32_t left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    if (i == support.size()) return;
    go(i + 1, left);
    for (std::uint32_t k = 1; k <= left; ++k) {
      cur.emplace_back(support[i], Mult(k));
      go(i + 1, left - k);
      cur.pop_back();
    }
  };
  go(0, m);
  return out;
}

/// Exact image of a structural map, before any bound filtering. Only called
/// for kinds whose image is finite and computable without bounds.
inline std::vector<Point> structural_image(const RelNode& n, const Point& x) {
  std::vector<Point> out;
  switch (n.kind) {
    case RelKind::Id: out.push_back(x); break;
    case RelKind::Proj1:
      if (x.kind() == PointKind::In1) out.push_back(x.first());
      break;
    case RelKind::Proj2:
      if (x.kind() == PointKind::In2) out.push_back(x.first());
      break;
    case RelKind::Diag:
      out.push_back(Point::in1(x));
      out.push_back(Point::in2(x));
      break;
    case RelKind::Der: {
      const auto& es = x.multiset().entries();
      if (es.size() == 1 && es[0].second == Mult(1)) out.push_back(es[0].first);
      break;
    }
    case RelKind::M0: out.push_back(Point::bag({})); break;
    case RelKind::M2: {
      auto l = x.first().multiset().map([](const Point& p) { return Point::in1(p); });
      auto r = x.second().multiset().map([](const Point& p) { return Point::in2(p); });
      out.push_back(Point::bag(l + r));
      break;
    }
    case RelKind::M2Inv: {
      std::vector<Multiset::Entry> l, r;
      for (const auto& [p, m] : x.multiset().entries())
        (p.kind() == PointKind::In1 ? l : r).emplace_back(p.first(), m);
      out.push_back(Point::pair(Point::bag(Multiset(l)), Point::bag(Multiset(r))));
      break;
    }
    case RelKind::BoxDig:
      for (int c1 = 1; c1 <= n.colours; ++c1)
        for (int c2 = 1; c2 <= n.colours; ++c2)
          if (std::max(c1, c2) == x.colour())
            out.push_back(Point::coloured(c1, Point::coloured(c2, x.first())));
      break;
    case RelKind::BoxCounit:
      if (x.colour() == 1) out.push_back(x.first());
      break;
    case RelKind::DistLaw: {
      const auto& es = x.multiset().entries();
      auto stripped = x.multiset().map([](const Point& p) { return p.first(); });
      if (es.empty()) {
        int hi = n.dist == DistKind::Max ? 1 : n.colours;
        for (int c = 1; c <= hi; ++c) out.push_back(Point::coloured(c, Point::bag(stripped)));
        break;
      }
      int lo = es.front().first.colour(), hi = lo;
      for (const auto& e : es) {
        lo = std::min(lo, e.first.colour());
        hi = std::max(hi, e.first.colour());
      }
      if (n.dist == DistKind::Max || lo == hi) out.push_back(Point::coloured(hi, Point::bag(stripped)));
      break;
    }
    case RelKind::BoxWith: {
      const auto& cp = x.first();
      auto tagged = x.kind() == PointKind::In1 ? Point::in1(cp.first()) : Point::in2(cp.first());
      out.push_back(Point::coloured(cp.colour(), tagged));
      break;
    }
    case RelKind::BoxWithInv: {
      const auto& t = x.first();
      auto cp = Point::coloured(x.colour(), t.first());
      out.push_back(t.kind() == PointKind::In1 ? Point::in1(cp) : Point::in2(cp));
      break;
    }
    case RelKind::Assoc:
      out.push_back(Point::pair(x.first().first(), Point::pair(x.first().second(), x.second())));
      break;
    case RelKind::AssocInv:
      out.push_back(Point::pair(Point::pair(x.first(), x.second().first()), x.second().second()));
      break;
    case RelKind::Sym: out.push_back(Point::pair(x.second(), x.first())); break;
    case RelKind::UnitL:
    case RelKind::UnitR: out.push_back(n.kind == RelKind::UnitL ? x.second() : x.first()); break;
    case RelKind::UnitLInv: out.push_back(Point::pair(Point::star(), x)); break;
    case RelKind::UnitRInv: out.push_back(Point::pair(x, Point::star())); break;
    case RelKind::Eval:
      if (x.first().first() == x.second()) out.push_back(x.first().second());
      break;
    default: throw Error("structural_image: unsupported kind");
  }
  return out;
}

inline bool is_structural(RelKind k) {
  switch (k) {
    case RelKind::Table:
    case RelKind::Compose:
    case RelKind::Tensor:
    case RelKind::Pairing:
    case RelKind::BangMap:
    case RelKind::Dig:
    case RelKind::BoxMap:
    case RelKind::Curry:
    case RelKind::Uncurry:
    case RelKind::Oracle: return false;
    default: return true;
  }
}

/// Image of the bag `w` under !f: each occurrence of a point is sent
/// through f independently; infinite entries may land anywhere in their
/// image as long as some target receives infinitely many copies.
inline Image bang_image(const std::function<Image(const Point&)>& step, const Multiset& w, const EvalCtx& ctx) {
  const Bounds& b = ctx.bounds;
  bool truncated = false;
  std::vector<std::vector<Multiset>> choices;
  for (const auto& [a, m] : w.entries()) {
    auto im = step(a);
    truncated |= im.truncated;
    std::vector<Multiset> opts;
    if (!m.is_omega()) {
      opts = exact_total(im.points, m.finite());
    } else {
      // Infinitely many copies: infinitely many outputs, never exhausted.
      truncated = true;
      if (b.allow_omega)
        for (auto& cand : enum_multisets(im.points, b.max_total, true))
          if (cand.has_omega()) opts.push_back(std::move(cand));
    }
    if (opts.empty()) return Image{{}, truncated};
    choices.push_back(std::move(opts));
  }
  std::vector<Point> raw;
  std::function<void(std::size_t, const Multiset&)> go = [&](std::size_t i, const Multiset& acc) {
    if (i == choices.size()) {
      raw.push_back(Point::bag(acc));
      return;
    }
    for (const auto& c : choices[i]) go(i + 1, acc + c);
  };
  go(0, Multiset{});
  return filtered(std::move(raw), b, truncated);
}

/// All decompositions of `w` as a (finite-support) multiset of parts whose
/// weighted sum is `w`, within bounds. The true image is always infinite
/// because empty parts may be added freely, so the result is truncated.
inline Image dig_image(const Multiset& w, const Bounds& b) {
  // Candidate nonempty parts: pointwise below w; under an infinite entry any
  // finite count up to the bound, or w itself.
  std::vector<std::vector<Mult>> per_entry;
  for (const auto& [p, m] : w.entries()) {
    std::vector<Mult> opts;
    if (m.is_omega()) {
      for (int k = 0; k <= b.max_total; ++k) opts.push_back(Mult(k));
      if (b.allow_omega) opts.push_back(Mult::omega());
    } else {
      for (std::uint32_t k = 0; k <= m.finite(); ++k) opts.push_back(Mult(k));
    }
    per_entry.push_back(std::move(opts));
  }
  std::vector<Multiset> parts;
  std::vector<Multiset::Entry> cur;
  std::function<void(std::size_t)> gen = [&](std::size_t i) {
    if (i == per_entry.size()) {
      Multiset v(cur);
      if (!v.empty() && fits(Point::bag(v), b)) parts.push_back(std::move(v));
      return;
    }
    for (auto k : per_entry[i]) {
      cur.emplace_back(w.entries()[i].first, k);
      gen(i + 1);
      cur.pop_back();
    }
  };
  gen(0);

  std::vector<Mult> outer_opts;
  for (int k = 0; k <= b.max_total; ++k) outer_opts.push_back(Mult(k));
  if (b.allow_omega) outer_opts.push_back(Mult::omega());

  auto exceeds = [&](const Multiset& s) {
    for (const auto& [p, m] : s.entries()) {
      Mult target = w.count(p);
      if (!(m <= target)) return true;
    }
    return false;
  };

  std::vector<Point> raw;
  std::vector<Multiset::Entry> outer;
  std::function<void(std::size_t, const Multiset&, int)> go = [&](std::size_t i, const Multiset& sum, int weight) {
    if (i == parts.size()) {
      if (!(sum == w)) return;
      for (auto k : outer_opts) {
        int wk = static_cast<int>(k.weight());
        if (weight + wk > b.max_total) continue;
        auto full = outer;
        full.emplace_back(Point::bag({}), k);
        raw.push_back(Point::bag(Multiset(full)));
      }
      return;
    }
    for (auto k : outer_opts) {
      int wk = static_cast<int>(k.weight());
      if (weight + wk > b.max_total) continue;
      Multiset next = k.is_zero() ? sum : sum + parts[i].scaled(k);
      if (exceeds(next)) continue;
      if (!k.is_zero()) outer.emplace_back(Point::bag(parts[i]), k);
      go(i + 1, next, weight + wk);
      if (!k.is_zero()) outer.pop_back();
    }
  };
  go(0, Multiset{}, 0);
  return filtered(std::move(raw), b, true);
}

/// Whether the bag `w` is related to the bag `v` by !f: a multiplicity
/// preserving matching between occurrences through f, where an infinite
/// entry on either side must be matched infinitely often with an infinite
/// entry on the other side.
inline Verdict bang_member(const Rel& f, const Multiset& w, const Multiset& v, const EvalCtx& ctx) {
  const auto& L = w.entries();
  const auto& R = v.entries();
  std::vector<std::vector<Verdict>> edge(L.size(), std::vector<Verdict>(R.size()));
  bool any_limited = false;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < R.size(); ++j) {
      edge[i][j] = member(f, L[i].first, R[j].first, ctx);
      any_limited |= edge[i][j] == Verdict::BoundLimited;
    }

  auto feasible = [&](bool optimistic) {
    auto ok = [&](std::size_t i, std::size_t j) {
      return edge[i][j] == Verdict::True || (optimistic && edge[i][j] == Verdict::BoundLimited);
    };
    // Infinite entries need an infinite partner.
    for (std::size_t i = 0; i < L.size(); ++i)
      if (L[i].second.is_omega()) {
        bool found = false;
        for (std::size_t j = 0; j < R.size(); ++j) found |= R[j].second.is_omega() && ok(i, j);
        if (!found) return false;
      }
    for (std::size_t j = 0; j < R.size(); ++j)
      if (R[j].second.is_omega()) {
        bool found = false;
        for (std::size_t i = 0; i < L.size(); ++i) found |= L[i].second.is_omega() && ok(i, j);
        if (!found) return false;
      }
    // Finite rows distribute their units; finite columns must be filled
    // exactly, the remainder being supplied by infinite rows.
    std::vector<std::uint32_t> need(R.size());
    for (std::size_t j = 0; j < R.size(); ++j) need[j] = R[j].second.is_omega() ? 0 : R[j].second.finite();
    std::function<bool(std::size_t)> rows = [&](std::size_t i) -> bool {
      if (i == L.size()) {
        for (std::size_t j = 0; j < R.size(); ++j) {
          if (R[j].second.is_omega() || need[j] == 0) continue;
          bool supplied = false;
          for (std::size_t k = 0; k < L.size(); ++k) supplied |= L[k].second.is_omega() && ok(k, j);
          if (!supplied) return false;
        }
        return true;
      }
      if (L[i].second.is_omega()) return rows(i + 1);
      std::function<bool(std::size_t, std::uint32_t)> spread = [&](std::size_t j, std::uint32_t left) -> bool {
        if (left == 0) return rows(i + 1);
        if (j == R.size()) return false;
        if (!ok(i, j)) return spread(j + 1, left);
        if (R[j].second.is_omega()) {
          for (std::uint32_t k = 0; k <= left; ++k)
            if (spread(j + 1, left - k)) return true;
          return false;
        }
        for (std::uint32_t k = std::min(left, need[j]);; --k) {
          need[j] -= k;
          bool r = spread(j + 1, left - k);
          need[j] += k;
          if (r) return true;
          if (k == 0) break;
        }
        return false;
      };
      return spread(0, L[i].second.finite());
    };
    return rows(0);
  };

  if (feasible(false)) return Verdict::True;
  if (any_limited && feasible(true)) return Verdict::BoundLimited;
  return Verdict::False;
}

}  // namespace detail

inline Image image(const Rel& r, const Point& x, const EvalCtx& ctx) {
  const auto& n = r.node();
  const Bounds& b = ctx.bounds;
  if (detail::is_structural(n.kind)) return detail::filtered(detail::structural_image(n, x), b);
  switch (n.kind) {
    case RelKind::Table: {
      auto it = n.table.find(x);
      if (it == n.table.end()) return {};
      return detail::filtered(it->second, b);
    }
    case RelKind::Compose: {
      auto mid = image(n.args[0], x, ctx);
      Image out;
      out.truncated = mid.truncated;
      for (const auto& z : mid.points) {
        auto im = image(n.args[1], z, ctx);
        out.truncated |= im.truncated;
        out.points.insert(out.points.end(), im.points.begin(), im.points.end());
      }
      out.normalize();
      return out;
    }
    case RelKind::Tensor: {
      auto l = image(n.args[0], x.first(), ctx);
      auto rr = image(n.args[1], x.second(), ctx);
      std::vector<Point> raw;
      for (const auto& p : l.points)
        for (const auto& q : rr.points) raw.push_back(Point::pair(p, q));
      return detail::filtered(std::move(raw), b, l.truncated || rr.truncated);
    }
    case RelKind::Pairing: {
      auto l = image(n.args[0], x, ctx);
      auto rr = image(n.args[1], x, ctx);
      std::vector<Point> raw;
      for (const auto& p : l.points) raw.push_back(Point::in1(p));
      for (const auto& q : rr.points) raw.push_back(Point::in2(q));
      return detail::filtered(std::move(raw), b, l.truncated || rr.truncated);
    }
    case RelKind::BangMap:
      return detail::bang_image([&](const Point& a) { return image(n.args[0], a, ctx); }, x.multiset(), ctx);
    case RelKind::Dig: return detail::dig_image(x.multiset(), b);
    case RelKind::BoxMap: {
      auto im = image(n.args[0], x.first(), ctx);
      std::vector<Point> raw;
      for (const auto& p : im.points) raw.push_back(Point::coloured(x.colour(), p));
      return detail::filtered(std::move(raw), b, im.truncated);
    }
    case RelKind::Curry: {
      const Object& a = n.args[0].dom().right();
      const auto& as = points_of(a, b);
      Image out;
      out.truncated = a.bang_depth() > 0;
      for (const auto& p : as) {
        auto im = image(n.args[0], Point::pair(x, p), ctx);
        out.truncated |= im.truncated;
        for (const auto& q : im.points) out.points.push_back(Point::pair(p, q));
      }
      return detail::filtered(std::move(out.points), b, out.truncated);
    }
    case RelKind::Uncurry: {
      auto im = image(n.args[0], x.first(), ctx);
      std::vector<Point> raw;
      for (const auto& ab : im.points)
        if (ab.first() == x.second()) raw.push_back(ab.second());
      return detail::filtered(std::move(raw), b, im.truncated);
    }
    case RelKind::Oracle: return n.oracle->image(x, ctx);
    default: break;
  }
  throw Error("image: unsupported relation kind");
}

namespace detail {

/// Whether images (resp. preimages) under `r` are always computed in full,
/// ignoring infinite multiplicities. Used to pick a search direction.
inline bool image_finite(const Rel& r) {
  const auto& n = r.node();
  switch (n.kind) {
    case RelKind::Dig:
    case RelKind::Oracle: return false;
    case RelKind::Curry: return n.args[0].dom().right().bang_depth() == 0;
    default:
      for (const auto& a : n.args)
        if (!image_finite(a)) return false;
      return true;
  }
}

inline bool coimage_finite(const Rel& r) {
  const auto& n = r.node();
  switch (n.kind) {
    case RelKind::Oracle: return false;
    case RelKind::Eval: return n.dom.left().left().bang_depth() == 0;
    case RelKind::Uncurry: return n.dom.right().bang_depth() == 0 && coimage_finite(n.args[0]);
    default:
      for (const auto& a : n.args)
        if (!coimage_finite(a)) return false;
      return true;
  }
}

}  // namespace detail

inline Verdict member(const Rel& r, const Point& x, const Point& y, const EvalCtx& ctx) {
  const auto& n = r.node();
  if (detail::is_structural(n.kind)) {
    auto raw = detail::structural_image(n, x);
    return std::find(raw.begin(), raw.end(), y) != raw.end() ? Verdict::True : Verdict::False;
  }
  switch (n.kind) {
    case RelKind::Table: {
      auto it = n.table.find(x);
      if (it == n.table.end()) return Verdict::False;
      return std::binary_search(it->second.begin(), it->second.end(), y) ? Verdict::True : Verdict::False;
    }
    case RelKind::Compose: {
      // Search whichever side enumerates its candidates exhaustively.
      bool backward_first = !detail::image_finite(n.args[0]) && detail::coimage_finite(n.args[1]);
      auto mid = backward_first ? Image{{}, true} : image(n.args[0], x, ctx);
      bool forward = !mid.truncated;
      if (!forward) {
        auto back = coimage(n.args[1], y, ctx);
        if (!back.truncated) {
          Verdict v = Verdict::False;
          for (const auto& z : back.points) {
            v = v_or(v, member(n.args[0], x, z, ctx));
            if (v == Verdict::True) break;
          }
          return v;
        }
      }
      Verdict v = forward ? Verdict::False : Verdict::BoundLimited;
      for (const auto& z : mid.points) {
        v = v_or(v, member(n.args[1], z, y, ctx));
        if (v == Verdict::True) break;
      }
      return v;
    }
    case RelKind::Tensor:
      return v_and(member(n.args[0], x.first(), y.first(), ctx), member(n.args[1], x.second(), y.second(), ctx));
    case RelKind::Pairing:
      return y.kind() == PointKind::In1 ? member(n.args[0], x, y.first(), ctx) : member(n.args[1], x, y.first(), ctx);
    case RelKind::BangMap: return detail::bang_member(n.args[0], x.multiset(), y.multiset(), ctx);
    case RelKind::Dig: {
      Multiset sum;
      for (const auto& [part, m] : y.multiset().entries()) sum += part.multiset().scaled(m);
      return sum == x.multiset() ? Verdict::True : Verdict::False;
    }
    case RelKind::BoxMap:
      if (x.colour() != y.colour()) return Verdict::False;
      return member(n.args[0], x.first(), y.first(), ctx);
    case RelKind::Curry: return member(n.args[0], Point::pair(x, y.first()), y.second(), ctx);
    case RelKind::Uncurry: return member(n.args[0], x.first(), Point::pair(x.second(), y), ctx);
    case RelKind::Oracle: return n.oracle->member(x, y, ctx);
    default: break;
  }
  throw Error("member: unsupported relation kind");
}

namespace detail {

/// Converse of the distributive law at <c>w: every colouring of the entries
/// of w compatible with the law.
inline Image dist_law_coimage(const RelNode& n, const Point& y, const Bounds& b) {
  int c = y.colour();
  const auto& w = y.first().multiset();
  if (w.empty()) {
    if (n.dist == DistKind::Max && c != 1) return {};
    return filtered({Point::bag({})}, b);
  }
  int lo = n.dist == DistKind::Max ? 1 : c;
  bool truncated = false;
  std::vector<std::vector<std::vector<Multiset::Entry>>> per_entry;
  for (const auto& [a, m] : w.entries()) {
    std::vector<std::vector<Multiset::Entry>> opts;
    std::vector<Multiset::Entry> cur;
    std::function<void(int, std::uint32_t, bool)> go = [&](int col, std::uint32_t left, bool got_omega) {
      if (col > c) {
        if ((m.is_omega() && got_omega) || (!m.is_omega() && left == 0)) opts.push_back(cur);
        return;
      }
      go(col + 1, left, got_omega);
      if (m.is_omega()) {
        for (int k = 1; k <= b.max_total; ++k) {
          cur.emplace_back(Point::coloured(col, a), Mult(k));
          go(col + 1, 0, got_omega);
          cur.pop_back();
        }
        cur.emplace_back(Point::coloured(col, a), Mult::omega());
        go(col + 1, 0, true);
        cur.pop_back();
      } else {
        for (std::uint32_t k = 1; k <= left; ++k) {
          cur.emplace_back(Point::coloured(col, a), Mult(k));
          go(col + 1, left - k, got_omega);
          cur.pop_back();
        }
      }
    };
    if (m.is_omega()) truncated = true;
    go(lo, m.is_omega() ? 0 : m.finite(), false);
    per_entry.push_back(std::move(opts));
  }
  std::vector<Point> raw;
  std::vector<Multiset::Entry> acc;
  std::function<void(std::size_t)> combine = [&](std::size_t i) {
    if (i == per_entry.size()) {
      Multiset v(acc);
      bool top = std::any_of(v.entries().begin(), v.entries().end(),
                             [&](const Multiset::Entry& e) { return e.first.colour() == c; });
      if (top) raw.push_back(Point::bag(std::move(v)));
      return;
    }
    for (const auto& o : per_entry[i]) {
      acc.insert(acc.end(), o.begin(), o.end());
      combine(i + 1);
      acc.resize(acc.size() - o.size());
    }
  };
  combine(0);
  return filtered(std::move(raw), b, truncated);
}

inline RelKind structural_converse(RelKind k) {
  switch (k) {
    case RelKind::M2: return RelKind::M2Inv;
    case RelKind::M2Inv: return RelKind::M2;
    case RelKind::BoxWith: return RelKind::BoxWithInv;
    case RelKind::BoxWithInv: return RelKind::BoxWith;
    case RelKind::Assoc: return RelKind::AssocInv;
    case RelKind::AssocInv: return RelKind::Assoc;
    case RelKind::UnitL: return RelKind::UnitLInv;
    case RelKind::UnitLInv: return RelKind::UnitL;
    case RelKind::UnitR: return RelKind::UnitRInv;
    case RelKind::UnitRInv: return RelKind::UnitR;
    default: return k;
  }
}

}  // namespace detail

/// Preimage of `y` under `r`, restricted to points fitting the bounds;
/// `truncated` is set when some preimage point was dropped.
inline Image coimage(const Rel& r, const Point& y, const EvalCtx& ctx) {
  const auto& n = r.node();
  const Bounds& b = ctx.bounds;
  switch (n.kind) {
    case RelKind::Id: return detail::filtered({y}, b);
    case RelKind::Sym: return detail::filtered({Point::pair(y.second(), y.first())}, b);
    case RelKind::M2:
    case RelKind::M2Inv:
    case RelKind::BoxWith:
    case RelKind::BoxWithInv:
    case RelKind::Assoc:
    case RelKind::AssocInv:
    case RelKind::UnitL:
    case RelKind::UnitLInv:
    case RelKind::UnitR:
    case RelKind::UnitRInv: {
      RelNode conv = n;
      conv.kind = detail::structural_converse(n.kind);
      return detail::filtered(detail::structural_image(conv, y), b);
    }
    case RelKind::Proj1: return detail::filtered({Point::in1(y)}, b);
    case RelKind::Proj2: return detail::filtered({Point::in2(y)}, b);
    case RelKind::Diag: return detail::filtered({y.first()}, b);
    case RelKind::Der: return detail::filtered({Point::bag(Multiset::singleton(y))}, b);
    case RelKind::M0: return detail::filtered({Point::star()}, b);
    case RelKind::BoxDig:
      return detail::filtered({Point::coloured(std::max(y.colour(), y.first().colour()), y.first().first())}, b);
    case RelKind::BoxCounit: return detail::filtered({Point::coloured(1, y)}, b);
    case RelKind::DistLaw: return detail::dist_law_coimage(n, y, b);
    case RelKind::Dig: {
      Multiset sum;
      for (const auto& [part, m] : y.multiset().entries()) sum += part.multiset().scaled(m);
      return detail::filtered({Point::bag(sum)}, b);
    }
    case RelKind::Eval: {
      const Object& a = n.dom.left().left();
      std::vector<Point> raw;
      for (const auto& p : points_of(a, b)) raw.push_back(Point::pair(Point::pair(p, y), p));
      return detail::filtered(std::move(raw), b, a.bang_depth() > 0);
    }
    case RelKind::Table: {
      std::vector<Point> raw;
      for (const auto& [x, ys] : n.table)
        if (std::binary_search(ys.begin(), ys.end(), y)) raw.push_back(x);
      return detail::filtered(std::move(raw), b);
    }
    case RelKind::Compose: {
      auto mid = coimage(n.args[1], y, ctx);
      Image out;
      out.truncated = mid.truncated;
      for (const auto& z : mid.points) {
        auto im = coimage(n.args[0], z, ctx);
        out.truncated |= im.truncated;
        out.points.insert(out.points.end(), im.points.begin(), im.points.end());
      }
      out.normalize();
      return out;
    }
    case RelKind::Tensor: {
      auto l = coimage(n.args[0], y.first(), ctx);
      auto rr = coimage(n.args[1], y.second(), ctx);
      std::vector<Point> raw;
      for (const auto& p : l.points)
        for (const auto& q : rr.points) raw.push_back(Point::pair(p, q));
      return detail::filtered(std::move(raw), b, l.truncated || rr.truncated);
    }
    case RelKind::Pairing:
      return coimage(y.kind() == PointKind::In1 ? n.args[0] : n.args[1], y.first(), ctx);
    case RelKind::BangMap:
      return detail::bang_image([&](const Point& a) { return coimage(n.args[0], a, ctx); }, y.multiset(), ctx);
    case RelKind::BoxMap: {
      auto im = coimage(n.args[0], y.first(), ctx);
      std::vector<Point> raw;
      for (const auto& p : im.points) raw.push_back(Point::coloured(y.colour(), p));
      return detail::filtered(std::move(raw), b, im.truncated);
    }
    case RelKind::Curry: {
      auto im = coimage(n.args[0], y.second(), ctx);
      std::vector<Point> raw;
      for (const auto& ca : im.points)
        if (ca.second() == y.first()) raw.push_back(ca.first());
      return detail::filtered(std::move(raw), b, im.truncated);
    }
    case RelKind::Uncurry: {
      const Object& a = n.dom.right();
      Image out;
      out.truncated = a.bang_depth() > 0;
      for (const auto& p : points_of(a, b)) {
        auto im = coimage(n.args[0], Point::pair(p, y), ctx);
        out.truncated |= im.truncated;
        for (const auto& c : im.points) out.points.push_back(Point::pair(c, p));
      }
      return detail::filtered(std::move(out.points), b, out.truncated);
    }
    case RelKind::Oracle: return n.oracle->coimage(y, ctx, n.dom);
  }
  throw Error("coimage: unsupported relation kind");
}

/// All pairs of `r` whose domain point fits the bounds, with the image of
/// each restricted to the bounds. `truncated` is set when some image was.
struct Enumeration {
  std::vector<std::pair<Point, Point>> pairs;
  bool truncated = false;
};

/// Domain points are drawn from `dom_bounds`; images are computed and
/// filtered under `eval_bounds`.
inline Enumeration enumerate(const Rel& r, const Bounds& dom_bounds, const Bounds& eval_bounds) {
  Enumeration out;
  EvalCtx ctx{eval_bounds};
  for (const auto& x : points_of(r.dom(), dom_bounds)) {
    auto im = image(r, x, ctx);
    out.truncated |= im.truncated;
    for (const auto& y : im.points) {
      if (fits(y, eval_bounds))
        out.pairs.emplace_back(x, y);
      else
        out.truncated = true;
    }
  }
  return out;
}

inline Enumeration enumerate(const Rel& r, const Bounds& b) { return enumerate(r, b, b); }

}  // namespace llrel
