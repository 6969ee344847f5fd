#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <string>
#include <vector>

#include "llrel/point.hpp"

namespace llrel {

/// Size limits for enumeration. A point fits when every multiset nested in
/// it has weight (finite multiplicities plus one per infinite entry) at most
/// `max_total`, and carries no infinite entry unless `allow_omega`.
struct Bounds {
  int max_total = 3;
  bool allow_omega = false;
  int max_depth = 3;

  friend auto operator<=>(const Bounds&, const Bounds&) = default;
};

inline bool fits(const Point& p, const Bounds& b) {
  switch (p.kind()) {
    case PointKind::Atom:
    case PointKind::Star: return true;
    case PointKind::Pair: return fits(p.first(), b) && fits(p.second(), b);
    case PointKind::In1:
    case PointKind::In2:
    case PointKind::Coloured: return fits(p.first(), b);
    case PointKind::Bag: {
      const auto& m = p.multiset();
      if (static_cast<int>(m.weight()) > b.max_total) return false;
      if (!b.allow_omega && m.has_omega()) return false;
      for (const auto& e : m.entries())
        if (!fits(e.first, b)) return false;
      return true;
    }
  }
  return false;
}

/// All multisets over `base` of finite total at most `max_total`; with
/// `allow_omega`, also every multiset obtained by raising some of their
/// entries to w. Sorted canonically, no duplicates.
inline std::vector<Multiset> enum_multisets(const std::vector<Point>& base, int max_total, bool allow_omega) {
  std::vector<Multiset> out;
  std::vector<Multiset::Entry> cur;
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int budget) {
    if (i == base.size()) {
      out.emplace_back(cur);
      return;
    }
    go(i + 1, budget);
    for (int k = 1; k <= budget; ++k) {
      cur.emplace_back(base[i], Mult(k));
      go(i + 1, budget - k);
      cur.pop_back();
    }
    if (allow_omega && budget >= 1) {
      cur.emplace_back(base[i], Mult::omega());
      go(i + 1, budget - 1);
      cur.pop_back();
    }
  };
  go(0, max_total);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<Point> compute_points(const Object& o, const Bounds& b);

inline std::string obj_key(const Object& o) {
  switch (o.kind()) {
    case ObjKind::Base: {
      std::string s = o.name() + "{";
      for (const auto& e : o.elements()) s += e + ",";
      return s + "}";
    }
    case ObjKind::Unit: return "1";
    case ObjKind::Top: return "T";
    case ObjKind::Bang: return "!(" + obj_key(o.left()) + ")";
    case ObjKind::Box: return "<" + std::to_string(o.colours()) + ">(" + obj_key(o.left()) + ")";
    default:
      return std::to_string(static_cast<int>(o.kind())) + "(" + obj_key(o.left()) + "," + obj_key(o.right()) + ")";
  }
}

inline const std::vector<Point>& cached_points(const Object& o, const Bounds& b) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::tuple<int, bool, int>>, std::vector<Point>> cache;
  auto key = std::make_pair(obj_key(o),
                            std::make_tuple(b.max_total, b.allow_omega, b.max_depth));
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto pts = compute_points(o, b);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(pts)).first->second;
}

inline std::vector<Point> compute_points(const Object& o, const Bounds& b) {
  std::vector<Point> out;
  switch (o.kind()) {
    case ObjKind::Base:
      for (std::size_t i = 0; i < o.elements().size(); ++i)
        out.push_back(Point::atom(static_cast<int>(i), o.elements()[i]));
      break;
    case ObjKind::Unit: out.push_back(Point::star()); break;
    case ObjKind::Top: break;
    case ObjKind::Tensor:
    case ObjKind::Lolli:
      for (const auto& p : cached_points(o.left(), b))
        for (const auto& q : cached_points(o.right(), b)) out.push_back(Point::pair(p, q));
      break;
    case ObjKind::With:
      for (const auto& p : cached_points(o.left(), b)) out.push_back(Point::in1(p));
      for (const auto& q : cached_points(o.right(), b)) out.push_back(Point::in2(q));
      break;
    case ObjKind::Box:
      for (int c = 1; c <= o.colours(); ++c)
        for (const auto& p : cached_points(o.left(), b)) out.push_back(Point::coloured(c, p));
      break;
    case ObjKind::Bang:
      for (auto& m : enum_multisets(cached_points(o.left(), b), b.max_total, b.allow_omega))
        out.push_back(Point::bag(std::move(m)));
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Every well-typed point of `o` that fits `b`, in canonical order.
/// Throws when `o` nests exponentials deeper than `b.max_depth`.
inline const std::vector<Point>& points_of(const Object& o, const Bounds& b) {
  if (o.bang_depth() > b.max_depth)
    throw Error("point universe of " + o.str() + " exceeds exponential depth bound " +
                std::to_string(b.max_depth));
  return detail::cached_points(o, b);
}

/// Multisets over the points of a base object (convenience over points_of).
inline std::vector<Multiset> enum_multisets(const Object& base, int max_total, bool allow_omega) {
  Bounds b{max_total, allow_omega, 1};
  return enum_multisets(points_of(base, b), max_total, allow_omega);
}

}  // namespace llrel
