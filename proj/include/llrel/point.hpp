#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "llrel/mult.hpp"
#include "llrel/object.hpp"

namespace llrel {

enum class PointKind { Atom, Star, Pair, In1, In2, Bag, Coloured };

struct PointNode;
class Multiset;

/// An element of the interpretation of an object. Immutable and shared.
///
/// Atoms carry both their declaration index (which drives the canonical
/// order) and their name (used for printing).
class Point {
 public:
  Point() = default;

  static Point atom(int index, std::string name);
  static Point star();
  static Point pair(Point a, Point b);
  static Point in1(Point a);
  static Point in2(Point a);
  static Point bag(Multiset m);
  static Point coloured(int colour, Point a);

  PointKind kind() const;
  int index() const;  // atom index, colour, or tag 1/2
  const std::string& name() const;
  const Point& first() const;
  const Point& second() const;
  const Point& inner() const { return first(); }
  int colour() const { return index(); }
  const Multiset& multiset() const;

  bool valid() const { return node_ != nullptr; }
  std::string str() const;

  friend std::strong_ordering operator<=>(const Point& a, const Point& b);
  friend bool operator==(const Point& a, const Point& b) { return (a <=> b) == 0; }

 private:
  explicit Point(std::shared_ptr<const PointNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const PointNode> node_;
};

/// Finite-support map from points to multiplicities in N u {w}. Entries are
/// kept sorted by the canonical point order, with no zero entries.
class Multiset {
 public:
  using Entry = std::pair<Point, Mult>;

  Multiset() = default;
  explicit Multiset(std::vector<Entry> entries) : entries_(std::move(entries)) { normalize(); }
  Multiset(std::initializer_list<Point> pts) {
    for (const auto& p : pts) entries_.emplace_back(p, Mult(1));
    normalize();
  }

  static Multiset singleton(Point p, Mult m = Mult(1)) { return Multiset({{std::move(p), m}}); }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  Mult count(const Point& p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, const Point& q) { return e.first < q; });
    return (it != entries_.end() && it->first == p) ? it->second : Mult(0);
  }

  bool has_omega() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second.is_omega(); });
  }

  /// Sum of finite multiplicities plus one per infinite entry.
  std::uint32_t weight() const {
    std::uint32_t w = 0;
    for (const auto& e : entries_) w += e.second.weight();
    return w;
  }

  /// Total multiplicity; infinite as soon as one entry is.
  Mult total() const {
    Mult t(0);
    for (const auto& e : entries_) t += e.second;
    return t;
  }

  Multiset& operator+=(const Multiset& o) {
    entries_.insert(entries_.end(), o.entries_.begin(), o.entries_.end());
    normalize();
    return *this;
  }
  friend Multiset operator+(Multiset a, const Multiset& b) { return a += b; }

  /// Every multiplicity multiplied by `k`.
  Multiset scaled(Mult k) const {
    std::vector<Entry> out;
    for (const auto& e : entries_) out.emplace_back(e.first, e.second * k);
    return Multiset(std::move(out));
  }

  /// Pointwise order in N u {w}.
  bool leq(const Multiset& o) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return e.second <= o.count(e.first); });
  }

  template <class F>
  Multiset map(F&& f) const {
    std::vector<Entry> out;
    for (const auto& e : entries_) out.emplace_back(f(e.first), e.second);
    return Multiset(std::move(out));
  }

  std::string str() const;

  friend std::strong_ordering operator<=>(const Multiset& a, const Multiset& b);
  friend bool operator==(const Multiset& a, const Multiset& b) { return a.entries_ == b.entries_; }

 private:
  void normalize() {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> out;
    for (auto& e : entries_) {
      if (e.second.is_zero()) continue;
      if (!out.empty() && out.back().first == e.first)
        out.back().second += e.second;
      else
        out.push_back(std::move(e));
    }
    entries_ = std::move(out);
  }
  std::vector<Entry> entries_;
};

struct PointNode {
  PointKind kind;
  int index = 0;
  std::string name;
  Point a, b;
  Multiset bag;
};

inline Point Point::atom(int index, std::string name) {
  return Point(std::make_shared<PointNode>(PointNode{PointKind::Atom, index, std::move(name), {}, {}, {}}));
}
inline Point Point::star() {
  static const Point s(std::make_shared<PointNode>(PointNode{PointKind::Star, 0, "", {}, {}, {}}));
  return s;
}
inline Point Point::pair(Point a, Point b) {
  return Point(std::make_shared<PointNode>(PointNode{PointKind::Pair, 0, "", std::move(a), std::move(b), {}}));
}
inline Point Point::in1(Point a) {
  return Point(std::make_shared<PointNode>(PointNode{PointKind::In1, 1, "", std::move(a), {}, {}}));
}
inline Point Point::in2(Point a) {
  return Point(std::make_shared<PointNode>(PointNode{PointKind::In2, 2, "", std::move(a), {}, {}}));
}
inline Point Point::bag(Multiset m) {
  return Point(std::make_shared<PointNode>(PointNode{PointKind::Bag, 0, "", {}, {}, std::move(m)}));
}
inline Point Point::coloured(int colour, Point a) {
  return Point(std::make_shared<PointNode>(PointNode{PointKind::Coloured, colour, "", std::move(a), {}, {}}));
}

inline PointKind Point::kind() const { return node_->kind; }
inline int Point::index() const { return node_->index; }
inline const std::string& Point::name() const { return node_->name; }
inline const Point& Point::first() const { return node_->a; }
inline const Point& Point::second() const { return node_->b; }
inline const Multiset& Point::multiset() const { return node_->bag; }

inline std::strong_ordering operator<=>(const Point& x, const Point& y) {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  if (!x.node_ || !y.node_) return x.node_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = x.kind() <=> y.kind(); c != 0) return c;
  switch (x.kind()) {
    case PointKind::Atom:
      if (auto c = x.index() <=> y.index(); c != 0) return c;
      return x.name() <=> y.name();
    case PointKind::Star: return std::strong_ordering::equal;
    case PointKind::Pair:
      if (auto c = x.first() <=> y.first(); c != 0) return c;
      return x.second() <=> y.second();
    case PointKind::In1:
    case PointKind::In2: return x.first() <=> y.first();
    case PointKind::Coloured:
      if (auto c = x.colour() <=> y.colour(); c != 0) return c;
      return x.first() <=> y.first();
    case PointKind::Bag: return x.multiset() <=> y.multiset();
  }
  return std::strong_ordering::equal;
}

inline std::strong_ordering operator<=>(const Multiset& a, const Multiset& b) {
  std::size_t n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.entries_[i].first <=> b.entries_[i].first; c != 0) return c;
    if (auto c = a.entries_[i].second <=> b.entries_[i].second; c != 0) return c;
  }
  return a.entries_.size() <=> b.entries_.size();
}

inline std::string Multiset::str() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [p, m] : entries_) {
    if (!first) s += ", ";
    first = false;
    s += p.str();
    if (m != Mult(1)) s += ":" + m.str();
  }
  return s + "]";
}

inline std::string Point::str() const {
  switch (kind()) {
    case PointKind::Atom: return name();
    case PointKind::Star: return "*";
    case PointKind::Pair: return "(" + first().str() + "," + second().str() + ")";
    case PointKind::In1: return "inl " + first().str();
    case PointKind::In2: return "inr " + first().str();
    case PointKind::Bag: return multiset().str();
    case PointKind::Coloured: return "<" + std::to_string(colour()) + ">" + first().str();
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }
inline std::ostream& operator<<(std::ostream& os, const Multiset& m) { return os << m.str(); }

/// True iff `p` is well typed against `o`. Colours must lie in 1..N.
inline bool well_typed(const Point& p, const Object& o) {
  if (!p.valid()) return false;
  switch (o.kind()) {
    case ObjKind::Base:
      return p.kind() == PointKind::Atom && p.index() >= 0 &&
             p.index() < static_cast<int>(o.elements().size()) && o.elements()[p.index()] == p.name();
    case ObjKind::Unit: return p.kind() == PointKind::Star;
    case ObjKind::Top: return false;
    case ObjKind::Tensor:
    case ObjKind::Lolli:
      return p.kind() == PointKind::Pair && well_typed(p.first(), o.left()) && well_typed(p.second(), o.right());
    case ObjKind::With:
      if (p.kind() == PointKind::In1) return well_typed(p.first(), o.left());
      if (p.kind() == PointKind::In2) return well_typed(p.first(), o.right());
      return false;
    case ObjKind::Bang:
      if (p.kind() != PointKind::Bag) return false;
      for (const auto& e : p.multiset().entries())
        if (!well_typed(e.first, o.left())) return false;
      return true;
    case ObjKind::Box:
      return p.kind() == PointKind::Coloured && p.colour() >= 1 && p.colour() <= o.colours() &&
             well_typed(p.first(), o.left());
  }
  return false;
}

/// Sum of a finite list of multisets, plus `omega_tail` added countably often.
inline Multiset msum(const std::vector<Multiset>& parts, const Multiset* omega_tail = nullptr) {
  Multiset out;
  for (const auto& m : parts) out += m;
  if (omega_tail) out += omega_tail->scaled(Mult::omega());
  return out;
}

}  // namespace llrel
