#pragma once

#include <random>
#include <string>

#include "llrel/eval.hpp"
#include "llrel/syntax.hpp"

namespace llrel::testing {

inline Point pt(const std::string& text, const Object& o) { return parse_point(text, o); }

inline Multiset ms(const std::string& text, const Object& base) {
  return parse_point(text, Object::bang(base)).multiset();
}

/// Small named objects shared by several test files.
struct Objects {
  Object X = Object::base("X", {"x"});
  Object A = Object::base("A", {"a"});
  Object AB = Object::base("A", {"a", "b"});
  Object B = Object::base("B", {"b"});
  Object C = Object::base("C", {"b", "c"});
  Object XA = Object::base("XA", {"x", "a"});
};

}  // namespace llrel::testing

#include "llrel/runtree.hpp"

namespace llrel::testing {

/// Fixpoint body from rows written `(xs, as) -> b`.
inline FixTable fix_table(const Object& x, const Object& a, int colours, const std::vector<std::string>& rows) {
  FixTable t{x, a, colours, {}};
  for (const auto& r : rows) {
    TokenStream ts(r);
    auto k = parse_point(ts, t.dom());
    ts.expect("->");
    auto b = parse_point(ts, a);
    t.rows.push_back({k.first().multiset(), k.second().multiset(), b});
  }
  std::sort(t.rows.begin(), t.rows.end());
  t.rows.erase(std::unique(t.rows.begin(), t.rows.end()), t.rows.end());
  return t;
}

inline Label xl(const Object& x, const std::string& name, int colour = 0) {
  return {true, parse_point(name, x), colour};
}
inline Label al(const Object& a, const std::string& name, int colour = 0) {
  return {false, parse_point(name, a), colour};
}

}  // namespace llrel::testing
