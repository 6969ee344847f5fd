#include <gtest/gtest.h>

#include "llrel/instances.hpp"
#include "llrel/kleisli.hpp"
#include "support.hpp"

using namespace llrel;
using namespace llrel::testing;

namespace {

const Objects O;

bool in_table(const FixTable& t, const Point& k, const Point& b) {
  for (const auto& r : t.rows)
    if (Point::pair(Point::bag(r.xs), Point::bag(r.as)) == k && r.b == b) return true;
  return false;
}

/// Definitive answers of `expr` must agree with the table; returns how
/// many were definitive.
int agree(const Rel& expr, const FixTable& t, Bounds probe, Bounds eval) {
  int definitive = 0;
  EvalCtx ctx{eval};
  for (const auto& k : points_of(expr.dom(), probe))
    for (const auto& b : points_of(expr.cod(), probe)) {
      auto v = member(expr, k, b, ctx);
      if (v == Verdict::BoundLimited) continue;
      ++definitive;
      EXPECT_EQ(v == Verdict::True, in_table(t, k, b)) << k.str() << " -> " << b.str();
    }
  return definitive;
}

}  // namespace

TEST(MultisetOps, MinusAndSubsets) {
  auto xy = Object::base("X", {"x", "y"});
  auto m = ms("[x:2,y]", xy);
  EXPECT_EQ(sub_multisets(m).size(), 6u);
  EXPECT_EQ(ms_minus(m, ms("[x]", xy)), ms("[x,y]", xy));
  EXPECT_THROW(ms_minus(ms("[x]", O.X), ms("[x:2]", O.X)), Error);
}

TEST(MultisetOps, BumpAndUnbump) {
  auto bx = Object::box(O.X, 3);
  auto v = ms("[<1>x,<3>x]", bx);
  EXPECT_EQ(bump(v, 2), ms("[<2>x,<3>x]", bx));
  auto back = unbump(ms("[<2>x,<3>x]", bx), 2);
  EXPECT_EQ(back.size(), 2u);  // <1>x or <2>x under the bump
  for (const auto& u : back) EXPECT_EQ(bump(u, 2), ms("[<2>x,<3>x]", bx));
  EXPECT_TRUE(unbump(ms("[<1>x]", bx), 2).empty());
}

TEST(Star, SingletonUnfolding) {
  Morph f{O.X, O.B, O.A, 0, {{Multiset(), ms("[b]", O.B), pt("a", O.A)}}};
  Morph g{O.X, O.A, O.B, 0, {{Multiset(), ms("[a]", O.A), pt("b", O.B)}}};
  auto s = star(f.rel(), g.rel());
  EvalCtx ctx{Bounds{3, false, 3}};
  auto key = [&](const std::string& u) { return Point::pair(Point::bag({}), Point::bag(ms(u, O.A))); };
  EXPECT_EQ(member(s, key("[a]"), pt("a", O.A), ctx), Verdict::True);
  EXPECT_TRUE(in_table(tabulate_star(f, g), key("[a]"), pt("a", O.A)));
  Morph none{O.X, O.A, O.B, 0, {}};
  auto s0 = star(f.rel(), none.rel());
  EXPECT_EQ(member(s0, key("[]"), pt("a", O.A), ctx), Verdict::False);
  EXPECT_EQ(member(s0, key("[a]"), pt("a", O.A), ctx), Verdict::False);
  EXPECT_TRUE(tabulate_star(f, none).rows.empty());
}

TEST(Star, RejectsMismatchedTypes) {
  Morph f{O.X, O.B, O.A, 0, {}};
  EXPECT_THROW(star(f.rel(), f.rel()), TypeError);
  EXPECT_THROW(tabulate_star(f, f), TypeError);
}

TEST(Tabulation, StarMatchesExpression) {
  InstanceGen gen(3);
  int definitive = 0;
  for (int i = 0; i < 30; ++i) {
    InstanceParams p;
    p.colours = i % 3 == 2 ? 2 : 0;
    p.rows = 2;
    Morph f{O.X, O.B, O.A, p.colours, gen.rows(O.X, O.B, O.A, p)};
    Morph g{O.X, O.A, O.B, p.colours, gen.rows(O.X, O.A, O.B, p)};
    definitive += agree(star(f.rel(), g.rel(), f.e()), tabulate_star(f, g), Bounds{2, false, 3}, Bounds{4, false, 4});
  }
  EXPECT_GT(definitive, 100);
}

TEST(Tabulation, NaturalityBodyMatchesExpression) {
  InstanceGen gen(5);
  auto Z = Object::base("Z", {"z", "y"});
  int definitive = 0;
  for (int i = 0; i < 30; ++i) {
    InstanceParams p;
    p.colours = i % 3 == 2 ? 2 : 0;
    p.rows = 2;
    Morph f{Z, O.A, O.A, p.colours, gen.rows(Z, O.A, O.A, p)};
    InstanceParams pg = p;
    pg.max_children = 0;
    Morph g{O.X, O.A, Z, p.colours, gen.rows(O.X, O.A, Z, pg)};
    definitive += agree(naturality_body(f.rel(), g.rel_unary(), f.e()), tabulate_naturality_body(f, g),
                        Bounds{2, false, 3}, Bounds{4, false, 4});
  }
  EXPECT_GT(definitive, 100);
}

TEST(Tabulation, DiagonalBodiesMatchExpressions) {
  InstanceGen gen(9);
  int definitive = 0;
  for (int i = 0; i < 30; ++i) {
    InstanceParams p;
    p.colours = i % 3 == 2 ? 2 : 0;
    p.rows = 2;
    auto two = gen.rows(O.X, O.A, O.A, p);
    auto one = gen.rows(O.X, O.A, O.A, p);
    TriMorph f{O.X, O.A, p.colours, {}};
    for (std::size_t k = 0; k < std::min(two.size(), one.size()); ++k)
      f.rows.push_back({two[k].xs, two[k].as, one[k].as, two[k].b});
    definitive += agree(diagonal_body(f.rel(), f.e()), tabulate_diagonal_body(f), Bounds{2, false, 3},
                        Bounds{4, false, 4});
    definitive += agree(diagonal_inner(f.rel(), f.e()), tabulate_diagonal_inner(f), Bounds{2, false, 3},
                        Bounds{4, false, 4});
  }
  EXPECT_GT(definitive, 100);
}

TEST(Unfold, OneStepOfExampleF) {
  FixTable f = fix_table(O.X, O.A, 0, {"([],[]) -> a", "([x],[a]) -> a"});
  auto y = [&](const Multiset& w, const Point& a) { return fix_member(f, FixMode::Classic, w, a, 3).verdict; };
  for (int n = 0; n <= 3; ++n) {
    auto w = n ? Multiset::singleton(pt("x", O.X), Mult(n)) : Multiset();
    EXPECT_EQ(unfold(Morph::of(f), y, w, pt("a", O.A)), Verdict::True) << n;
  }
  auto never = [](const Multiset&, const Point&) { return Verdict::False; };
  EXPECT_EQ(unfold(Morph::of(f), never, ms("[x]", O.X), pt("a", O.A)), Verdict::False);
  EXPECT_EQ(unfold(Morph::of(f), never, Multiset(), pt("a", O.A)), Verdict::True);
}
