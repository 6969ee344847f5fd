#include <gtest/gtest.h>

#include <random>

#include "llrel/colour.hpp"
#include "support.hpp"

using namespace llrel;
using namespace llrel::testing;

namespace {

Objects O;
const EvalCtx kCtx{Bounds{3, true, 3}};
constexpr int N = 2;

bool holds(const Rel& r, const std::string& x, const std::string& y) {
  return member(r, pt(x, r.dom()), pt(y, r.cod()), kCtx) == Verdict::True;
}

}  // namespace

TEST(BoxDig, MaxColourSplits) {
  auto d = Rel::box_dig(O.A, N);
  EXPECT_TRUE(holds(d, "<2>a", "<1><2>a"));
  EXPECT_TRUE(holds(d, "<1>a", "<1><1>a"));
  EXPECT_FALSE(holds(d, "<1>a", "<2><1>a"));
}

TEST(BoxCounit, OnlyColourOne) {
  auto e = Rel::box_counit(O.AB, N);
  EXPECT_TRUE(holds(e, "<1>a", "a"));
  EXPECT_FALSE(holds(e, "<2>a", "a"));
  for (const auto& p : points_of(O.AB, Bounds{})) {
    auto c1 = Point::coloured(1, p), c2 = Point::coloured(2, p);
    EXPECT_EQ(member(e, c1, p, kCtx), Verdict::True);
    EXPECT_EQ(member(e, c2, p, kCtx), Verdict::False);
  }
}

TEST(DistLaw, MaxCandidate) {
  auto l = Rel::dist_law(O.AB, N, DistKind::Max);
  EXPECT_TRUE(holds(l, "[<1>a, <2>b]", "<2>[a,b]"));
  EXPECT_TRUE(holds(l, "[]", "<1>[]"));
  EXPECT_FALSE(holds(l, "[]", "<2>[]"));
  EXPECT_TRUE(holds(l, "[<2>a:w]", "<2>[a:w]"));
}

TEST(DistLaw, UniformLaw) {
  auto l = Rel::dist_law(O.AB, N, DistKind::Uniform);
  EXPECT_FALSE(holds(l, "[<1>a, <2>b]", "<2>[a,b]"));
  EXPECT_TRUE(holds(l, "[<2>a, <2>b]", "<2>[a,b]"));
  EXPECT_TRUE(holds(l, "[]", "<1>[]"));
  EXPECT_TRUE(holds(l, "[]", "<2>[]"));
  EXPECT_TRUE(holds(l, "[<2>a:w]", "<2>[a:w]"));
}

TEST(Composite, Dereliction) {
  auto d = composite_der(O.A, N);
  EXPECT_TRUE(holds(d, "[<1>a]", "a"));
  EXPECT_FALSE(holds(d, "[<2>a]", "a"));
  // Oracle: der then box counit, composed by hand.
  for (const auto& w : points_of(d.dom(), Bounds{2, false, 2})) {
    bool want = w.multiset().entries().size() == 1 && w.multiset().entries()[0].second == Mult(1) &&
                w.multiset().entries()[0].first.colour() == 1;
    EXPECT_EQ(member(d, w, pt("a", O.A), kCtx) == Verdict::True, want) << w;
  }
}

TEST(Composite, DiggingSingleBlock) {
  auto d = composite_dig(O.A, N);
  EXPECT_TRUE(holds(d, "[<2>a]", "[<2>[<2>a]]"));
  EXPECT_FALSE(holds(d, "[<1>a]", "[<2>[<2>a]]"));
  auto dmax = composite_dig(O.A, N, DistKind::Max);
  EXPECT_TRUE(holds(dmax, "[<2>a]", "[<2>[<2>a]]"));
}

TEST(Box, FunctorialAndColourPreserving) {
  std::mt19937 rng(21);
  std::bernoulli_distribution keep(0.5);
  Bounds b{2, false, 2};
  for (int i = 0; i < 20; ++i) {
    std::vector<std::pair<Point, Point>> fp, gp;
    for (const auto& x : points_of(O.AB, b))
      for (const auto& y : points_of(O.C, b))
        if (keep(rng)) fp.emplace_back(x, y);
    for (const auto& x : points_of(O.C, b))
      for (const auto& y : points_of(O.XA, b))
        if (keep(rng)) gp.emplace_back(x, y);
    auto f = Rel::table(O.AB, O.C, fp), g = Rel::table(O.C, O.XA, gp);
    EXPECT_EQ(enumerate(Rel::box(Rel::compose(g, f), N), b).pairs,
              enumerate(Rel::compose(Rel::box(g, N), Rel::box(f, N)), b).pairs);
    auto bf = Rel::box(f, N);
    for (const auto& x : points_of(bf.dom(), b))
      for (const auto& y : points_of(bf.cod(), b)) {
        bool want = x.colour() == y.colour() && member(f, x.first(), y.first(), kCtx) == Verdict::True;
        EXPECT_EQ(member(bf, x, y, kCtx) == Verdict::True, want);
      }
  }
}

TEST(Exp, SeelyMapsTypecheck) {
  auto e = Exp::coloured(N);
  EXPECT_EQ(e.m2(O.A, O.X).cod(), e.obj(Object::with(O.A, O.X)));
  EXPECT_EQ(e.m2_inv(O.A, O.X).dom(), e.obj(Object::with(O.A, O.X)));
  EXPECT_EQ(e.dig(O.A).cod(), e.obj(e.obj(O.A)));
  EXPECT_EQ(e.m0().cod(), e.obj(Object::top()));
  EXPECT_TRUE(holds(e.m2(O.A, O.X), "([<2>a],[<1>x])", "[<2>(1,a), <1>(2,x)]"));
}
