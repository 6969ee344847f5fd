#include <gtest/gtest.h>

#include <chrono>

#include "llrel/fixpoint.hpp"
#include "llrel/instances.hpp"
#include "support.hpp"

using namespace llrel;
using namespace llrel::testing;

namespace {

const Objects O;

FixTable example_f() { return fix_table(O.X, O.A, 0, {"([],[]) -> a", "([x],[a]) -> a"}); }
FixTable example_g() { return fix_table(O.X, O.A, 0, {"([],[a]) -> a", "([x],[a]) -> a"}); }
FixTable example_g_coloured(int c) {
  auto k = std::to_string(c);
  return fix_table(O.X, O.A, 2, {"([],[<" + k + ">a]) -> a", "([<" + k + ">x],[<" + k + ">a]) -> a"});
}

Multiset m_n(int n) { return n == 0 ? Multiset() : Multiset::singleton(pt("x", O.X), Mult(n)); }

AcceptMode accept_of(FixMode m) {
  switch (m) {
    case FixMode::Classic: return AcceptMode::Finite;
    case FixMode::Inductive: return AcceptMode::NoInfiniteBranch;
    case FixMode::Parity: return AcceptMode::Parity;
    default: return AcceptMode::Parity;
  }
}

/// A positive verdict must come with a run-tree that checks out on its own.
void expect_witness(const FixTable& f, FixMode mode, const Multiset& w, const Point& a, const FixVerdict& v) {
  ASSERT_EQ(v.verdict, Verdict::True);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(validate_regular(f, a, *v.witness)) << to_dot(*v.witness);
  EXPECT_EQ(leaves(*v.witness), w) << to_dot(*v.witness);
  if (mode != FixMode::Coinductive) EXPECT_TRUE(accept(*v.witness, accept_of(mode))) << to_dot(*v.witness);
}

std::set<std::pair<Multiset, Point>> as_set(const std::vector<std::pair<Multiset, Point>>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST(FixMode, ParsesNamesAndAliases) {
  EXPECT_EQ(parse_mode("classic"), FixMode::Classic);
  EXPECT_EQ(parse_mode("inductive"), FixMode::Inductive);
  EXPECT_EQ(parse_mode("coind"), FixMode::Coinductive);
  EXPECT_EQ(parse_mode("parity"), FixMode::Parity);
  EXPECT_THROW(parse_mode("lfp"), Error);
}

TEST(Classic, ExampleFIsTheCombFamily) {
  auto t0 = std::chrono::steady_clock::now();
  FixBounds b;
  b.leaves = {5, false, 3};
  auto e = fix_enumerate(example_f(), FixMode::Classic, b);
  std::set<std::pair<Multiset, Point>> expect;
  for (int n = 0; n <= 5; ++n) expect.insert({m_n(n), pt("a", O.A)});
  EXPECT_EQ(as_set(e.pairs), expect);
  EXPECT_TRUE(e.bound_limited.empty());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}

TEST(Classic, MemberWithWitness) {
  auto f = example_f();
  auto v = fix_member(f, FixMode::Classic, m_n(3), pt("a", O.A), 3);
  expect_witness(f, FixMode::Classic, m_n(3), pt("a", O.A), v);
  EXPECT_EQ(fix_member(f, FixMode::Classic, ms("[x:w]", O.X), pt("a", O.A), 3).verdict, Verdict::False);
}

TEST(Inductive, ExampleGIsEmpty) {
  FixBounds b;
  b.leaves = {4, true, 3};
  EXPECT_TRUE(fix_enumerate(example_g(), FixMode::Inductive, b).pairs.empty());
  EXPECT_TRUE(kleene_lfp(example_g(), 6).empty());
  for (int n = 0; n <= 5; ++n)
    EXPECT_EQ(fix_member(example_g(), FixMode::Inductive, m_n(n), pt("a", O.A), 4).verdict, Verdict::False);
}

TEST(Inductive, InfiniteBranchingIsWellFounded) {
  // a -> w copies of b, b is a leaf with one x: the tree is infinite but
  // has no infinite branch.
  auto f = fix_table(O.X, O.AB, 0, {"([],[b:w]) -> a", "([x],[]) -> b"});
  auto w = ms("[x:w]", O.X);
  auto v = fix_member(f, FixMode::Inductive, w, pt("a", O.AB), 2);
  expect_witness(f, FixMode::Inductive, w, pt("a", O.AB), v);
  EXPECT_EQ(fix_member(f, FixMode::Classic, w, pt("a", O.AB), 2).verdict, Verdict::False);
  EXPECT_EQ(fix_member(f, FixMode::Inductive, ms("[x:3]", O.X), pt("a", O.AB), 2).verdict, Verdict::False);
}

TEST(Coinductive, ExampleGContainsOmegaAndCombs) {
  auto t0 = std::chrono::steady_clock::now();
  auto f = example_g();
  auto w = ms("[x:w]", O.X);
  expect_witness(f, FixMode::Coinductive, w, pt("a", O.A), fix_member(f, FixMode::Coinductive, w, pt("a", O.A), 4));
  for (int n = 0; n <= 5; ++n)
    expect_witness(f, FixMode::Coinductive, m_n(n), pt("a", O.A),
                   fix_member(f, FixMode::Coinductive, m_n(n), pt("a", O.A), 4));
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}

TEST(Coinductive, SelfLoopWithoutLeavesHasNoPhantomLeaves) {
  auto f = fix_table(O.X, O.A, 0, {"([],[a]) -> a"});
  expect_witness(f, FixMode::Coinductive, Multiset(), pt("a", O.A),
                 fix_member(f, FixMode::Coinductive, Multiset(), pt("a", O.A), 2));
  // x never occurs in a row, so it can never be a leaf.
  EXPECT_EQ(fix_member(f, FixMode::Coinductive, ms("[x]", O.X), pt("a", O.A), 2).verdict, Verdict::False);
}

TEST(Parity, EvenColourAcceptsOddRejects) {
  auto f2 = example_g_coloured(2);
  auto w2 = ms("[<2>x:w]", Object::box(O.X, 2));
  expect_witness(f2, FixMode::Parity, w2, pt("a", O.A), fix_member(f2, FixMode::Parity, w2, pt("a", O.A), 4));
  auto f1 = example_g_coloured(1);
  auto w1 = ms("[<1>x:w]", Object::box(O.X, 2));
  EXPECT_EQ(fix_member(f1, FixMode::Parity, w1, pt("a", O.A), 4).verdict, Verdict::False);
  EXPECT_EQ(fix_member(f1, FixMode::Coinductive, w1, pt("a", O.A), 4).verdict, Verdict::True);
}

TEST(Parity, NeedsColours) {
  EXPECT_THROW(fix_member(example_g(), FixMode::Parity, Multiset(), pt("a", O.A), 2), Error);
}

TEST(Kleene, EmptyWithoutLeafRows) {
  auto f = fix_table(O.X, O.A, 0, {"([x],[a]) -> a", "([x,x],[a,a]) -> a"});
  EXPECT_TRUE(kleene_lfp(f, 5).empty());
  EXPECT_TRUE(fix_enumerate(f, FixMode::Classic).pairs.empty());
}

TEST(Kleene, ExampleF) {
  std::set<std::pair<Multiset, Point>> expect;
  for (int n = 0; n <= 4; ++n) expect.insert({m_n(n), pt("a", O.A)});
  EXPECT_EQ(kleene_lfp(example_f(), 4), expect);
}

TEST(Property, ClassicMatchesKleene) {
  InstanceGen gen(1);
  InstanceParams p{3, 3, 4, 0, 2, 2, 0.0};
  for (int i = 0; i < 60; ++i) {
    auto f = gen.next(p);
    FixBounds b;
    b.leaves = {4, false, 3};
    EXPECT_EQ(as_set(fix_enumerate(f, FixMode::Classic, b).pairs), kleene_lfp(f, 4)) << "instance " << i;
  }
}

TEST(Property, InductiveWithinCoinductiveAndWitnessesCheck) {
  InstanceGen gen(2);
  InstanceParams p{2, 2, 3, 0, 2, 2, 0.3};
  for (int i = 0; i < 40; ++i) {
    auto f = gen.next(p);
    for (const auto& w : enum_multisets(f.X, 2, true))
      for (const auto& a : points_of(f.A, {})) {
        auto ind = fix_member(f, FixMode::Inductive, w, a, 2);
        auto co = fix_member(f, FixMode::Coinductive, w, a, 2);
        if (ind.verdict == Verdict::True) {
          expect_witness(f, FixMode::Inductive, w, a, ind);
          EXPECT_NE(co.verdict, Verdict::False) << "instance " << i << " " << w << " " << a;
        }
        if (co.verdict == Verdict::True) expect_witness(f, FixMode::Coinductive, w, a, co);
      }
  }
}

TEST(Property, Monotone) {
  InstanceGen gen(3);
  InstanceParams p{2, 2, 3, 0, 2, 2, 0.2};
  for (int i = 0; i < 30; ++i) {
    auto f = gen.next(p);
    auto g = f;
    auto extra = gen.next(p);
    g.rows.insert(g.rows.end(), extra.rows.begin(), extra.rows.end());
    std::sort(g.rows.begin(), g.rows.end());
    g.rows.erase(std::unique(g.rows.begin(), g.rows.end()), g.rows.end());
    for (auto mode : {FixMode::Classic, FixMode::Inductive, FixMode::Coinductive}) {
      FixBounds b;
      b.leaves = {2, mode != FixMode::Classic, 3};
      b.witness = 2;
      auto small = as_set(fix_enumerate(f, mode, b).pairs);
      auto big = fix_enumerate(g, mode, b);
      auto big_all = as_set(big.pairs);
      auto lim = as_set(big.bound_limited);
      for (const auto& p : small)
        EXPECT_TRUE(big_all.count(p) || lim.count(p)) << to_string(mode) << " instance " << i << " " << p.first;
    }
  }
}

TEST(Property, EnumerateAgreesWithMember) {
  InstanceGen gen(4);
  InstanceParams p{2, 2, 3, 2, 1, 2, 0.2};
  for (int i = 0; i < 20; ++i) {
    auto f = gen.next(p);
    for (auto mode : {FixMode::Inductive, FixMode::Coinductive, FixMode::Parity}) {
      FixBounds b;
      b.leaves = {2, true, 3};
      b.witness = 2;
      auto e = fix_enumerate(f, mode, b);
      auto yes = as_set(e.pairs);
      auto lim = as_set(e.bound_limited);
      for (const auto& w : enum_multisets(Object::box(f.X, 2), 2, true))
        for (const auto& a : points_of(f.A, {})) {
          auto v = fix_member(f, mode, w, a, 2).verdict;
          if (v == Verdict::True) EXPECT_TRUE(yes.count({w, a})) << to_string(mode) << " " << i << " " << w;
          if (v == Verdict::False) EXPECT_FALSE(yes.count({w, a}) || lim.count({w, a})) << to_string(mode) << " " << i << " " << w;
        }
    }
  }
}
