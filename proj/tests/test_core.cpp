#include <gtest/gtest.h>

#include <random>

#include "llrel/lasso.hpp"
#include "support.hpp"

using namespace llrel;
using namespace llrel::testing;

namespace {

Objects O;

Multiset m(const std::string& s, const Object& base) { return ms(s, base); }

/// Counts letters of the unrolled word over a long prefix; a letter has
/// infinite multiplicity exactly when its count keeps growing.
Multiset unrolled_counts(const LassoWord& w) {
  std::map<Point, std::pair<int, int>> counts;
  const std::size_t short_len = 64, long_len = 128;
  for (std::size_t i = 0; i < long_len; ++i) {
    if (w.finite() && i >= w.prefix.size()) break;
    auto& c = counts[w.at(i)];
    if (i < short_len) ++c.first;
    ++c.second;
  }
  std::vector<Multiset::Entry> es;
  for (auto& [p, c] : counts)
    es.emplace_back(p, c.first == c.second ? Mult(static_cast<std::uint32_t>(c.first)) : Mult::omega());
  return Multiset(es);
}

std::vector<Point> letters(const Object& o) { return points_of(o, Bounds{}); }

LassoWord random_word(std::mt19937& rng, const std::vector<Point>& alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, static_cast<int>(alphabet.size()) - 1);
  LassoWord w;
  for (int i = len(rng); i > 0; --i) w.prefix.push_back(alphabet[letter(rng)]);
  for (int i = len(rng); i > 0; --i) w.cycle.push_back(alphabet[letter(rng)]);
  return w;
}

}  // namespace

TEST(Msum, FinitePointwiseSum) {
  EXPECT_EQ(msum({m("[a,a]", O.A), m("[a]", O.A)}), m("[a:3]", O.A));
}

TEST(Msum, OmegaAbsorbsFiniteAddition) {
  EXPECT_EQ(msum({m("[x:w]", O.X), m("[x]", O.X)}), m("[x:w]", O.X));
}

TEST(Msum, OmegaTailAddedCountablyOften) {
  auto tail = m("[x]", O.X);
  EXPECT_EQ(msum({}, &tail), m("[x:w]", O.X));
}

TEST(Msum, CommutativeAssociativeWithUnit) {
  std::mt19937 rng(7);
  auto all = enum_multisets(O.XA, 3, true);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int i = 0; i < 200; ++i) {
    auto a = all[pick(rng)], b = all[pick(rng)], c = all[pick(rng)];
    EXPECT_EQ(msum({a, b, c}), msum({c, a, b}));
    EXPECT_EQ(msum({msum({a, b}), c}), msum({a, msum({b, c})}));
    EXPECT_EQ(msum({a, Multiset{}}), a);
  }
}

TEST(Lasso, FiniteWordCount) {
  auto x = pt("x", O.XA), a = pt("a", O.XA);
  EXPECT_EQ(word_to_multiset({{x, a, x}, {}}), m("[x,x,a]", O.XA));
}

TEST(Lasso, CycleGivesOmega) {
  auto x = pt("x", O.X);
  EXPECT_EQ(word_to_multiset({{}, {x}}), m("[x:w]", O.X));
}

TEST(Lasso, BothCycleLettersRecur) {
  auto x = pt("x", O.XA), a = pt("a", O.XA);
  EXPECT_EQ(word_to_multiset({{a}, {x, a}}), m("[a:w, x:w]", O.XA));
}

TEST(Lasso, WordEquivExamples) {
  auto a = pt("a", O.AB), b = pt("b", O.AB);
  EXPECT_TRUE(word_equiv({{a, a, b}, {}}, {{a, b, a}, {}}));
  auto x = pt("x", O.X);
  EXPECT_TRUE(word_equiv({{}, {x}}, {{}, {x, x}}));
  EXPECT_FALSE(word_equiv({{x}, {}}, {{}, {x}}));
  EXPECT_NE(unrolled_counts({{x}, {}}), unrolled_counts({{}, {x}}));
}

TEST(Lasso, AgreesWithUnrolledCounting) {
  std::mt19937 rng(11);
  auto alphabet = letters(O.XA);
  for (int i = 0; i < 500; ++i) {
    auto w = random_word(rng, alphabet, 4);
    EXPECT_EQ(word_to_multiset(w), unrolled_counts(w));
  }
}

TEST(Lasso, InvariantUnderRotationAndUnrolling) {
  std::mt19937 rng(12);
  auto alphabet = letters(O.XA);
  for (int i = 0; i < 300; ++i) {
    auto w = random_word(rng, alphabet, 4);
    if (w.finite()) continue;
    auto rotated = w;
    std::rotate(rotated.cycle.begin(), rotated.cycle.begin() + 1, rotated.cycle.end());
    auto unrolled = w;
    unrolled.cycle.insert(unrolled.cycle.end(), w.cycle.begin(), w.cycle.end());
    EXPECT_EQ(word_to_multiset(w), word_to_multiset(rotated));
    EXPECT_EQ(word_to_multiset(w), word_to_multiset(unrolled));
  }
}

TEST(Lasso, WordEquivIsAnEquivalence) {
  std::mt19937 rng(13);
  auto alphabet = letters(O.XA);
  for (int i = 0; i < 300; ++i) {
    auto u = random_word(rng, alphabet, 2), v = random_word(rng, alphabet, 2), w = random_word(rng, alphabet, 2);
    EXPECT_TRUE(word_equiv(u, u));
    EXPECT_EQ(word_equiv(u, v), word_equiv(v, u));
    if (word_equiv(u, v) && word_equiv(v, w)) EXPECT_TRUE(word_equiv(u, w));
  }
}

TEST(Lasso, WordEquivMatchesMultisetsExhaustively) {
  for (const auto& base : {O.A, O.AB}) {
    auto words = all_lassos(letters(base), 3, 3);
    for (const auto& u : words)
      for (const auto& v : words)
        ASSERT_EQ(word_equiv(u, v), word_to_multiset(u) == word_to_multiset(v))
            << word_to_multiset(u) << " vs " << word_to_multiset(v);
  }
}

TEST(Lasso, MultisetRoundTrip) {
  for (const auto& w : enum_multisets(O.XA, 3, true)) EXPECT_EQ(word_to_multiset(multiset_to_word(w)), w);
}

TEST(EnumMultisets, Exhaustive) {
  auto got = enum_multisets(O.A, 2, false);
  std::vector<Multiset> want = {m("[]", O.A), m("[a]", O.A), m("[a:2]", O.A)};
  EXPECT_EQ(got, want);
}

TEST(EnumMultisets, OmegaRaisingNeedsPresentEntries) {
  EXPECT_EQ(enum_multisets(O.A, 0, true), std::vector<Multiset>{Multiset{}});
}

TEST(EnumMultisets, SmallOmegaCase) {
  auto got = enum_multisets(O.XA, 1, true);
  std::vector<Multiset> want = {m("[]", O.XA), m("[x]", O.XA), m("[a]", O.XA), m("[x:w]", O.XA), m("[a:w]", O.XA)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
  // Finite multisets of size <= 1 over 2 letters, plus one raised variant per nonempty one.
  EXPECT_EQ(got.size(), 3u + 2u);
}

TEST(EnumMultisets, CardinalityMatchesBinomial) {
  auto binom = [](int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    auto base = Object::base("E", names);
    for (int k = 0; k <= 4; ++k) {
      // Multisets of size <= k over n letters = multisets of size exactly k over n+1 letters.
      EXPECT_EQ(static_cast<long>(enum_multisets(base, k, false).size()), binom(n + k, k));
    }
  }
}

TEST(EnumMultisets, RejectsDeepNesting) {
  auto deep = Object::bang(Object::bang(Object::bang(Object::bang(O.A))));
  EXPECT_THROW(points_of(deep, Bounds{2, false, 3}), Error);
}

TEST(Objects, BaseElementsDistinct) { EXPECT_THROW(Object::base("D", {"a", "a"}), Error); }

TEST(Objects, BoxNeedsAColour) { EXPECT_THROW(Object::box(O.A, 0), Error); }

TEST(Points, WellTypedShapes) {
  auto t = Object::tensor(Object::bang(O.X), Object::with(O.A, Object::unit()));
  EXPECT_TRUE(well_typed(pt("([x:2],inl a)", t), t));
  EXPECT_TRUE(well_typed(pt("([],(2,*))", t), t));
  EXPECT_FALSE(well_typed(pt("a", O.A), O.X));
  EXPECT_THROW(pt("a", Object::top()), ParseError);
}

TEST(Points, CanonicalPrinting) {
  auto bx = Object::box(O.XA, 2);
  auto t = Object::bang(bx);
  EXPECT_EQ(pt("[<2>a, <1>x:3, <1>x, <2>a:w]", t).str(), "[<1>x:4, <2>a:w]");
  auto w = Object::with(O.A, O.X);
  EXPECT_EQ(pt("(1,a)", w).str(), "inl a");
}

TEST(Points, ParseErrorsCarryPosition) {
  try {
    pt("[x,\n  q]", Object::bang(O.X));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
    EXPECT_EQ(e.column, 3);
  }
}

TEST(Points, PrintParseRoundTrip) {
  auto t = Object::tensor(Object::bang(O.XA), Object::with(O.AB, Object::bang(O.X)));
  for (const auto& p : points_of(t, Bounds{2, true, 2})) EXPECT_EQ(pt(p.str(), t), p);
}
