#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "llrel/frontend.hpp"
#include "llrel/instances.hpp"
#include "support.hpp"

using namespace llrel;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kIdentity = "object o = {a, b}\n";

Verdict closed_member(const Model& m, const std::string& term, const std::string& point, FixMode mode) {
  InterpOptions o;
  o.mode = mode;
  Interpreter it(m, o);
  auto t = parse_term(term);
  auto r = it.closed(*t);
  auto ty = typecheck(*t, m);
  return member(r, Point::bag({}), parse_point(point, to_object(ty, m)), EvalCtx{o.eval});
}

}  // namespace

TEST(Parse, ModelRoundTripsByteIdentically) {
  for (auto name : {"f.ll", "g.ll"}) {
    auto text = slurp(std::string(LLREL_MODELS_DIR) + "/" + name);
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_EQ(print_model(parse_model(text)), text) << name;
  }
}

TEST(Parse, PrintingIsCanonical) {
  auto text = "# comment\nobject X={x}  object A = { a }\nrel f:!X*!A-o A={([x],[a])->a;([],[])->a}\n"
              "term t = (\\x:X. (Y ((f) x)))\nquery t ([x, x], a)\n";
  auto once = print_model(parse_model(text));
  EXPECT_EQ(print_model(parse_model(once)), once);
  EXPECT_NE(once.find("term t = \\x:X. Y (f x)"), std::string::npos) << once;
  EXPECT_NE(once.find("query t ([x:2],a)"), std::string::npos) << once;
}

TEST(Parse, YOfIdentity) {
  auto t = parse_term("Y (\\a:o. a)");
  ASSERT_EQ(t->kind, Term::Kind::Y);
  ASSERT_EQ(t->a->kind, Term::Kind::Lam);
  EXPECT_EQ(t->a->name, "a");
  EXPECT_EQ(t->a->type, TType::base("o"));
  EXPECT_EQ(t->a->a->kind, Term::Kind::Var);
  EXPECT_EQ(t->a->a->name, "a");
}

TEST(Parse, TermsRoundTrip) {
  for (auto s : {"\\x:o. x", "Y (\\a:o. a)", "f x y", "f (g x)", "(\\x:o => o. x) (\\y:o. y)", "\\p:o & o => o. p",
                 "\\h:(o => o) => o. h (\\z:o. z)", "Y f x"}) {
    auto t = parse_term(s);
    EXPECT_EQ(t->str(), s);
    EXPECT_TRUE(same_term(*parse_term(t->str()), *t)) << s;
  }
}

TEST(Parse, RelTable) {
  auto m = parse_model("object X = {x}\nobject A = {a}\nrel f : !X * !A -o A = { ([x],[a]) -> a }\n");
  auto r = m.rel("f");
  ASSERT_NE(r, nullptr);
  ASSERT_EQ(r->rows.size(), 1u);
  auto dom = r->type.left();
  EXPECT_EQ(r->rows[0].first, llrel::testing::pt("([x],[a])", dom));
  EXPECT_EQ(r->rows[0].second.str(), "a");
}

TEST(Parse, ErrorsCarryPositions) {
  auto expect_error = [](const std::string& text, int line, int column, const std::string& what) {
    try {
      parse_model(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line, line) << e.what();
      EXPECT_EQ(e.column, column) << e.what();
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
  };
  expect_error("object X = {x\n", 2, 1, "expected '}'");
  expect_error("object X = {x}\nobject X = {y}\n", 2, 8, "duplicate declaration");
  expect_error("object A = {a}\nterm t = \\x:A. h x\n", 2, 16, "unbound name 'h'");
  expect_error("object A = {a}\nrel f : !A -o A = { [b] -> a }\n", 2, 22, "not an element");
  expect_error("object A = {a}\nterm t = Y (\\x:A. \\y:A. x)\n", 2, 6, "type error");
  expect_error("object A = {a}\nquery nope a\n", 2, 7, "unbound name");
  expect_error("object A = {a}\nrel f : !A -o <>A = {}\n", 2, 17, "colours");
}

TEST(Typecheck, ConstantsGetCurriedTypes) {
  auto m = parse_model(slurp(std::string(LLREL_MODELS_DIR) + "/f.ll"));
  EXPECT_EQ(typecheck(*parse_term("f"), m).str(), "X => A => A");
  EXPECT_EQ(m.term("fix_f")->type.str(), "X => A");
  EXPECT_THROW(typecheck(*parse_term("f f"), m), TypeError);
}

TEST(Interpret, IdentityIsDereliction) {
  auto m = parse_model(kIdentity);
  for (auto a : {"a", "b"}) {
    EXPECT_EQ(closed_member(m, "\\x:o. x", std::string("([") + a + "]," + a + ")", FixMode::Classic), Verdict::True);
    EXPECT_EQ(closed_member(m, "\\x:o. x", std::string("([]," + std::string(a) + ")"), FixMode::Classic),
              Verdict::False);
    EXPECT_EQ(closed_member(m, "\\x:o. x", std::string("([") + a + ":2]," + a + ")", FixMode::Classic),
              Verdict::False);
  }
  EXPECT_EQ(closed_member(m, "\\x:o. x", "([a],b)", FixMode::Classic), Verdict::False);
}

TEST(Interpret, YOfIdentityPerMode) {
  auto m = parse_model(kIdentity);
  auto fix = FixTable{Object::base("o", {"a", "b"}), Object::base("o", {"a", "b"}), 0, {}};
  for (auto a : {"a", "b"}) {
    fix.rows = {{Multiset(), Multiset{parse_point(a, fix.A)}, parse_point(a, fix.A)}};
    EXPECT_TRUE(kleene_lfp(fix, 3).empty());
    EXPECT_EQ(closed_member(m, "Y (\\a:o. a)", a, FixMode::Inductive), Verdict::False);
    EXPECT_EQ(closed_member(m, "Y (\\a:o. a)", a, FixMode::Classic), Verdict::False);
    EXPECT_EQ(closed_member(m, "Y (\\a:o. a)", a, FixMode::Coinductive), Verdict::True);
  }
}

TEST(Interpret, ExampleQueries) {
  auto g = parse_model(slurp(std::string(LLREL_MODELS_DIR) + "/g.ll"));
  for (auto mode : {FixMode::Classic, FixMode::Inductive, FixMode::Coinductive}) {
    InterpOptions o;
    o.mode = mode;
    Interpreter it(g, o);
    for (auto* q : g.all<QueryDecl>())
      EXPECT_EQ(it.query(q->target, q->point), mode == FixMode::Coinductive ? Verdict::True : Verdict::False)
          << to_string(mode) << " " << q->point.str();
  }
}

TEST(Interpret, ParityNeedsColours) {
  auto m = parse_model(kIdentity);
  InterpOptions o;
  o.mode = FixMode::Parity;
  EXPECT_THROW(Interpreter(m, o), TypeError);
}

TEST(Interpret, BetaAndEtaAgree) {
  auto m = parse_model(slurp(std::string(LLREL_MODELS_DIR) + "/f.ll"));
  InterpOptions o;
  Interpreter it(m, o);
  auto direct = it.closed(*parse_term("f"));
  auto eta = it.closed(*parse_term("\\x:X. \\z:A. f x z"));
  auto obj = to_object(typecheck(*parse_term("f"), m), m);
  int confirmed = 0;
  for (const auto& p : points_of(obj, Bounds{2, false, 3})) {
    auto u = member(direct, Point::bag({}), p, EvalCtx{o.eval});
    auto v = member(eta, Point::bag({}), p, EvalCtx{o.eval});
    ASSERT_NE(u, Verdict::BoundLimited);
    if (u == Verdict::True) {
      EXPECT_EQ(v, Verdict::True) << p.str();
      ++confirmed;
    } else {
      EXPECT_NE(v, Verdict::True) << p.str();
    }
  }
  EXPECT_EQ(confirmed, 2);
}

/// Closed-term fixpoints agree with the table engine on first-order bodies.
TEST(Interpret, FirstOrderFixpointsMatchEngine) {
  InstanceGen gen(11);
  InstanceParams p{2, 2, 3, 0, 2, 2, 0.0};
  int compared = 0;
  for (int i = 0; i < 20; ++i) {
    auto t = gen.next(p);
    auto m = fix_model(t, "f");
    for (auto mode : {FixMode::Classic, FixMode::Inductive, FixMode::Coinductive}) {
      InterpOptions o;
      o.mode = mode;
      Interpreter it(m, o);
      auto r = it.closed(*parse_term("\\x:X. Y (f x)"));
      auto e = fix_enumerate(t, mode, FixBounds{{2, false, 3}, 3});
      std::set<std::pair<Multiset, Point>> want(e.pairs.begin(), e.pairs.end());
      for (const auto& w : enum_multisets(t.X, 2, false))
        for (const auto& a : points_of(t.A, {})) {
          auto v = member(r, Point::bag({}), Point::pair(Point::bag(w), a), EvalCtx{o.eval});
          ASSERT_NE(v, Verdict::BoundLimited);
          EXPECT_EQ(v == Verdict::True, want.count({w, a}) > 0) << to_string(mode) << " " << i << " " << w << " " << a;
          ++compared;
        }
    }
  }
  EXPECT_GT(compared, 300);
}
