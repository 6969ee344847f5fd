#include <gtest/gtest.h>

#include <chrono>

#include "llrel/lawcheck.hpp"
#include "support.hpp"

using namespace llrel;
using namespace llrel::testing;

namespace {
const Objects O;
FixTable example_f() { return fix_table(O.X, O.A, 0, {"([],[]) -> a", "([x],[a]) -> a"}); }
}  // namespace

TEST(Conway, ExampleFFixpointProperty) {
  auto f = example_f();
  auto r = check_fix_property(f, FixMode::Classic, fix_oracle(f, FixMode::Classic, 3), ConwayBounds{});
  EXPECT_EQ(r.status, CheckStatus::Pass) << r.describe();
}

TEST(Conway, RemovedFixpointPairIsDetected) {
  auto f = example_f();
  auto y = fix_oracle(f, FixMode::Classic, 3);
  auto dropped = Multiset::singleton(pt("x", O.X), Mult(2));
  KleisliOracle bad = [&](const Multiset& w, const Point& a) { return w == dropped ? Verdict::False : y(w, a); };
  auto r = check_fix_property(f, FixMode::Classic, bad, ConwayBounds{});
  ASSERT_EQ(r.status, CheckStatus::Fail);
  EXPECT_EQ(r.counterexample->first, Point::bag(dropped));
  EXPECT_EQ(r.side, "right");
}

TEST(Conway, InstancesAreDeterministic) {
  auto p = conway_params(FixMode::Classic, 4);
  auto c1 = conway_instance(4, p), c2 = conway_instance(4, p);
  EXPECT_EQ(c1.f.rows, c2.f.rows);
  EXPECT_EQ(c1.diag.rows, c2.diag.rows);
  EXPECT_EQ(c1.nat_g.rows, c2.nat_g.rows);
}

TEST(Conway, NoRowsMeansEmptyFixpoints) {
  InstanceParams p;
  p.rows = 0;
  auto c = conway_instance(1, p);
  EXPECT_TRUE(c.f.rows.empty());
  for (auto ax : kConwayAxioms) EXPECT_EQ(check_conway(c, FixMode::Classic, ax).status, CheckStatus::Pass);
}

TEST(Conway, NaturalityErasesFreeLeaves) {
  auto Z = Object::base("Z", {"z"});
  Morph f{Z, O.A, O.A, 0, {{ms("[z:2]", Z), Multiset(), pt("a", O.A)}}};
  Morph g{O.X, O.A, Z, 0, {{Multiset(), Multiset(), pt("z", Z)}, {ms("[x]", O.X), Multiset(), pt("z", Z)}}};
  auto r = check_naturality(f, g, FixMode::Classic, ConwayBounds{});
  EXPECT_EQ(r.status, CheckStatus::Pass) << r.describe();
}

class ConwayFinitary : public ::testing::TestWithParam<FixMode> {};

TEST_P(ConwayFinitary, AllLawsOnRandomInstances) {
  auto rep = conway_suite(GetParam(), 40, ConwayBounds{});
  for (const auto& e : rep.entries) EXPECT_EQ(e.result.status, CheckStatus::Pass) << e.result.describe();
}

INSTANTIATE_TEST_SUITE_P(Modes, ConwayFinitary, ::testing::Values(FixMode::Classic, FixMode::Inductive));

class ConwayInfinitary : public ::testing::TestWithParam<FixMode> {};

TEST_P(ConwayInfinitary, NoDefinitiveFailure) {
  auto rep = conway_suite(GetParam(), 30, ConwayBounds{});
  for (const auto& e : rep.entries) EXPECT_NE(e.result.status, CheckStatus::Fail) << e.result.describe();
  std::cout << rep.count(CheckStatus::BoundLimited) << " of " << rep.entries.size() << " bound-limited\n";
}

INSTANTIATE_TEST_SUITE_P(Modes, ConwayInfinitary, ::testing::Values(FixMode::Coinductive, FixMode::Parity));

TEST(Junit, ReportsFailuresAndSkips) {
  SuiteReport rep{"demo", {}};
  CheckResult ok{"a", CheckStatus::Pass, {}, "", 1};
  CheckResult bad{"b<1>", CheckStatus::Fail, std::make_pair(Point::star(), Point::star()), "left", 1};
  CheckResult lim{"c", CheckStatus::BoundLimited, {}, "", 1};
  rep.entries = {{ok, 0.1}, {bad, 0.2}, {lim, 0.3}};
  auto xml = to_junit({rep});
  EXPECT_NE(xml.find("failures=\"1\""), std::string::npos);
  EXPECT_NE(xml.find("skipped=\"1\""), std::string::npos);
  EXPECT_NE(xml.find("b&lt;1&gt;"), std::string::npos);
  EXPECT_FALSE(rep.ok());
}
