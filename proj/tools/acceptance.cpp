// Runs the acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "llrel/automaton.hpp"
#include "llrel/instances.hpp"
#include "llrel/lasso.hpp"
#include "llrel/lawcheck.hpp"
#include "llrel/syntax.hpp"

using namespace llrel;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

FixTable table(const Object& x, const Object& a, const std::vector<std::string>& rows) {
  FixTable t{x, a, 0, {}};
  for (const auto& r : rows) {
    TokenStream ts(r);
    auto k = parse_point(ts, t.dom());
    ts.expect("->");
    auto b = parse_point(ts, a);
    t.rows.push_back({k.first().multiset(), k.second().multiset(), b});
  }
  std::sort(t.rows.begin(), t.rows.end());
  return t;
}

const Object X = Object::base("X", {"x"});
const Object A = Object::base("A", {"a"});
const Point x = Point::atom(0, "x");
const Point a = Point::atom(0, "a");

FixTable example_f() { return table(X, A, {"([],[]) -> a", "([x],[a]) -> a"}); }
FixTable example_g() { return table(X, A, {"([],[a]) -> a", "([x],[a]) -> a"}); }
Multiset m_n(int n) { return n ? Multiset::singleton(x, Mult(static_cast<std::uint32_t>(n))) : Multiset(); }

Outcome example_f_classic() {
  auto e = fix_enumerate(example_f(), FixMode::Classic, FixBounds{{5, false, 3}, 3});
  std::vector<std::pair<Multiset, Point>> want;
  for (int n = 0; n <= 5; ++n) want.emplace_back(m_n(n), a);
  std::sort(want.begin(), want.end());
  std::ostringstream d;
  d << e.pairs.size() << " pairs, " << e.bound_limited.size() << " undecided";
  return {e.pairs == want && e.bound_limited.empty() && e.exact, d.str()};
}

// Vertices lying on some cycle of the witness graph.
int cyclic_core(const RegularRunTree& t) {
  int n = static_cast<int>(t.vertices.size()), core = 0;
  for (int v = 0; v < n; ++v) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (const auto& [u, m] : t.vertices[v].succ) stack.push_back(u);
    bool cyclic = false;
    while (!stack.empty() && !cyclic) {
      int u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = 1;
      cyclic = u == v;
      for (const auto& [k, m] : t.vertices[u].succ) stack.push_back(k);
    }
    core += cyclic;
  }
  return core;
}

Outcome example_g_modes() {
  auto g = example_g();
  bool ok = true;
  std::ostringstream d;
  for (int bound : {1, 3, 5}) {
    auto e = fix_enumerate(g, FixMode::Inductive, FixBounds{{bound, true, 3}, 3});
    ok &= e.pairs.empty() && e.bound_limited.empty();
  }
  // No finite run-tree exists at all: Even loses the inductive game at a.
  auto game = acceptance_game(build_automaton(g), FixMode::Inductive);
  auto sol = zielonka(game.game);
  ok &= sol.winner[game.state_vertex.at(Label{false, a, 0})] == Player::Odd;
  d << "inductive empty";
  int confirmed = 0, largest = 0;
  std::vector<Multiset> queries{Multiset::singleton(x, Mult::omega())};
  for (int n = 0; n <= 5; ++n) queries.push_back(m_n(n));
  for (const auto& w : queries) {
    auto v = fix_member(g, FixMode::Coinductive, w, a, 4);
    bool good = v.verdict == Verdict::True && v.witness && validate_regular(g, a, *v.witness) &&
                leaves(*v.witness) == w;
    if (good) {
      largest = std::max(largest, cyclic_core(*v.witness));
    }
    ok &= good;
    confirmed += good;
  }
  ok &= largest <= 4;
  d << "; coinductive witnesses " << confirmed << "/" << queries.size() << ", largest core " << largest;
  return {ok, d.str()};
}

FixTable recolour(const FixTable& t, int c) {
  auto paint = [&](const Multiset& m) {
    std::vector<Multiset::Entry> es;
    for (const auto& [p, k] : m.entries()) es.emplace_back(Point::coloured(c, p.inner()), k);
    return Multiset(std::move(es));
  };
  FixTable out = t;
  for (auto& r : out.rows) {
    r.xs = paint(r.xs);
    r.as = paint(r.as);
  }
  return out;
}

FixTable uncolour(const FixTable& t) {
  auto strip = [](const Multiset& m) {
    std::vector<Multiset::Entry> es;
    for (const auto& [p, k] : m.entries()) es.emplace_back(p.inner(), k);
    return Multiset(std::move(es));
  };
  FixTable out{t.X, t.A, 0, {}};
  for (const auto& r : t.rows) out.rows.push_back({strip(r.xs), strip(r.as), r.b});
  std::sort(out.rows.begin(), out.rows.end());
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  return out;
}

Outcome parity_degeneracies() {
  int instances = 60, definitive = 0, undecided = 0, disagree = 0;
  for (int i = 0; i < instances; ++i) {
    InstanceGen gen(1000 + static_cast<std::uint64_t>(i));
    InstanceParams p;
    p.x_size = 1 + i % 2;
    p.a_size = 1 + (i / 2) % 2;
    p.rows = 3;
    p.colours = 2;
    p.omega = 0.2;
    auto t = gen.next(p);
    auto plain = uncolour(t);
    for (auto [colour, mode] : {std::pair{2, FixMode::Coinductive}, std::pair{1, FixMode::Inductive}}) {
      auto painted = recolour(t, colour);
      for (const auto& w : enum_multisets(t.X, 2, true))
        for (const auto& b : points_of(t.A, {})) {
          std::vector<Multiset::Entry> es;
          for (const auto& [q, k] : w.entries()) es.emplace_back(Point::coloured(colour, q), k);
          auto u = fix_member(painted, FixMode::Parity, Multiset(es), b, 3).verdict;
          auto v = fix_member(plain, mode, w, b, 3).verdict;
          if (u == Verdict::BoundLimited || v == Verdict::BoundLimited) {
            ++undecided;
            continue;
          }
          ++definitive;
          disagree += u != v;
        }
    }
  }
  std::ostringstream d;
  d << instances << " instances, " << definitive << " definitive queries, " << disagree << " disagreements, "
    << undecided << " undecided";
  return {disagree == 0 && definitive > 0, d.str()};
}

Outcome conway() {
  std::ostringstream d;
  bool ok = true;
  for (auto mode : {FixMode::Classic, FixMode::Inductive, FixMode::Coinductive, FixMode::Parity}) {
    auto rep = conway_suite(mode, 100, ConwayBounds{4, 2});
    bool finitary = mode == FixMode::Classic || mode == FixMode::Inductive;
    auto fails = rep.count(CheckStatus::Fail), limited = rep.count(CheckStatus::BoundLimited);
    ok &= fails == 0 && (!finitary || limited == 0);
    d << (d.tellp() ? "; " : "") << to_string(mode) << " " << rep.count(CheckStatus::Pass) << "/" << rep.entries.size()
      << " pass, " << fails << " fail, " << limited << " bound-limited";
  }
  return {ok, d.str()};
}

Outcome coherence() {
  auto s = seely_suite(50, 3), c = comonad_suite(50, 3);
  std::ostringstream d;
  d << "seely " << s.count(CheckStatus::Pass) << "/" << s.entries.size() << ", comonads and distributive law "
    << c.count(CheckStatus::Pass) << "/" << c.entries.size();
  return {s.count(CheckStatus::Pass) == s.entries.size() && c.count(CheckStatus::Pass) == c.entries.size(), d.str()};
}

Outcome zielonka_vs_brute_force() {
  std::mt19937_64 rng(2024);
  int games = 250, mismatches = 0, invalid = 0;
  for (int i = 0; i < games; ++i) {
    auto g = random_game(rng, 8, 4);
    auto s = zielonka(g);
    mismatches += s.winner != brute_force_solve(g);
    invalid += !validate_strategies(g, s);
  }
  std::ostringstream d;
  d << games << " games, " << mismatches << " mismatched regions, " << invalid << " invalid strategies";
  return {mismatches == 0 && invalid == 0, d.str()};
}

Outcome automaton_correspondence() {
  InstanceGen gen(77);
  int instances = 60, differ = 0, trees = 0;
  for (int i = 0; i < instances; ++i) {
    InstanceParams p;
    p.x_size = 1 + i % 2;
    p.a_size = 1 + (i / 2) % 2;
    p.colours = i % 3 == 0 ? 2 : 0;
    auto f = gen.next(p);
    auto g = acceptance_game(build_automaton(f), p.colours ? FixMode::Parity : FixMode::Classic);
    for (const auto& b : points_of(f.A, {})) {
      auto direct = finite_runtrees(f, b, 6);
      differ += direct != strategy_runtrees(g, b, 6);
      trees += static_cast<int>(direct.size());
    }
  }
  std::ostringstream d;
  d << instances << " instances, " << trees << " run-trees, " << differ << " differing roots";
  return {differ == 0 && trees > 0, d.str()};
}

Outcome lasso_words() {
  long pairs = 0, wrong = 0;
  for (const auto& base : {Object::base("S", {"s"}), Object::base("S", {"s", "t"})}) {
    auto words = all_lassos(points_of(base, {}), 3, 3);
    for (const auto& u : words)
      for (const auto& v : words) {
        ++pairs;
        wrong += word_equiv(u, v) != (word_to_multiset(u) == word_to_multiset(v));
      }
  }
  std::ostringstream d;
  d << pairs << " pairs, " << wrong << " disagreements";
  return {wrong == 0, d.str()};
}

Outcome mutations() {
  std::ostringstream d;
  int caught = 0;
  {
    auto l = Object::base("A", {"a"}), r = Object::base("B", {"b"});
    Bounds bd{2, false, 2};
    auto m2 = Rel::m2(l, r);
    std::vector<std::pair<Point, Point>> pairs = enumerate(m2, bd).pairs;
    auto dropped = pairs[pairs.size() / 2];
    pairs.erase(pairs.begin() + static_cast<long>(pairs.size() / 2));
    auto bad = Rel::table(m2.dom(), m2.cod(), pairs);
    auto res = check_diagram({"m2;m2-inv", seq(bad, Rel::m2_inv(l, r)), Rel::id(bad.dom()), bd, bd});
    bool hit = res.status == CheckStatus::Fail && res.counterexample && res.counterexample->first == dropped.first;
    caught += hit;
    d << "m2 without " << dropped.first.str() << " -> " << dropped.second.str() << ": " << res.describe();
  }
  {
    auto f = example_f();
    auto y = fix_oracle(f, FixMode::Classic, 3);
    auto dropped = m_n(2);
    KleisliOracle bad = [&](const Multiset& w, const Point& b) { return w == dropped ? Verdict::False : y(w, b); };
    auto res = check_fix_property(f, FixMode::Classic, bad, ConwayBounds{});
    bool hit = res.status == CheckStatus::Fail && res.counterexample &&
               res.counterexample->first == Point::bag(dropped);
    caught += hit;
    d << "; fixpoint without (" << dropped.str() << ",a): " << res.describe();
  }
  {
    auto f = example_f();
    auto g = acceptance_game(build_automaton(f), FixMode::Classic);
    g.game.priority[g.top] = 1;
    auto s = zielonka(g.game);
    auto e = fix_enumerate(f, FixMode::Classic, FixBounds{{3, false, 3}, 3});
    std::string found;
    for (const auto& b : points_of(f.A, {})) {
      bool game_says = s.winner[g.state_vertex.at(Label{false, b, 0})] == Player::Even;
      auto it = std::find_if(e.pairs.begin(), e.pairs.end(), [&](const auto& pr) { return pr.second == b; });
      bool fix_says = it != e.pairs.end();
      if (game_says != fix_says && found.empty())
        found = fix_says ? "(" + it->first.str() + "," + b.str() + ") in the fixpoint, game lost at " + b.str()
                         : "game won at " + b.str() + " with an empty fixpoint";
    }
    caught += !found.empty();
    d << "; top sink priority 1: " << (found.empty() ? "undetected" : found);
  }
  return {caught == 3, std::to_string(caught) + "/3 detected; " + d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs = {
      {"example f, classic fixpoint to leaf bound 5", 1, example_f_classic},
      {"example g, inductive empty and coinductive witnesses", 1, example_g_modes},
      {"parity with one even/odd colour equals coinductive/inductive", 60, parity_degeneracies},
      {"Conway axioms in all four modes", 300, conway},
      {"Seely, comonad and distributive-law diagrams", 120, coherence},
      {"Zielonka against brute force", 30, zielonka_vs_brute_force},
      {"run-tree search against strategy trees", 60, automaton_correspondence},
      {"lasso word equivalence against multisets", 5, lasso_words},
      {"planted mutations", 60, mutations},
  };
  int failed = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cs[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.ok && secs < cs[i].limit;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << cs[i].name << ": " << o.detail << " ("
              << secs << " s, limit " << cs[i].limit << " s)" << std::endl;
  }
  return failed ? 1 : 0;
}
