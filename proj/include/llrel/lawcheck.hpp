#pragma once

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "llrel/diagram.hpp"
#include "llrel/instances.hpp"
#include "llrel/kleisli.hpp"

namespace llrel {

enum class ConwayAxiom { Naturality, FixProperty, Dinaturality, Diagonal };

inline const char* to_string(ConwayAxiom a) {
  switch (a) {
    case ConwayAxiom::Naturality: return "naturality";
    case ConwayAxiom::FixProperty: return "fixpoint-property";
    case ConwayAxiom::Dinaturality: return "dinaturality";
    default: return "diagonal";
  }
}

inline constexpr ConwayAxiom kConwayAxioms[] = {ConwayAxiom::Naturality, ConwayAxiom::FixProperty,
                                                ConwayAxiom::Dinaturality, ConwayAxiom::Diagonal};

/// Leaf multisets up to `probe` in total, and the witness bound used by the
/// infinitary modes.
struct ConwayBounds {
  int probe = 4;
  int witness = 2;
};

/// Everything the four laws are instantiated with.
struct ConwayInstance {
  std::uint64_t seed = 0;
  Object X, A, B, Z;
  int colours = 0;
  FixTable f;          // fixpoint property
  Morph nat_f, nat_g;  // naturality: f : E Z (x) E A -o A, g : E X -o Z
  Morph din_f, din_g;  // dinaturality: f : E X (x) E B -o A, g : E X (x) E A -o B
  TriMorph diag;       // diagonal: E X (x) E A (x) E A -o A
};

inline ConwayInstance conway_instance(std::uint64_t seed, InstanceParams p) {
  InstanceGen gen(seed);
  auto names = [](const char* stem, int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(stem + std::to_string(i));
    return v;
  };
  ConwayInstance c;
  c.seed = seed;
  c.colours = p.colours;
  c.X = Object::base("X", names("x", p.x_size));
  c.A = Object::base("A", names("a", p.a_size));
  c.B = Object::base("B", names("b", p.a_size));
  c.Z = Object::base("Z", names("z", 2));
  c.f = FixTable{c.X, c.A, p.colours, gen.rows(c.X, c.A, c.A, p)};
  c.nat_f = {c.Z, c.A, c.A, p.colours, gen.rows(c.Z, c.A, c.A, p)};
  auto pg = p;
  pg.max_children = 0;
  c.nat_g = {c.X, c.A, c.Z, p.colours, gen.rows(c.X, c.A, c.Z, pg)};
  c.din_f = {c.X, c.B, c.A, p.colours, gen.rows(c.X, c.B, c.A, p)};
  c.din_g = {c.X, c.A, c.B, p.colours, gen.rows(c.X, c.A, c.B, p)};
  auto one = gen.rows(c.X, c.A, c.A, p);
  auto two = gen.rows(c.X, c.A, c.A, p);
  c.diag = {c.X, c.A, p.colours, {}};
  for (std::size_t i = 0; i < one.size(); ++i) {
    const auto& extra = two[i % two.size()].as;
    c.diag.rows.push_back({one[i].xs, one[i].as, gen.coin(0.5) ? extra : Multiset(), one[i].b});
  }
  return c;
}

/// y(f) as a cached three-valued oracle.
inline KleisliOracle fix_oracle(const FixTable& f, FixMode mode, int witness) {
  return memoize([f, mode, witness](const Multiset& w, const Point& a) {
    return fix_member(f, mode, w, a, witness).verdict;
  });
}

/// Leaf multisets of E X up to total `probe`, w-free.
inline std::vector<Multiset> probe_multisets(const Object& X, int colours, int probe) {
  Object ex = colours > 0 ? Object::bang(Object::box(X, colours)) : Object::bang(X);
  std::vector<Multiset> out;
  for (const auto& p : points_of(ex, Bounds{probe, false, 1})) out.push_back(p.multiset());
  return out;
}

/// Compares two morphisms E X -o A pointwise over the probes.
inline CheckResult compare_kleisli(const std::string& name, const std::vector<Multiset>& probes, const Object& A,
                                   const KleisliOracle& left, const KleisliOracle& right) {
  CheckResult res;
  res.name = name;
  for (const auto& w : probes)
    for (const auto& a : points_of(A, {})) {
      ++res.probes;
      auto l = left(w, a), r = right(w, a);
      if (l == r) continue;
      bool fail = l != Verdict::BoundLimited && r != Verdict::BoundLimited;
      auto st = fail ? CheckStatus::Fail : CheckStatus::BoundLimited;
      if (st == CheckStatus::Fail || res.status == CheckStatus::Pass) {
        res.status = st;
        res.counterexample = {Point::bag(w), a};
        res.side = l == Verdict::True ? "left" : r == Verdict::True ? "right" : "neither";
      }
      if (fail) return res;
    }
  return res;
}

// The four laws, each as two oracles over E X -o A.

inline CheckResult check_fix_property(const FixTable& f, FixMode mode, const KleisliOracle& y,
                                      const ConwayBounds& b) {
  auto right = memoize([&](const Multiset& w, const Point& a) { return unfold(Morph::of(f), y, w, a); });
  return compare_kleisli("fixpoint-property", probe_multisets(f.X, f.colours, b.probe), f.A, y, right);
}

/// Rows of f with any leaves erased whose point some empty-premise row of g
/// produces: those leaves can always be supplied by g for free.
inline FixTable erase_free_leaves(const Morph& f, const Morph& g) {
  std::set<Point> free;
  for (const auto& r : g.rows)
    if (r.xs.empty()) free.insert(r.b);
  FixTable t{f.P, f.R, f.colours, {}};
  for (const auto& r : f.rows) {
    std::vector<Multiset::Entry> erasable;
    for (const auto& e : r.xs.entries())
      if (free.count(split_colour(e.first, f.coloured()).second)) erasable.push_back(e);
    for (const auto& e : sub_multisets(Multiset(erasable))) t.rows.push_back({ms_minus(r.xs, e), r.as, r.b});
  }
  dedupe(t.rows);
  return t;
}

/// Every [<d_j> z_j] such that w = sum bump(v_j, d_j) for rows (v_j, z_j) of
/// g with v_j nonempty.
inline std::set<Multiset> nonempty_preimages(const Morph& g, const Multiset& w) {
  std::vector<std::pair<const FixRow*, int>> parts;
  for (const auto& r : g.rows) {
    if (r.xs.empty()) continue;
    if (!g.coloured()) parts.emplace_back(&r, 0);
    for (int d = 1; d <= g.colours; ++d) parts.emplace_back(&r, d);
  }
  std::set<Multiset> out;
  std::function<void(std::size_t, const Multiset&, const Multiset&)> go = [&](std::size_t from, const Multiset& left,
                                                                              const Multiset& acc) {
    if (left.empty()) out.insert(acc);
    for (std::size_t i = from; i < parts.size(); ++i) {
      auto t = bump(parts[i].first->xs, parts[i].second);
      if (!t.leq(left)) continue;
      auto z = g.coloured() ? Point::coloured(parts[i].second, parts[i].first->b) : parts[i].first->b;
      go(i, ms_minus(left, t), acc + Multiset::singleton(z));
    }
  };
  go(0, w, Multiset());
  return out;
}

inline CheckResult check_naturality(const Morph& f, const Morph& g, FixMode mode, const ConwayBounds& b) {
  auto left = fix_oracle(tabulate_naturality_body(f, g), mode, b.witness);
  auto yf = fix_oracle(erase_free_leaves(f, g), mode, b.witness);
  auto right = memoize([&, yf](const Multiset& w, const Point& a) {
    Verdict v = Verdict::False;
    for (const auto& pre : nonempty_preimages(g, w)) {
      v = v_or(v, yf(pre, a));
      if (v == Verdict::True) break;
    }
    return v;
  });
  return compare_kleisli("naturality", probe_multisets(g.P, g.colours, b.probe), f.R, left, right);
}

inline CheckResult check_dinaturality(const Morph& f, const Morph& g, FixMode mode, const ConwayBounds& b) {
  auto left = fix_oracle(tabulate_star(f, g), mode, b.witness);
  auto inner = fix_oracle(tabulate_star(g, f), mode, b.witness);
  auto right = memoize([&, inner](const Multiset& w, const Point& a) { return unfold(f, inner, w, a); });
  return compare_kleisli("dinaturality", probe_multisets(f.P, f.colours, b.probe), f.R, left, right);
}

/// y(y(h) . m2) over the probes, with h = f . (m2^-1 (x) E A), by iterating
/// R -> y(h_R), where h_R substitutes pairs of R for the A-leaves of h.
/// From below this is exact for the finitary modes; from above (infinitary
/// modes only) it refutes soundly.
inline KleisliOracle nested_fixpoint(const TriMorph& f, FixMode mode, const ConwayBounds& b) {
  auto probes = probe_multisets(f.X, f.colours, b.probe);
  const auto& as = points_of(f.A, {});
  using Rel2 = std::map<Point, std::vector<Multiset>>;
  auto h_of = [&](const Rel2& r) {
    FixTable t{f.X, f.A, f.colours, {}};
    std::vector<FixRow> g;
    for (const auto& [a, vs] : r)
      for (const auto& v : vs) g.push_back({v, Multiset(), a});
    for (const auto& row : f.rows)
      substitute(row.u1, g, f.coloured(), [&](const Multiset& xs, const Multiset&) {
        auto all = row.xs + xs;
        if (static_cast<int>(all.weight()) <= b.probe) t.rows.push_back({all, row.u2, row.b});
      });
    dedupe(t.rows);
    return t;
  };
  auto step = [&](const Rel2& r, bool keep_limited) {
    FixBounds fb;
    fb.leaves = {b.probe, false, 3};
    fb.witness = b.witness;
    auto e = fix_enumerate(h_of(r), mode, fb);
    Rel2 next;
    for (const auto& [w, a] : e.pairs) next[a].push_back(w);
    if (keep_limited)
      for (const auto& [w, a] : e.bound_limited) next[a].push_back(w);
    for (auto& [a, vs] : next) std::sort(vs.begin(), vs.end());
    return next;
  };
  Rel2 low;
  if (mode == FixMode::Coinductive) {
    // Leafless claims cannot be phantom, so a greatest fixpoint over them
    // is sound; it supplies the outer-infinite trees without leaves.
    std::set<Point> empty(as.begin(), as.end());
    while (true) {
      Rel2 r;
      for (const auto& a : empty) r[a] = {Multiset()};
      auto h = h_of(r);
      std::set<Point> next;
      for (const auto& a : empty)
        if (fix_member(h, mode, Multiset(), a, b.witness).verdict == Verdict::True) next.insert(a);
      if (next == empty) break;
      empty = std::move(next);
    }
    for (const auto& a : empty) low[a] = {Multiset()};
  }
  while (true) {
    auto next = step(low, false);
    if (next == low) break;
    low = std::move(next);
  }
  bool finitary = mode == FixMode::Classic || mode == FixMode::Inductive;
  Rel2 high;
  if (!finitary) {
    // Only leaves some row below a can produce.
    std::map<Point, std::set<Point>> reach;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& row : f.rows) {
        auto& mine = reach[row.b];
        auto n = mine.size();
        for (const auto& [p, m] : row.xs.entries()) mine.insert(split_colour(p, f.coloured()).second);
        for (const auto* u : {&row.u1, &row.u2})
          for (const auto& [p, m] : u->entries()) {
            auto kid = split_colour(p, f.coloured()).second;
            if (kid == row.b) continue;
            auto theirs = reach[kid];
            mine.insert(theirs.begin(), theirs.end());
          }
        grew |= mine.size() != n;
      }
    }
    for (const auto& a : as)
      for (const auto& w : probes)
        if (std::all_of(w.entries().begin(), w.entries().end(), [&](const Multiset::Entry& e) {
              return reach[a].count(split_colour(e.first, f.coloured()).second) > 0;
            }))
          high[a].push_back(w);
    while (true) {
      auto next = step(high, true);
      for (auto& [a, vs] : next) {
        std::vector<Multiset> keep;
        std::set_intersection(vs.begin(), vs.end(), high[a].begin(), high[a].end(), std::back_inserter(keep));
        vs = std::move(keep);
      }
      if (next == high) break;
      high = std::move(next);
    }
  }
  auto holds = [](const Rel2& r, const Multiset& w, const Point& a) {
    auto it = r.find(a);
    return it != r.end() && std::binary_search(it->second.begin(), it->second.end(), w);
  };
  return [=](const Multiset& w, const Point& a) {
    if (holds(low, w, a)) return Verdict::True;
    if (finitary || !holds(high, w, a)) return Verdict::False;
    return Verdict::BoundLimited;
  };
}

inline CheckResult check_diagonal(const TriMorph& f, FixMode mode, const ConwayBounds& b) {
  auto left = nested_fixpoint(f, mode, b);
  auto right = fix_oracle(tabulate_diagonal_body(f), mode, b.witness);
  return compare_kleisli("diagonal", probe_multisets(f.X, f.colours, b.probe), f.A, left, right);
}

inline CheckResult check_conway_once(const ConwayInstance& c, FixMode mode, ConwayAxiom ax, const ConwayBounds& b) {
  switch (ax) {
    case ConwayAxiom::Naturality: return check_naturality(c.nat_f, c.nat_g, mode, b);
    case ConwayAxiom::FixProperty: return check_fix_property(c.f, mode, fix_oracle(c.f, mode, b.witness), b);
    case ConwayAxiom::Dinaturality: return check_dinaturality(c.din_f, c.din_g, mode, b);
    default: return check_diagonal(c.diag, mode, b);
  }
}

/// One law on one instance; a bound-limited outcome is retried once with
/// the witness bound doubled.
inline CheckResult check_conway(const ConwayInstance& c, FixMode mode, ConwayAxiom ax, ConwayBounds b = {}) {
  auto r = check_conway_once(c, mode, ax, b);
  if (r.status == CheckStatus::BoundLimited) {
    b.witness *= 2;
    r = check_conway_once(c, mode, ax, b);
  }
  r.name = std::string("conway.") + to_string(mode) + "." + to_string(ax) + ".seed" + std::to_string(c.seed);
  return r;
}

/// A named check outcome with its running time, for reports.
struct SuiteEntry {
  CheckResult result;
  double seconds = 0;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteEntry> entries;

  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [s](const SuiteEntry& e) { return e.result.status == s; }));
  }
  bool ok() const { return count(CheckStatus::Fail) == 0; }
};

template <class F>
SuiteEntry timed(F&& run) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteEntry e{run(), 0};
  e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return e;
}

/// Parameters of the random instances used by the suites.
inline InstanceParams conway_params(FixMode mode, std::uint64_t seed) {
  InstanceParams p;
  p.x_size = 1 + static_cast<int>(seed % 2);
  p.a_size = 1 + static_cast<int>((seed / 2) % 2);
  p.rows = 3;
  p.colours = mode == FixMode::Parity ? 2 : 0;
  return p;
}

inline SuiteReport conway_suite(FixMode mode, int seeds, const ConwayBounds& b, std::uint64_t first_seed = 0) {
  SuiteReport rep{std::string("conway.") + to_string(mode), {}};
  for (int i = 0; i < seeds; ++i) {
    auto s = first_seed + static_cast<std::uint64_t>(i);
    auto c = conway_instance(s, conway_params(mode, s));
    for (auto ax : kConwayAxioms) rep.entries.push_back(timed([&] { return check_conway(c, mode, ax, b); }));
  }
  return rep;
}

/// Random base object with one or two elements named stem0, stem1.
inline Object small_object(InstanceGen& g, const std::string& name, const std::string& stem) {
  std::vector<std::string> el{stem + "0"};
  if (g.coin(0.5)) el.push_back(stem + "1");
  return Object::base(name, el);
}

inline SuiteReport seely_suite(int seeds, int bound, std::uint64_t first_seed = 0) {
  SuiteReport rep{"seely", {}};
  for (int i = 0; i < seeds; ++i) {
    InstanceGen g(first_seed + static_cast<std::uint64_t>(i));
    auto a = small_object(g, "A", "a"), b = small_object(g, "B", "b"), c = small_object(g, "C", "c");
    Bounds probe{bound, false, 3}, eval{bound + 2, false, 4};
    for (auto& d : seely_diagrams(Exp::bang(), a, b, c, probe, eval)) {
      d.name += ".seed" + std::to_string(first_seed + i);
      rep.entries.push_back(timed([&] { return check_diagram(d); }));
    }
  }
  return rep;
}

inline SuiteReport comonad_suite(int seeds, int bound, std::uint64_t first_seed = 0) {
  SuiteReport rep{"comonads", {}};
  for (int i = 0; i < seeds; ++i) {
    InstanceGen g(first_seed + static_cast<std::uint64_t>(i));
    auto a = small_object(g, "A", "a");
    Bounds probe{bound, false, 3}, eval{bound + 2, false, 4};
    std::vector<DiagramCheck> ds;
    for (auto& d : comonad_diagrams(comonad_of(Exp::bang()), a, probe, eval)) ds.push_back(d);
    for (auto& d : comonad_diagrams(box_comonad(2), a, probe, eval)) ds.push_back(d);
    for (auto& d : comonad_diagrams(comonad_of(Exp::coloured(2)), a, probe, Bounds{2, false, 4})) ds.push_back(d);
    for (auto& d : distributive_diagrams(a, 2, DistKind::Uniform, probe, eval)) ds.push_back(d);
    for (auto& d : ds) {
      d.name += ".seed" + std::to_string(first_seed + i);
      rep.entries.push_back(timed([&] { return check_diagram(d); }));
    }
  }
  return rep;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// JUnit-style XML: failures as <failure>, bound-limited checks as <skipped>.
inline std::string to_junit(const std::vector<SuiteReport>& suites) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<testsuites>\n";
  for (const auto& rep : suites) {
    double total = 0;
    for (const auto& e : rep.entries) total += e.seconds;
    s += "  <testsuite name=\"" + xml_escape(rep.name) + "\" tests=\"" + std::to_string(rep.entries.size()) +
         "\" failures=\"" + std::to_string(rep.count(CheckStatus::Fail)) + "\" skipped=\"" +
         std::to_string(rep.count(CheckStatus::BoundLimited)) + "\" time=\"" + std::to_string(total) + "\">\n";
    for (const auto& e : rep.entries) {
      s += "    <testcase name=\"" + xml_escape(e.result.name) + "\" time=\"" + std::to_string(e.seconds) + "\"";
      if (e.result.status == CheckStatus::Pass) {
        s += "/>\n";
        continue;
      }
      s += ">\n      <";
      s += e.result.status == CheckStatus::Fail ? "failure" : "skipped";
      s += " message=\"" + xml_escape(e.result.describe()) + "\"/>\n    </testcase>\n";
    }
    s += "  </testsuite>\n";
  }
  return s + "</testsuites>\n";
}

}  // namespace llrel
