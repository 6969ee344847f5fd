#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "llrel/game.hpp"
#include "llrel/runtree.hpp"

namespace llrel {

enum class FixMode { Classic, Inductive, Coinductive, Parity };

inline const char* to_string(FixMode m) {
  switch (m) {
    case FixMode::Classic: return "classic";
    case FixMode::Inductive: return "ind";
    case FixMode::Coinductive: return "coind";
    default: return "parity";
  }
}

inline FixMode parse_mode(const std::string& s) {
  if (s == "classic") return FixMode::Classic;
  if (s == "ind" || s == "inductive") return FixMode::Inductive;
  if (s == "coind" || s == "coinductive") return FixMode::Coinductive;
  if (s == "parity") return FixMode::Parity;
  throw Error("unknown fixpoint mode '" + s + "' (expected classic, ind, coind or parity)");
}

/// Enumeration bounds on leaf multisets, plus the largest cyclic core (in
/// A-vertices) searched when building infinite witnesses.
struct FixBounds {
  Bounds leaves{3, false, 3};
  int witness = 3;
};

struct FixVerdict {
  Verdict verdict = Verdict::False;
  std::optional<RegularRunTree> witness;
};

struct FixEnumeration {
  std::vector<std::pair<Multiset, Point>> pairs;
  /// Pairs neither confirmed nor refuted within the witness bound.
  std::vector<std::pair<Multiset, Point>> bound_limited;
  bool exact = true;
};

namespace fixdetail {

// Leaf multisets are handled through a finite abstraction: each coloured
// leaf point carries a count in {0..cap, many, w}, where `many` stands for
// any finite count above cap. Addition and scaling commute with the
// abstraction, so existence questions are decided exactly.
constexpr std::uint32_t kW = std::numeric_limits<std::uint32_t>::max();
using Val = std::vector<std::uint32_t>;

struct Kid {
  int elem;
  Mult m;
  int at = -1;  // skeleton vertex for core exits
};
using Prov = std::vector<Kid>;
using Bag = std::map<Val, Prov>;

struct Row {
  int head;
  Val xs;
  Multiset xs_ms;
  std::vector<std::pair<int, Mult>> kids;  // (type, multiplicity)
};

struct SkelVertex {
  int ty;
  int row = -1;
  std::vector<std::pair<int, Mult>> internal;
  std::vector<std::pair<int, Mult>> buckets;  // (type, multiplicity)
};

struct Elem {
  int ty;
  Val val;
  int row = -1;
  int core = -1;
  Prov kids;
};

class Engine {
 public:
  struct Universe {
    bool by_limit = true;
    std::vector<std::uint32_t> limit;  // per leaf point, projected over colours
    std::uint32_t max_total = 0;
    bool omega = false;
  };

  Engine(const FixTable& f, FixMode mode, const std::vector<Point>& extra_x, const std::vector<Point>& extra_a)
      : f_(f), mode_(mode) {
    if (mode == FixMode::Parity && !f.coloured()) throw Error("parity mode needs a coloured fixpoint body");
    ncol_ = f.coloured() ? f.colours : 1;
    auto strip = [&](const Point& p) { return f.coloured() ? p.inner() : p; };
    std::set<Point> xset(extra_x.begin(), extra_x.end()), aset(extra_a.begin(), extra_a.end());
    for (const auto& r : f.rows) {
      if (mode == FixMode::Classic && (r.xs.has_omega() || r.as.has_omega())) continue;
      for (const auto& [p, m] : r.xs.entries()) xset.insert(strip(p));
      for (const auto& [p, m] : r.as.entries()) aset.insert(strip(p));
      aset.insert(r.b);
    }
    xs_.assign(xset.begin(), xset.end());
    as_.assign(aset.begin(), aset.end());
    rows_of_.assign(as_.size(), {});
    for (const auto& r : f.rows) {
      if (mode == FixMode::Classic && (r.xs.has_omega() || r.as.has_omega())) continue;
      Row row{a_index(r.b), {}, r.xs, {}};
      for (const auto& [p, m] : r.as.entries()) row.kids.emplace_back(type_of(p), m);
      rows_.push_back(std::move(row));
      rows_of_[rows_.back().head].push_back(static_cast<int>(rows_.size()) - 1);
    }
    by_ty_.assign(as_.size() * (f.colours + 1), {});
  }

  void set_universe(Universe u, std::uint32_t cap) {
    uni_ = std::move(u);
    cap_ = cap;
    for (auto& r : rows_) r.xs = *of(r.xs_ms);
  }

  int ncomp() const { return ncol_ * static_cast<int>(xs_.size()); }
  int nx() const { return static_cast<int>(xs_.size()); }
  const std::vector<Point>& a_points() const { return as_; }

  int a_index(const Point& a) const {
    auto it = std::lower_bound(as_.begin(), as_.end(), a);
    return it != as_.end() && *it == a ? static_cast<int>(it - as_.begin()) : -1;
  }
  int x_index(const Point& x) const {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    return it != xs_.end() && *it == x ? static_cast<int>(it - xs_.begin()) : -1;
  }
  int ty(int a, int colour) const { return a * (f_.colours + 1) + colour; }
  int ty_a(int t) const { return t / (f_.colours + 1); }
  int ty_colour(int t) const { return t % (f_.colours + 1); }
  int type_of(const Point& p) const {
    return f_.coloured() ? ty(a_index(p.inner()), p.colour()) : ty(a_index(p), 0);
  }
  int root_type(int a) const { return ty(a, 0); }

  // --- abstract arithmetic -------------------------------------------------

  std::uint32_t many() const { return cap_ + 1; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == kW || b == kW) return kW;
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(std::uint64_t(a) + b, many()));
  }
  std::uint32_t scale(Mult m, std::uint32_t a) const {
    if (a == 0 || m.is_zero()) return 0;
    if (a == kW || m.is_omega()) return kW;
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(std::uint64_t(a) * m.finite(), many()));
  }
  Val zero() const { return Val(ncomp(), 0); }
  Val plus(const Val& a, const Val& b) const {
    Val r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
    return r;
  }
  Val times(Mult m, const Val& a) const {
    Val r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = scale(m, a[i]);
    return r;
  }
  /// Raise every leaf colour below d to d.
  Val bump(int d, const Val& v) const {
    if (ncol_ == 1 || d <= 1) return v;
    Val r = v;
    for (int c = 1; c < d; ++c)
      for (int i = 0; i < nx(); ++i) {
        auto& from = r[(c - 1) * nx() + i];
        auto& to = r[(d - 1) * nx() + i];
        to = add(to, from);
        from = 0;
      }
    return r;
  }

  std::optional<Val> of(const Multiset& m) const {
    Val v = zero();
    for (const auto& [p, k] : m.entries()) {
      int c = 0, xi;
      if (f_.coloured()) {
        if (p.kind() != PointKind::Coloured) return std::nullopt;
        c = p.colour() - 1;
        xi = x_index(p.inner());
      } else {
        xi = x_index(p);
      }
      if (xi < 0 || c < 0 || c >= ncol_) return std::nullopt;
      auto& slot = v[c * nx() + xi];
      slot = add(slot, scale(k, 1));
    }
    return v;
  }

  bool has_many(const Val& v) const {
    return std::any_of(v.begin(), v.end(), [&](std::uint32_t k) { return k == many(); });
  }

  Multiset to_multiset(const Val& v) const {
    std::vector<Multiset::Entry> es;
    for (int c = 0; c < ncol_; ++c)
      for (int i = 0; i < nx(); ++i) {
        auto k = v[c * nx() + i];
        if (k == 0) continue;
        Point p = f_.coloured() ? Point::coloured(c + 1, xs_[i]) : xs_[i];
        es.emplace_back(p, k == kW ? Mult::omega() : Mult(k));
      }
    return Multiset(std::move(es));
  }

  bool ok(const Val& v) const {
    if (uni_.by_limit) {
      for (int i = 0; i < nx(); ++i) {
        std::uint32_t s = 0;
        for (int c = 0; c < ncol_; ++c) s = add(s, v[c * nx() + i]);
        auto lim = uni_.limit[i];
        if (lim != kW && (s == kW || s > lim)) return false;
      }
      return true;
    }
    std::uint32_t total = 0, support = 0;
    for (auto k : v) {
      if (k == 0) continue;
      ++support;
      if (!uni_.omega && (k == kW || k == many())) return false;
      total += k == kW ? 1 : k;
    }
    return uni_.omega ? support <= uni_.max_total : total <= uni_.max_total;
  }

  // --- element store -------------------------------------------------------

  std::vector<Elem> elems;
  std::vector<std::vector<SkelVertex>> cores;

  int find(int t, const Val& v) const {
    auto it = index_.find({t, v});
    return it == index_.end() ? -1 : it->second;
  }

  bool insert(Elem e) {
    if (index_.count({e.ty, e.val})) return false;
    int id = static_cast<int>(elems.size());
    index_[{e.ty, e.val}] = id;
    by_ty_[e.ty].push_back(id);
    elems.push_back(std::move(e));
    return true;
  }

  // --- bag arithmetic ------------------------------------------------------

  template <class Pred>
  Bag sum(const Bag& a, const Bag& b, Pred&& keep) const {
    Bag out;
    for (const auto& [va, pa] : a)
      for (const auto& [vb, pb] : b) {
        auto s = plus(va, vb);
        if (out.count(s) || !keep(s)) continue;
        Prov p = pa;
        p.insert(p.end(), pb.begin(), pb.end());
        out.emplace(std::move(s), std::move(p));
      }
    return out;
  }

  template <class Pred>
  Bag closure(Bag bag, const Bag& gen, Pred&& keep) const {
    while (true) {
      auto next = sum(bag, gen, keep);
      bool grew = false;
      for (auto& [v, p] : next)
        if (bag.emplace(v, std::move(p)).second) grew = true;
      if (!grew) return bag;
    }
  }

  Bag base(int t, const std::vector<int>& ids) const {
    Bag b;
    for (int e : ids) b.emplace(elems[e].val, Prov{{e, Mult(1)}});
    (void)t;
    return b;
  }

  /// Achievable sums of m children of type t drawn from `ids`; with m = w,
  /// some children must occur infinitely often.
  template <class Pred>
  Bag copies(int t, Mult m, const std::vector<int>& ids, Pred&& keep) const {
    Bag unit{{zero(), {}}};
    if (m.is_zero()) return unit;
    auto gen = base(t, ids);
    if (!m.is_omega()) {
      Bag acc = unit;
      for (std::uint32_t i = 0; i < m.finite() && !acc.empty(); ++i) acc = sum(acc, gen, keep);
      return acc;
    }
    Bag inf;
    for (int e : ids) {
      auto v = times(Mult::omega(), elems[e].val);
      if (keep(v)) inf.emplace(v, Prov{{e, Mult::omega()}});
    }
    inf = closure(inf, inf, keep);
    auto extra = closure(unit, gen, keep);
    return sum(inf, extra, keep);
  }

  /// Candidate values for a node of type t built with row r from children
  /// drawn from `pool` (indexed by type).
  Bag row_step(int t, const Row& r, const std::vector<std::vector<int>>& pool) const {
    int c = ty_colour(t);
    auto keep = [&](const Val& v) { return ok(bump(c, v)); };
    Bag acc{{r.xs, {}}};
    if (!keep(r.xs)) return {};
    for (const auto& [ct, m] : r.kids) {
      acc = sum(acc, copies(ct, m, pool[ct], keep), keep);
      if (acc.empty()) return acc;
    }
    Bag out;
    for (auto& [v, p] : acc) out.emplace(bump(c, v), std::move(p));
    return out;
  }

  std::vector<int> all_types() const {
    std::vector<int> ts;
    for (std::size_t a = 0; a < as_.size(); ++a)
      for (int c = 0; c <= f_.colours; ++c) ts.push_back(ty(static_cast<int>(a), c));
    return ts;
  }
  bool child_type(int t) const { return !f_.coloured() || ty_colour(t) > 0; }

  /// Least fixpoint of one-step derivations over the current store.
  bool lfp() {
    bool any = false;
    while (true) {
      bool grew = false;
      for (int t : all_types())
        for (int ri : rows_of_[ty_a(t)])
          for (auto& [v, p] : row_step(t, rows_[ri], by_ty_)) {
            if (!ok(v)) continue;
            if (insert({t, v, ri, -1, std::move(p)})) grew = true;
          }
      if (!grew) return any;
      any = true;
    }
  }

  // --- cyclic cores --------------------------------------------------------

  bool accepts_cycle(const std::vector<SkelVertex>& vs) const {
    if (mode_ == FixMode::Coinductive) return true;
    if (mode_ != FixMode::Parity) return false;
    RegularRunTree g;
    for (const auto& v : vs) {
      RegularRunTree::Vertex gv{Label{false, as_[ty_a(v.ty)], ty_colour(v.ty)}, {}};
      for (const auto& [u, m] : v.internal) gv.succ.emplace_back(u, m);
      g.vertices.push_back(std::move(gv));
    }
    return check_cycles_even(g);
  }

  bool strongly_connected(const std::vector<SkelVertex>& vs) const {
    int n = static_cast<int>(vs.size());
    std::vector<std::vector<int>> rev(n);
    bool cyc = false;
    for (int v = 0; v < n; ++v)
      for (const auto& [u, m] : vs[v].internal) {
        rev[u].push_back(v);
        cyc = true;
      }
    if (!cyc) return false;
    std::vector<bool> seen(n, false);
    std::vector<int> st = {0};
    seen[0] = true;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int u : rev[v])
        if (!seen[u]) {
          seen[u] = true;
          st.push_back(u);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  /// Number of root paths reaching each skeleton vertex, split by the
  /// maximal colour met after the root.
  std::vector<std::vector<std::pair<int, Mult>>> path_counts(const std::vector<SkelVertex>& vs) const {
    int n = static_cast<int>(vs.size());
    RegularRunTree g;
    for (const auto& v : vs) {
      RegularRunTree::Vertex gv{Label{false, as_[ty_a(v.ty)], ty_colour(v.ty)}, {}};
      for (const auto& [u, m] : v.internal) gv.succ.emplace_back(u, m);
      g.vertices.push_back(std::move(gv));
    }
    for (int u = 0; u < n; ++u) {
      g.vertices[u].succ.emplace_back(n + u, Mult(1));
      g.vertices.push_back({Label{true, Point::atom(u, "#"), 0}, {}});
    }
    std::vector<std::vector<std::pair<int, Mult>>> out(n);
    auto reached = leaves(g);
    for (const auto& [p, m] : reached.entries()) {
      if (p.kind() == PointKind::Coloured)
        out[p.inner().index()].emplace_back(p.colour(), m);
      else
        out[p.index()].emplace_back(0, m);
    }
    return out;
  }

  bool evaluate_core(const std::vector<SkelVertex>& vs) {
    if (!strongly_connected(vs) || !accepts_cycle(vs)) return false;
    int c0 = ty_colour(vs[0].ty);
    auto keep = [&](const Val& v) { return ok(bump(c0, v)); };
    auto loose = [&](const Val& v) { return ok(bump(f_.colours, v)); };
    auto counts = path_counts(vs);
    auto transform = [&](int u, const Val& v) {
      Val r = zero();
      for (const auto& [d, m] : counts[u]) r = plus(r, times(m, bump(d, v)));
      return r;
    };
    Bag acc{{zero(), {}}};
    for (std::size_t u = 0; u < vs.size(); ++u) {
      auto v = transform(static_cast<int>(u), rows_[vs[u].row].xs);
      acc = sum(acc, Bag{{v, {}}}, keep);
    }
    for (std::size_t u = 0; u < vs.size() && !acc.empty(); ++u)
      for (const auto& [ct, m] : vs[u].buckets) {
        Bag moved;
        auto key = std::make_pair(ct, m);
        auto hit = bucket_cache_.find(key);
        if (hit == bucket_cache_.end() || hit->second.first != elems.size())
          hit = bucket_cache_.insert_or_assign(key, std::make_pair(elems.size(), copies(ct, m, by_ty_[ct], loose))).first;
        for (const auto& [v, p] : hit->second.second) {
          Prov q = p;
          for (auto& k : q) k.at = static_cast<int>(u);
          moved.emplace(transform(static_cast<int>(u), v), std::move(q));
        }
        acc = sum(acc, moved, keep);
      }
    bool grew = false;
    int core_id = -1;
    for (auto& [v, p] : acc) {
      auto val = bump(c0, v);
      if (!ok(val) || find(vs[0].ty, val) >= 0) continue;
      if (core_id < 0) {
        core_id = static_cast<int>(cores.size());
        cores.push_back(vs);
      }
      insert({vs[0].ty, val, -1, core_id, std::move(p)});
      grew = true;
    }
    return grew;
  }

  /// Enumerates strongly connected skeletons of at most k vertices rooted
  /// at each child type, and adds the values they realize.
  bool cores_step(int k) {
    bool grew = false;
    for (int t : all_types()) {
      if (!child_type(t)) continue;
      std::vector<SkelVertex> vs{{t}};
      std::function<void(std::size_t)> vertex;
      std::function<void(std::size_t, std::size_t)> entry;
      vertex = [&](std::size_t i) {
        if (i == vs.size()) {
          grew |= evaluate_core(vs);
          return;
        }
        for (int ri : rows_of_[ty_a(vs[i].ty)]) {
          vs[i].row = ri;
          vs[i].internal.clear();
          vs[i].buckets.clear();
          entry(i, 0);
        }
      };
      entry = [&](std::size_t i, std::size_t j) {
        const auto& r = rows_[vs[i].row];
        if (j == r.kids.size()) {
          vertex(i + 1);
          return;
        }
        auto [ct, m] = r.kids[j];
        std::vector<int> targets;
        for (std::size_t u = 0; u < vs.size(); ++u)
          if (vs[u].ty == ct) targets.push_back(static_cast<int>(u));
        bool can_new = static_cast<int>(vs.size()) < k;
        int slots = static_cast<int>(targets.size()) + (can_new ? 1 : 0) + 1;  // last slot is the bucket
        std::vector<Mult> part(slots, Mult(0));
        auto apply = [&]() {
          auto saved_internal = vs[i].internal.size();
          auto saved_buckets = vs[i].buckets.size();
          auto saved_size = vs.size();
          for (std::size_t s = 0; s < targets.size(); ++s)
            if (!part[s].is_zero()) vs[i].internal.emplace_back(targets[s], part[s]);
          if (can_new && !part[targets.size()].is_zero()) {
            vs.push_back({ct});
            vs[i].internal.emplace_back(static_cast<int>(vs.size()) - 1, part[targets.size()]);
          }
          if (!part.back().is_zero()) vs[i].buckets.emplace_back(ct, part.back());
          entry(i, j + 1);
          vs.resize(saved_size);
          vs[i].internal.resize(saved_internal);
          vs[i].buckets.resize(saved_buckets);
        };
        if (m.is_omega()) {
          // Internal targets take 0, 1 or w copies, the bucket 0 or w; one part is infinite.
          std::function<void(int, bool)> go = [&](int s, bool inf) {
            if (s == slots) {
              if (inf) apply();
              return;
            }
            bool bucket = s == slots - 1;
            for (Mult opt : {Mult(0), Mult(1), Mult::omega()}) {
              if (bucket && opt == Mult(1)) continue;
              part[s] = opt;
              go(s + 1, inf || opt.is_omega());
            }
            part[s] = Mult(0);
          };
          go(0, false);
        } else {
          std::function<void(int, std::uint32_t)> go = [&](int s, std::uint32_t left) {
            if (s == slots - 1) {
              part[s] = Mult(left);
              apply();
              return;
            }
            for (std::uint32_t q = 0; q <= left; ++q) {
              part[s] = Mult(q);
              go(s + 1, left - q);
            }
            part[s] = Mult(0);
          };
          go(0, m.finite());
        }
      };
      vertex(0);
    }
    return grew;
  }

  /// True when no infinite branch can satisfy the acceptance condition, so
  /// the least fixpoint already decides every query.
  bool exact() const {
    if (mode_ == FixMode::Classic || mode_ == FixMode::Inductive) return true;
    int nt = static_cast<int>(by_ty_.size());
    std::vector<std::vector<int>> adj(nt);
    for (int t = 0; t < nt; ++t)
      for (int ri : rows_of_[ty_a(t)])
        for (const auto& [ct, m] : rows_[ri].kids) adj[t].push_back(ct);
    std::vector<int> top_colours;
    if (mode_ == FixMode::Coinductive)
      top_colours.push_back(f_.colours);
    else
      for (int e = 2; e <= f_.colours; e += 2) top_colours.push_back(e);
    for (int e : top_colours) {
      int count = 0;
      auto comp = detail::scc(
          nt,
          [&](int t) {
            std::vector<int> out;
            if (ty_colour(t) <= e)
              for (int u : adj[t])
                if (ty_colour(u) <= e) out.push_back(u);
            return out;
          },
          count);
      std::vector<int> size(count, 0);
      for (int t = 0; t < nt; ++t) size[comp[t]]++;
      for (int t = 0; t < nt; ++t) {
        if (ty_colour(t) > e) continue;
        if (mode_ == FixMode::Parity && ty_colour(t) != e) continue;
        bool cyc = size[comp[t]] > 1 ||
                   std::find(adj[t].begin(), adj[t].end(), t) != adj[t].end();
        if (cyc) return false;
      }
    }
    return true;
  }

  /// Greatest fixpoint of the one-step operator over the whole universe:
  /// every pair realized by some run-tree survives, so absence refutes.
  std::set<std::pair<int, Val>> over_approximation() const {
    std::vector<Val> universe;
    Val cur = zero();
    std::vector<std::uint32_t> domain;
    for (std::uint32_t k = 0; k <= many(); ++k) domain.push_back(k);
    domain.push_back(kW);
    std::function<void(int)> gen = [&](int i) {
      if (i == ncomp()) {
        universe.push_back(cur);
        return;
      }
      for (auto k : domain) {
        cur[i] = k;
        if (ok(cur)) gen(i + 1);
      }
      cur[i] = 0;
    };
    gen(0);
    Engine scratch = *this;
    scratch.elems.clear();
    scratch.index_.clear();
    for (auto& b : scratch.by_ty_) b.clear();
    // Leaves below a node only come from rows reachable from its type.
    int nt = static_cast<int>(by_ty_.size());
    std::vector<std::vector<bool>> reach(nt, std::vector<bool>(nx(), false));
    for (bool grew = true; grew;) {
      grew = false;
      for (int t = 0; t < nt; ++t)
        for (int ri : rows_of_[ty_a(t)]) {
          auto mark = [&](int i) {
            if (!reach[t][i]) reach[t][i] = grew = true;
          };
          for (int i = 0; i < ncomp(); ++i)
            if (rows_[ri].xs[i]) mark(i % nx());
          for (const auto& [ct, m] : rows_[ri].kids)
            for (int i = 0; i < nx(); ++i)
              if (reach[ct][i]) mark(i);
        }
    }
    for (int t : all_types())
      for (const auto& v : universe) {
        bool inside = true;
        for (int i = 0; i < ncomp(); ++i)
          if (v[i] && !reach[t][i % nx()]) inside = false;
        if (inside) scratch.insert({t, v});
      }
    std::vector<bool> alive(scratch.elems.size(), true);
    while (true) {
      std::vector<std::vector<int>> pool(by_ty_.size());
      for (std::size_t e = 0; e < scratch.elems.size(); ++e)
        if (alive[e]) pool[scratch.elems[e].ty].push_back(static_cast<int>(e));
      std::vector<bool> made(scratch.elems.size(), false);
      for (int t : all_types())
        for (int ri : rows_of_[ty_a(t)])
          for (const auto& [v, p] : scratch.row_step(t, rows_[ri], pool)) {
            int e = scratch.find(t, v);
            if (e >= 0) made[e] = true;
          }
      bool shrank = false;
      for (std::size_t e = 0; e < alive.size(); ++e)
        if (alive[e] && !made[e]) {
          alive[e] = false;
          shrank = true;
        }
      if (!shrank) break;
    }
    std::set<std::pair<int, Val>> out;
    for (std::size_t e = 0; e < alive.size(); ++e)
      if (alive[e]) out.insert({scratch.elems[e].ty, scratch.elems[e].val});
    return out;
  }

  /// Saturates the store: the least fixpoint, then cyclic cores of
  /// increasing size (for the infinitary modes) until `done` holds.
  /// Adds (t, no leaves) for every type t that roots an accepting run-tree
  /// without leaves. Such trees are the winning strategies of Even in the
  /// game where Even picks a leafless row and Odd a child, prioritized by
  /// colour; each element's witness is read off the positional strategy.
  void seed_leafless() {
    int nt = static_cast<int>(by_ty_.size());
    ParityGame g;
    int top = g.add_vertex(Player::Even, 0), bottom = g.add_vertex(Player::Odd, 1);
    g.add_edge(top, top);
    g.add_edge(bottom, bottom);
    std::vector<int> tv(nt);
    for (int t = 0; t < nt; ++t) tv[t] = g.add_vertex(Player::Even, mode_ == FixMode::Parity ? ty_colour(t) : 0);
    std::map<int, int> row_at;
    for (int t = 0; t < nt; ++t) {
      for (int ri : rows_of_[ty_a(t)]) {
        if (!rows_[ri].xs_ms.empty()) continue;
        int r = g.add_vertex(Player::Odd, 0);
        row_at[r] = ri;
        g.add_edge(tv[t], r);
        if (rows_[ri].kids.empty()) g.add_edge(r, top);
        for (const auto& [ct, m] : rows_[ri].kids) g.add_edge(r, tv[ct]);
      }
      if (g.succ[tv[t]].empty()) g.add_edge(tv[t], bottom);
    }
    auto sol = zielonka(g);
    for (int t = 0; t < nt; ++t) {
      if (sol.winner[tv[t]] != Player::Even || find(t, zero()) >= 0) continue;
      std::vector<SkelVertex> vs;
      std::map<int, int> at;
      std::function<int(int)> visit = [&](int u) -> int {
        if (auto it = at.find(u); it != at.end()) return it->second;
        int me = static_cast<int>(vs.size());
        at[u] = me;
        vs.push_back({u, row_at.at(sol.strategy[tv[u]]), {}, {}});
        for (const auto& [ct, m] : rows_[vs[me].row].kids) {
          int c = visit(ct);
          vs[me].internal.emplace_back(c, m);
        }
        return me;
      };
      visit(t);
      int core_id = static_cast<int>(cores.size());
      cores.push_back(std::move(vs));
      insert({t, zero(), -1, core_id, {}});
    }
  }

  void saturate(int witness, const std::function<bool()>& done) {
    lfp();
    if (done() || exact()) return;
    for (int k = 1; k <= witness; ++k) {
      while (cores_step(k)) {
        lfp();
        if (done()) return;
      }
      if (done()) return;
    }
  }

  // --- witnesses -----------------------------------------------------------

  RegularRunTree witness(int root) const {
    RegularRunTree g;
    std::map<int, int> memo;
    std::map<Label, int> xleaf;
    auto new_vertex = [&](Label l) {
      g.vertices.push_back({std::move(l), {}});
      return static_cast<int>(g.vertices.size()) - 1;
    };
    auto label_of = [&](int t) { return Label{false, as_[ty_a(t)], ty_colour(t)}; };
    auto leaf = [&](const Point& p) {
      Label l = f_.coloured() ? Label{true, p.inner(), p.colour()} : Label{true, p, 0};
      auto it = xleaf.find(l);
      if (it != xleaf.end()) return it->second;
      int v = new_vertex(l);
      xleaf[l] = v;
      return v;
    };
    auto add_edge = [&](int from, int to, Mult m) {
      auto& succ = g.vertices[from].succ;
      for (auto& [u, k] : succ)
        if (u == to) {
          k += m;
          return;
        }
      succ.emplace_back(to, m);
    };
    std::function<int(int)> build = [&](int e) -> int {
      if (auto it = memo.find(e); it != memo.end()) return it->second;
      const auto& el = elems[e];
      if (el.core < 0) {
        int v = new_vertex(label_of(el.ty));
        memo[e] = v;
        for (const auto& [p, m] : rows_[el.row].xs_ms.entries()) add_edge(v, leaf(p), m);
        for (const auto& k : el.kids) add_edge(v, build(k.elem), k.m);
        return v;
      }
      const auto& vs = cores[el.core];
      std::vector<int> ids;
      for (const auto& sv : vs) ids.push_back(new_vertex(label_of(sv.ty)));
      memo[e] = ids[0];
      for (std::size_t u = 0; u < vs.size(); ++u) {
        for (const auto& [p, m] : rows_[vs[u].row].xs_ms.entries()) add_edge(ids[u], leaf(p), m);
        for (const auto& [t, m] : vs[u].internal) add_edge(ids[u], ids[t], m);
      }
      for (const auto& k : el.kids) add_edge(ids[k.at], build(k.elem), k.m);
      return ids[0];
    };
    g.root = build(root);
    return g;
  }

 private:
  const FixTable& f_;
  FixMode mode_;
  int ncol_ = 1;
  std::uint32_t cap_ = 0;
  Universe uni_;
  std::vector<Point> xs_, as_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> rows_of_;
  std::vector<std::vector<int>> by_ty_;
  std::map<std::pair<int, Val>, int> index_;
  std::map<std::pair<int, Mult>, std::pair<std::size_t, Bag>> bucket_cache_;
};

}  // namespace fixdetail

/// Is (w, a) in the fixpoint of f under `mode`? Decided exactly except for
/// infinitary modes with w-leaves, which search witnesses whose cyclic
/// cores have at most `witness_bound` vertices and refute through an
/// over-approximation, answering BoundLimited in between.
inline FixVerdict fix_member(const FixTable& f, FixMode mode, const Multiset& w, const Point& a, int witness_bound) {
  if (!well_typed(a, f.A)) throw TypeError("query point " + a.str() + " is not a point of " + f.A.str());
  FixVerdict out;
  if (mode == FixMode::Classic && w.has_omega()) return out;
  std::vector<Point> wx;
  for (const auto& [p, m] : w.entries()) {
    if (!well_typed(p, f.coloured() ? Object::box(f.X, f.colours) : f.X))
      throw TypeError("leaf " + p.str() + " is not a point of the parameter object");
    wx.push_back(f.coloured() ? p.inner() : p);
  }
  fixdetail::Engine eng(f, mode, wx, {a});
  fixdetail::Engine::Universe u;
  u.limit.assign(eng.nx(), 0);
  std::uint32_t cap = 0;
  for (const auto& [p, m] : w.entries()) {
    int xi = eng.x_index(f.coloured() ? p.inner() : p);
    auto& lim = u.limit[xi];
    if (m.is_omega() || lim == fixdetail::kW)
      lim = fixdetail::kW;
    else
      lim += m.finite();
    if (!m.is_omega()) cap = std::max(cap, m.finite());
  }
  for (auto lim : u.limit)
    if (lim != fixdetail::kW) cap = std::max(cap, lim);
  eng.set_universe(u, cap);
  auto target = *eng.of(w);
  int rt = eng.root_type(eng.a_index(a));
  auto found = [&] { return eng.find(rt, target) >= 0; };
  // With finitely many leaves, only finitely many nodes lie above a leaf;
  // everything else is a leafless subtree, so seeding those and closing
  // under derivations decides the query.
  bool finite = !w.has_omega();
  bool infinitary = mode == FixMode::Coinductive || mode == FixMode::Parity;
  if (infinitary && finite) eng.seed_leafless();
  eng.lfp();
  if (!found()) {
    if (finite || eng.exact() || !eng.over_approximation().count({rt, target})) return out;
    eng.saturate(witness_bound, found);
  }
  if (int e = eng.find(rt, target); e >= 0) {
    out.verdict = Verdict::True;
    out.witness = eng.witness(e);
    return out;
  }
  out.verdict = Verdict::BoundLimited;
  return out;
}

inline FixVerdict fix_member(const FixTable& f, FixMode mode, const Multiset& w, const Point& a,
                             const FixBounds& b = {}) {
  return fix_member(f, mode, w, a, b.witness);
}

/// Every (w, a) within the leaf bounds that the fixpoint contains, with
/// the pairs left undecided by the witness bound listed separately.
inline FixEnumeration fix_enumerate(const FixTable& f, FixMode mode, const FixBounds& b = {}) {
  fixdetail::Engine eng(f, mode, {}, {});
  fixdetail::Engine::Universe u;
  u.by_limit = false;
  u.max_total = static_cast<std::uint32_t>(b.leaves.max_total);
  u.omega = b.leaves.allow_omega && mode != FixMode::Classic;
  eng.set_universe(u, u.max_total);
  FixEnumeration out;
  bool infinitary = mode == FixMode::Coinductive || mode == FixMode::Parity;
  if (infinitary) eng.seed_leafless();
  if (infinitary && !u.omega) {
    eng.lfp();
    out.exact = true;
  } else {
    eng.saturate(b.witness, [] { return false; });
    out.exact = eng.exact();
  }
  auto fits_out = [&](const fixdetail::Val& v) {
    if (eng.has_many(v)) return false;
    return fits(Point::bag(eng.to_multiset(v)), b.leaves);
  };
  std::set<std::pair<Multiset, Point>> found, limited;
  for (const auto& el : eng.elems) {
    if (eng.ty_colour(el.ty) != 0 || !fits_out(el.val)) continue;
    found.insert({eng.to_multiset(el.val), eng.a_points()[eng.ty_a(el.ty)]});
  }
  if (!out.exact)
    for (const auto& [t, v] : eng.over_approximation()) {
      if (eng.ty_colour(t) != 0 || !fits_out(v)) continue;
      std::pair<Multiset, Point> p{eng.to_multiset(v), eng.a_points()[eng.ty_a(t)]};
      if (infinitary && !p.first.has_omega()) continue;
      if (!found.count(p)) limited.insert(p);
    }
  out.pairs.assign(found.begin(), found.end());
  out.bound_limited.assign(limited.begin(), limited.end());
  return out;
}

/// Independent least-fixpoint oracle for uncoloured, w-free bodies:
/// Kleene iteration from the empty relation, truncated to leaf totals of
/// at most `max_total`.
inline std::set<std::pair<Multiset, Point>> kleene_lfp(const FixTable& f, int max_total) {
  if (f.coloured()) throw Error("kleene_lfp handles uncoloured bodies only");
  for (const auto& r : f.rows)
    if (r.xs.has_omega() || r.as.has_omega()) throw Error("kleene_lfp needs a w-free body");
  std::set<std::pair<Multiset, Point>> rel;
  while (true) {
    auto next = rel;
    for (const auto& r : f.rows) {
      std::vector<Point> kids;
      for (const auto& [p, m] : r.as.entries())
        for (std::uint32_t i = 0; i < m.finite(); ++i) kids.push_back(p);
      std::function<void(std::size_t, const Multiset&)> go = [&](std::size_t i, const Multiset& acc) {
        if (static_cast<int>(acc.weight()) > max_total) return;
        if (i == kids.size()) {
          next.insert({acc, r.b});
          return;
        }
        for (const auto& [w, a] : rel)
          if (a == kids[i]) go(i + 1, acc + w);
      };
      go(0, r.xs);
    }
    if (next == rel) return rel;
    rel = std::move(next);
  }
}

}  // namespace llrel
