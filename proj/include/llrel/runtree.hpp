#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "llrel/eval.hpp"

namespace llrel {

/// One row ((xs, as), b) of a fixpoint body f : E X (x) E A -o A. In the
/// coloured case, xs and as hold coloured points <c>x and <c>a.
struct FixRow {
  Multiset xs, as;
  Point b;

  friend auto operator<=>(const FixRow&, const FixRow&) = default;
  friend bool operator==(const FixRow&, const FixRow&) = default;
};

/// A fixpoint body given as a finite table, with `colours` = 0 for the
/// uncoloured exponential.
struct FixTable {
  Object X, A;
  int colours = 0;
  std::vector<FixRow> rows;

  bool coloured() const { return colours > 0; }
  Object exp(const Object& o) const { return coloured() ? Object::bang(Object::box(o, colours)) : Object::bang(o); }
  Object dom() const { return Object::tensor(exp(X), exp(A)); }

  Rel rel() const {
    std::vector<std::pair<Point, Point>> ps;
    for (const auto& r : rows) ps.emplace_back(Point::pair(Point::bag(r.xs), Point::bag(r.as)), r.b);
    return Rel::table(dom(), A, ps);
  }

  static FixTable from_rel(const Rel& f, const Object& x, const Object& a, int colours) {
    FixTable t{x, a, colours, {}};
    if (f.kind() != RelKind::Table) throw Error("fixpoint body must be a finite table");
    if (!(f.dom() == t.dom()) || !(f.cod() == a))
      throw TypeError("fixpoint body has type " + f.dom().str() + " -o " + f.cod().str() + ", expected " +
                      t.dom().str() + " -o " + a.str());
    for (const auto& [k, bs] : f.node().table)
      for (const auto& b : bs) t.rows.push_back({k.first().multiset(), k.second().multiset(), b});
    std::sort(t.rows.begin(), t.rows.end());
    return t;
  }
};

/// Node label: an element of X or A, with its colour (0 when uncoloured,
/// and always 0 at the root).
struct Label {
  bool is_x = false;
  Point point;
  int colour = 0;

  Point tagged() const { return colour > 0 ? Point::coloured(colour, point) : point; }
  std::string str() const { return (is_x ? "X:" : "A:") + tagged().str(); }
  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;
};

struct FiniteRunTree {
  struct Node {
    Label label;
    std::vector<int> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root
};

/// Finite graph whose unfolding from `root` is a run-tree. Successor bags
/// carry multiplicities in N u {w}.
struct RegularRunTree {
  struct Vertex {
    Label label;
    std::vector<std::pair<int, Mult>> succ;
  };
  std::vector<Vertex> vertices;
  int root = 0;
};

enum class AcceptMode { Finite, NoInfiniteBranch, Parity };

namespace detail {

/// The multiset of (coloured) labels of a successor list, split by side.
inline std::pair<Multiset, Multiset> children_bags(const std::vector<std::pair<Label, Mult>>& kids) {
  std::vector<Multiset::Entry> xs, as;
  for (const auto& [l, m] : kids) (l.is_x ? xs : as).emplace_back(l.tagged(), m);
  return {Multiset(xs), Multiset(as)};
}

inline bool row_exists(const FixTable& f, const Point& b, const Multiset& xs, const Multiset& as) {
  return std::binary_search(f.rows.begin(), f.rows.end(), FixRow{xs, as, b});
}

inline bool label_ok(const FixTable& f, const Label& l, bool root) {
  if (root) return !l.is_x && l.colour == 0 && well_typed(l.point, f.A);
  if (f.coloured() != (l.colour > 0)) return false;
  if (l.colour > f.colours) return false;
  return well_typed(l.point, l.is_x ? f.X : f.A);
}

}  // namespace detail

/// Checks the run-tree conditions: root labelled a, X-nodes are leaves, and
/// every A-node's children (none for a leaf) form a row of f for its label.
inline bool validate_finite(const FixTable& f, const Point& a, const FiniteRunTree& t) {
  if (t.nodes.empty() || !(t.nodes[0].label.point == a)) return false;
  std::vector<int> seen(t.nodes.size(), 0);
  std::function<bool(int, bool)> go = [&](int v, bool root) {
    if (v < 0 || v >= static_cast<int>(t.nodes.size()) || seen[v]++) return false;
    const auto& n = t.nodes[v];
    if (!detail::label_ok(f, n.label, root)) return false;
    if (n.label.is_x) return n.children.empty();
    std::vector<std::pair<Label, Mult>> kids;
    for (int c : n.children) {
      if (c < 0 || c >= static_cast<int>(t.nodes.size())) return false;
      kids.emplace_back(t.nodes[c].label, Mult(1));
    }
    auto [xs, as] = detail::children_bags(kids);
    if (!detail::row_exists(f, n.label.point, xs, as)) return false;
    for (int c : n.children)
      if (!go(c, false)) return false;
    return true;
  };
  if (!go(0, true)) return false;
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

inline std::vector<bool> reachable(const RegularRunTree& g) {
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<int> stack = {g.root};
  seen[g.root] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [u, m] : g.vertices[v].succ)
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
  }
  return seen;
}

/// Same conditions as validate_finite, checked on every vertex of the
/// graph; additionally every vertex must be reachable from the root. In
/// the coloured case the root (which has no colour) cannot be re-entered.
inline bool validate_regular(const FixTable& f, const Point& a, const RegularRunTree& g) {
  int n = static_cast<int>(g.vertices.size());
  if (g.root < 0 || g.root >= n || !(g.vertices[g.root].label.point == a)) return false;
  for (int v = 0; v < n; ++v) {
    const auto& vx = g.vertices[v];
    if (!detail::label_ok(f, vx.label, v == g.root)) return false;
    for (const auto& [u, m] : vx.succ)
      if (u < 0 || u >= n || (u == g.root && f.coloured()) || m.is_zero()) return false;
    if (vx.label.is_x) {
      if (!vx.succ.empty()) return false;
      continue;
    }
    std::vector<std::pair<Label, Mult>> kids;
    for (const auto& [u, m] : vx.succ) kids.emplace_back(g.vertices[u].label, m);
    auto [xs, as] = detail::children_bags(kids);
    if (!detail::row_exists(f, vx.label.point, xs, as)) return false;
  }
  auto r = reachable(g);
  return std::all_of(r.begin(), r.end(), [](bool b) { return b; });
}

/// Leaves of a finite run-tree. In the coloured case a leaf's colour is the
/// maximum colour on its path, root excluded.
inline Multiset leaves(const FiniteRunTree& t) {
  std::vector<Multiset::Entry> out;
  std::function<void(int, int)> go = [&](int v, int m) {
    const auto& n = t.nodes[v];
    int here = std::max(m, n.label.colour);
    if (n.label.is_x) {
      out.emplace_back(here > 0 ? Point::coloured(here, n.label.point) : n.label.point, Mult(1));
      return;
    }
    for (int c : n.children) go(c, here);
  };
  if (!t.nodes.empty()) go(0, 0);
  return Multiset(out);
}

namespace detail {

/// Strongly connected components (Tarjan); `comp[v]` numbers components in
/// reverse topological order.
inline std::vector<int> scc(int n, const std::function<std::vector<int>(int)>& succ, int& count) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on(n, false);
  int next = 0;
  count = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on[v] = true;
    for (int u : succ(v)) {
      if (index[u] < 0) {
        visit(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on[u]) {
        low[v] = std::min(low[v], index[u]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int u = stack.back();
        stack.pop_back();
        on[u] = false;
        comp[u] = count;
        if (u == v) break;
      }
      ++count;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comp;
}

}  // namespace detail

/// Leaves of the unfolding: each X-vertex reached with path-maximal colour
/// c contributes the number of root paths reaching it that way, which is
/// infinite when such a path crosses a cycle or an infinite edge.
inline Multiset leaves(const RegularRunTree& g) {
  // Product of the graph with the running maximum colour.
  int maxc = 0;
  for (const auto& v : g.vertices) maxc = std::max(maxc, v.label.colour);
  int width = maxc + 1;
  auto id = [&](int v, int c) { return v * width + c; };
  int n = static_cast<int>(g.vertices.size()) * width;
  auto edges = [&](int s) {
    std::vector<std::pair<int, Mult>> out;
    int v = s / width, c = s % width;
    for (const auto& [u, m] : g.vertices[v].succ) out.emplace_back(id(u, std::max(c, g.vertices[u].label.colour)), m);
    return out;
  };
  int start = id(g.root, 0);
  std::vector<bool> reach(n, false);
  std::vector<int> stack = {start};
  reach[start] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (const auto& [u, m] : edges(s))
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
  }
  int ncomp = 0;
  auto comp = detail::scc(
      n,
      [&](int s) {
        std::vector<int> out;
        if (reach[s])
          for (const auto& [u, m] : edges(s)) out.push_back(u);
        return out;
      },
      ncomp);
  std::vector<int> comp_size(ncomp, 0);
  std::vector<bool> cyclic(ncomp, false);
  for (int s = 0; s < n; ++s) comp_size[comp[s]]++;
  for (int s = 0; s < n; ++s)
    if (reach[s])
      for (const auto& [u, m] : edges(s))
        if (u == s) cyclic[comp[s]] = true;
  for (int c = 0; c < ncomp; ++c)
    if (comp_size[c] > 1) cyclic[c] = true;

  // Components are numbered in reverse topological order.
  std::vector<std::vector<int>> members(ncomp);
  for (int s = 0; s < n; ++s)
    if (reach[s]) members[comp[s]].push_back(s);
  std::vector<Mult> count(n, Mult(0));
  count[start] = Mult(1);
  for (int c = ncomp - 1; c >= 0; --c) {
    if (members[c].empty()) continue;
    if (cyclic[c])
      for (int s : members[c])
        if (!count[s].is_zero()) {
          for (int t : members[c]) count[t] = Mult::omega();
          break;
        }
    for (int s : members[c])
      for (const auto& [u, m] : edges(s))
        if (comp[u] != c) count[u] += count[s] * m;
  }
  std::vector<Multiset::Entry> out;
  for (int s = 0; s < n; ++s) {
    int v = s / width, c = s % width;
    if (!reach[s] || !g.vertices[v].label.is_x || count[s].is_zero()) continue;
    const auto& p = g.vertices[v].label.point;
    out.emplace_back(c > 0 ? Point::coloured(c, p) : p, count[s]);
  }
  return Multiset(out);
}

/// True iff no cycle reachable from the root has an odd maximal colour,
/// by recursive decomposition into strongly connected components.
inline bool check_cycles_even(const RegularRunTree& g) {
  auto reach = reachable(g);
  int n = static_cast<int>(g.vertices.size());
  std::function<bool(const std::vector<bool>&)> ok = [&](const std::vector<bool>& alive) {
    int ncomp = 0;
    auto comp = detail::scc(
        n,
        [&](int v) {
          std::vector<int> out;
          if (alive[v])
            for (const auto& [u, m] : g.vertices[v].succ)
              if (alive[u]) out.push_back(u);
          return out;
        },
        ncomp);
    std::vector<std::vector<int>> members(ncomp);
    for (int v = 0; v < n; ++v)
      if (alive[v]) members[comp[v]].push_back(v);
    for (const auto& ms : members) {
      if (ms.empty()) continue;
      bool nontrivial = ms.size() > 1;
      if (!nontrivial)
        for (const auto& [u, m] : g.vertices[ms[0]].succ) nontrivial |= u == ms[0];
      if (!nontrivial) continue;
      int top = 0;
      for (int v : ms) top = std::max(top, g.vertices[v].label.colour);
      // In a nontrivial SCC every vertex lies on a cycle inside it.
      if (top % 2 == 1) return false;
      std::vector<bool> rest(n, false);
      for (int v : ms) rest[v] = g.vertices[v].label.colour != top;
      if (!ok(rest)) return false;
    }
    return true;
  };
  return ok(reach);
}

inline bool has_reachable_cycle(const RegularRunTree& g) {
  auto reach = reachable(g);
  int n = static_cast<int>(g.vertices.size());
  int ncomp = 0;
  auto comp = detail::scc(
      n,
      [&](int v) {
        std::vector<int> out;
        if (reach[v])
          for (const auto& [u, m] : g.vertices[v].succ) out.push_back(u);
        return out;
      },
      ncomp);
  std::vector<int> size(ncomp, 0);
  for (int v = 0; v < n; ++v)
    if (reach[v]) size[comp[v]]++;
  for (int v = 0; v < n; ++v) {
    if (!reach[v]) continue;
    if (size[comp[v]] > 1) return true;
    for (const auto& [u, m] : g.vertices[v].succ)
      if (u == v) return true;
  }
  return false;
}

inline bool accept(const RegularRunTree& g, AcceptMode mode) {
  switch (mode) {
    case AcceptMode::Finite: {
      auto reach = reachable(g);
      for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (reach[v])
          for (const auto& [u, m] : g.vertices[v].succ)
            if (m.is_omega()) return false;
      return !has_reachable_cycle(g);
    }
    case AcceptMode::NoInfiniteBranch: return !has_reachable_cycle(g);
    case AcceptMode::Parity: return check_cycles_even(g);
  }
  return false;
}

/// A finite tree is always finite; parity holds vacuously.
inline bool accept(const FiniteRunTree&, AcceptMode) { return true; }

inline RegularRunTree to_regular(const FiniteRunTree& t) {
  RegularRunTree g;
  for (const auto& n : t.nodes) {
    RegularRunTree::Vertex v{n.label, {}};
    for (int c : n.children) v.succ.emplace_back(c, Mult(1));
    g.vertices.push_back(std::move(v));
  }
  return g;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string to_dot(const RegularRunTree& g, const std::string& name = "runtree") {
  std::string s = "digraph " + name + " {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& l = g.vertices[v].label;
    s += "  v" + std::to_string(v) + " [label=\"" + dot_escape(l.tagged().str()) + "\", shape=" +
         (l.is_x ? "box" : "ellipse") + (static_cast<int>(v) == g.root ? ", peripheries=2" : "") + "];\n";
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    for (const auto& [u, m] : g.vertices[v].succ)
      s += "  v" + std::to_string(v) + " -> v" + std::to_string(u) + " [label=\"" + m.str() + "\"];\n";
  return s + "}\n";
}

inline std::string to_dot(const FiniteRunTree& t, const std::string& name = "runtree") {
  return to_dot(to_regular(t), name);
}

}  // namespace llrel
