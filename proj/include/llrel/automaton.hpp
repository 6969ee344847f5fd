#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "llrel/fixpoint.hpp"
#include "llrel/game.hpp"

namespace llrel {

/// One conjunct (d, q) of a transition: send state q in direction d, where
/// direction 1 is the leaf side of the comb and 2 continues the spine.
struct Conjunct {
  int dir;
  Label state;
  Mult m;
};

/// Alternating tree automaton over the comb alphabet {node: 2, leaf: 0}
/// whose runs are the run-trees of a fixpoint body.
struct AltAutomaton {
  FixTable f;
  std::vector<Label> states;
  std::map<Label, std::vector<std::vector<Conjunct>>> on_node;  // disjunction of conjunctions
  std::map<Label, bool> on_leaf;

  std::string formula(const Label& q, bool node) const {
    if (!node) return on_leaf.at(q) ? "T" : "F";
    const auto& ds = on_node.at(q);
    if (ds.empty()) return "F";
    std::string s;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i) s += " | ";
      if (ds[i].empty()) {
        s += "T";
        continue;
      }
      for (std::size_t j = 0; j < ds[i].size(); ++j) {
        const auto& c = ds[i][j];
        if (j) s += " & ";
        s += "(" + std::to_string(c.dir) + "," + c.state.tagged().str() + ")";
        if (c.m != Mult(1)) s += "^" + c.m.str();
      }
    }
    return s;
  }
};

inline AltAutomaton build_automaton(const FixTable& f) {
  AltAutomaton aut{f, {}, {}, {}};
  auto colours = f.coloured() ? f.colours : 0;
  for (const auto& a : points_of(f.A, {}))
    for (int c = 0; c <= colours; ++c) aut.states.push_back({false, a, c});
  for (const auto& x : points_of(f.X, {}))
    for (int c = f.coloured() ? 1 : 0; c <= colours; ++c) aut.states.push_back({true, x, c});
  auto label = [&](bool is_x, const Point& p) {
    return f.coloured() ? Label{is_x, p.inner(), p.colour()} : Label{is_x, p, 0};
  };
  for (const auto& q : aut.states) {
    auto& ds = aut.on_node[q];
    bool leaf = q.is_x;
    if (!q.is_x)
      for (const auto& r : f.rows) {
        if (!(r.b == q.point)) continue;
        std::vector<Conjunct> conj;
        for (const auto& [p, m] : r.xs.entries()) conj.push_back({1, label(true, p), m});
        for (const auto& [p, m] : r.as.entries()) conj.push_back({2, label(false, p), m});
        if (conj.empty()) leaf = true;
        ds.push_back(std::move(conj));
      }
    aut.on_leaf[q] = leaf;
  }
  return aut;
}

enum class GameVertexKind { AState, XState, Row, Top, Bottom };

/// The membership game of an automaton: Even picks rows at state vertices,
/// Odd picks a child at row vertices. Row vertices list one edge per child
/// occurrence, so strategy trees unfold to run-trees.
struct AcceptanceGame {
  ParityGame game;
  std::vector<GameVertexKind> kind;
  std::vector<Label> label;                 // for state vertices
  std::vector<std::vector<Conjunct>> conj;  // for row vertices
  std::map<Label, int> state_vertex;
  int top = -1, bottom = -1;
};

inline AcceptanceGame acceptance_game(const AltAutomaton& aut, FixMode mode) {
  if (mode == FixMode::Parity && !aut.f.coloured()) throw Error("parity mode needs a coloured fixpoint body");
  AcceptanceGame g;
  auto add = [&](Player p, int prio, GameVertexKind k, const std::string& name, Label l = {}) {
    g.kind.push_back(k);
    g.label.push_back(std::move(l));
    g.conj.emplace_back();
    return g.game.add_vertex(p, prio, name);
  };
  g.top = add(Player::Even, 0, GameVertexKind::Top, "T");
  g.bottom = add(Player::Odd, 1, GameVertexKind::Bottom, "F");
  g.game.add_edge(g.top, g.top);
  g.game.add_edge(g.bottom, g.bottom);
  auto state_prio = [&](const Label& q) {
    switch (mode) {
      case FixMode::Classic:
      case FixMode::Inductive: return 1;
      case FixMode::Coinductive: return 0;
      default: return q.colour;
    }
  };
  int inner_prio = (mode == FixMode::Classic || mode == FixMode::Inductive) ? 1 : 0;
  for (const auto& q : aut.states) {
    int v = add(Player::Even, q.is_x ? 0 : state_prio(q), q.is_x ? GameVertexKind::XState : GameVertexKind::AState,
                q.str(), q);
    g.state_vertex[q] = v;
    if (q.is_x) g.game.add_edge(v, g.top);
  }
  for (const auto& q : aut.states) {
    if (q.is_x) continue;
    int v = g.state_vertex.at(q);
    int i = 0;
    for (const auto& conj : aut.on_node.at(q)) {
      ++i;
      bool infinite = std::any_of(conj.begin(), conj.end(), [](const Conjunct& c) { return c.m.is_omega(); });
      if (mode == FixMode::Classic && infinite) continue;
      int r = add(Player::Odd, inner_prio, GameVertexKind::Row, q.str() + "/" + std::to_string(i));
      g.game.add_edge(v, r);
      g.conj[r] = conj;
      if (conj.empty()) g.game.add_edge(r, g.top);
      for (const auto& c : conj) {
        int target = g.state_vertex.at(c.state);
        std::uint32_t copies = c.m.is_omega() ? 1 : c.m.finite();
        for (std::uint32_t k = 0; k < copies; ++k) g.game.add_edge(r, target);
      }
    }
    if (g.game.succ[v].empty()) g.game.add_edge(v, g.bottom);
  }
  return g;
}

inline std::string to_dot(const AltAutomaton& aut) {
  std::string s = "digraph automaton {\n  rankdir=LR;\n";
  int i = 0;
  std::map<Label, int> id;
  for (const auto& q : aut.states) {
    id[q] = i;
    s += "  q" + std::to_string(i++) + " [label=\"" + dot_escape(q.str()) + "\\nleaf: " + dot_escape(aut.formula(q, false)) +
         "\", shape=" + (q.is_x ? "box" : "ellipse") + "];\n";
  }
  for (const auto& q : aut.states) {
    int d = 0;
    for (const auto& conj : aut.on_node.at(q)) {
      std::string dn = "d" + std::to_string(id[q]) + "_" + std::to_string(d++);
      s += "  " + dn + " [label=\"&\", shape=point];\n";
      s += "  q" + std::to_string(id[q]) + " -> " + dn + ";\n";
      for (const auto& c : conj)
        s += "  " + dn + " -> q" + std::to_string(id[c.state]) + " [label=\"" + std::to_string(c.dir) +
             (c.m != Mult(1) ? " x" + c.m.str() : "") + "\"];\n";
    }
  }
  return s + "}\n";
}

/// The regular run-tree read off a positional strategy of Even that wins
/// from the state of a: one vertex per state reached, with the chosen row.
inline RegularRunTree strategy_witness(const AcceptanceGame& g, const GameSolution& s, const Point& a) {
  RegularRunTree t;
  std::map<int, int> id;
  std::function<int(int)> visit = [&](int v) -> int {
    if (auto it = id.find(v); it != id.end()) return it->second;
    int me = static_cast<int>(t.vertices.size());
    id[v] = me;
    t.vertices.push_back({g.label[v], {}});
    if (g.kind[v] != GameVertexKind::AState) return me;
    int r = s.strategy[v];
    if (r < 0 || g.kind[r] != GameVertexKind::Row) throw Error("strategy does not pick a row at " + g.label[v].str());
    for (const auto& c : g.conj[r]) {
      int u = visit(g.state_vertex.at(c.state));
      t.vertices[me].succ.emplace_back(u, c.m);
    }
    return me;
  };
  t.root = visit(g.state_vertex.at(Label{false, a, 0}));
  return t;
}

/// Canonical text of a finite run-tree: children sorted, so isomorphic
/// trees share an encoding.
inline std::string canonical(const FiniteRunTree& t, int v = 0) {
  const auto& n = t.nodes[v];
  if (n.label.is_x) return n.label.str();
  std::vector<std::string> kids;
  for (int c : n.children) kids.push_back(canonical(t, c));
  std::sort(kids.begin(), kids.end());
  std::string s = n.label.str() + "(";
  for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i];
  return s + ")";
}

namespace autdetail {

/// Encodings of all trees combining one choice per child, within `budget`
/// nodes in total (the parent included).
inline void combine(const std::vector<std::vector<std::pair<std::string, int>>>& options, const std::string& head,
                    int budget, std::vector<std::pair<std::string, int>>& out) {
  std::vector<std::string> chosen;
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int used) {
    if (i == options.size()) {
      auto kids = chosen;
      std::sort(kids.begin(), kids.end());
      std::string s = head + "(";
      for (std::size_t k = 0; k < kids.size(); ++k) s += (k ? "," : "") + kids[k];
      out.emplace_back(s + ")", used);
      return;
    }
    for (const auto& [enc, size] : options[i]) {
      if (used + size > budget) continue;
      chosen.push_back(enc);
      go(i + 1, used + size);
      chosen.pop_back();
    }
  };
  go(0, 1);
}

}  // namespace autdetail

/// Finite run-trees of f rooted at a with at most `max_nodes` nodes, found
/// by direct search over the rows; returned as canonical encodings.
inline std::set<std::string> finite_runtrees(const FixTable& f, const Point& a, int max_nodes) {
  std::map<std::pair<Label, int>, std::vector<std::pair<std::string, int>>> memo;
  std::function<const std::vector<std::pair<std::string, int>>&(const Label&, int)> trees =
      [&](const Label& l, int budget) -> const std::vector<std::pair<std::string, int>>& {
    auto key = std::make_pair(l, budget);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<std::pair<std::string, int>> out;
    if (budget >= 1) {
      if (l.is_x) {
        out.emplace_back(l.str(), 1);
      } else {
        for (const auto& r : f.rows) {
          if (!(r.b == l.point) || r.xs.has_omega() || r.as.has_omega()) continue;
          std::vector<Label> kids;
          for (const auto& side : {std::make_pair(true, &r.xs), std::make_pair(false, &r.as)})
            for (const auto& [p, m] : side.second->entries())
              for (std::uint32_t k = 0; k < m.finite(); ++k)
                kids.push_back(f.coloured() ? Label{side.first, p.inner(), p.colour()} : Label{side.first, p, 0});
          if (static_cast<int>(kids.size()) + 1 > budget) continue;
          std::vector<std::vector<std::pair<std::string, int>>> options;
          for (const auto& k : kids) options.push_back(trees(k, budget - static_cast<int>(kids.size())));
          autdetail::combine(options, l.str(), budget, out);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::set<std::string> res;
  for (const auto& [enc, size] : trees(Label{false, a, 0}, max_nodes)) res.insert(enc);
  return res;
}

/// Finite strategy trees of the acceptance game from the state vertex of
/// a in which every play reaches the top sink, read back as run-trees:
/// state vertices become nodes and each row vertex lists the children.
inline std::set<std::string> strategy_runtrees(const AcceptanceGame& g, const Point& a, int max_nodes) {
  std::map<std::pair<int, int>, std::vector<std::pair<std::string, int>>> memo;
  std::function<const std::vector<std::pair<std::string, int>>&(int, int)> trees =
      [&](int v, int budget) -> const std::vector<std::pair<std::string, int>>& {
    auto key = std::make_pair(v, budget);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<std::pair<std::string, int>> out;
    if (budget >= 1) {
      if (g.kind[v] == GameVertexKind::XState) {
        out.emplace_back(g.label[v].str(), 1);
      } else if (g.kind[v] == GameVertexKind::AState) {
        for (int r : g.game.succ[v]) {
          if (g.kind[r] != GameVertexKind::Row) continue;
          std::vector<int> kids;
          for (int u : g.game.succ[r])
            if (u != g.top) kids.push_back(u);
          if (static_cast<int>(kids.size()) + 1 > budget) continue;
          std::vector<std::vector<std::pair<std::string, int>>> options;
          for (int k : kids) options.push_back(trees(k, budget - static_cast<int>(kids.size())));
          autdetail::combine(options, g.label[v].str(), budget, out);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::set<std::string> res;
  for (const auto& [enc, size] : trees(g.state_vertex.at(Label{false, a, 0}), max_nodes)) res.insert(enc);
  return res;
}

}  // namespace llrel
