#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "llrel/mult.hpp"

namespace llrel {

enum class Player { Even = 0, Odd = 1 };

inline Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }
inline const char* to_string(Player p) { return p == Player::Even ? "even" : "odd"; }

/// A finite parity game under the max-parity condition: a play is won by
/// Even iff the greatest priority seen infinitely often is even.
struct ParityGame {
  std::vector<Player> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> succ;
  std::vector<std::string> name;

  int size() const { return static_cast<int>(owner.size()); }

  int add_vertex(Player p, int prio, std::string n = "") {
    owner.push_back(p);
    priority.push_back(prio);
    succ.emplace_back();
    name.push_back(n.empty() ? "v" + std::to_string(owner.size() - 1) : std::move(n));
    return size() - 1;
  }
  void add_edge(int from, int to) { succ[from].push_back(to); }

  /// Throws unless every vertex has a successor and edges are in range.
  void validate() const {
    for (int v = 0; v < size(); ++v) {
      if (succ[v].empty()) throw Error("game vertex " + name[v] + " has no successor");
      for (int u : succ[v])
        if (u < 0 || u >= size()) throw Error("game edge out of range at " + name[v]);
      if (priority[v] < 0) throw Error("negative priority at " + name[v]);
    }
  }
};

/// Random game with 1..max_vertices vertices, priorities 0..max_priority
/// and one to three distinct successors per vertex.
template <class Rng>
ParityGame random_game(Rng& rng, int max_vertices, int max_priority) {
  ParityGame g;
  int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  for (int v = 0; v < n; ++v)
    g.add_vertex(rng() % 2 ? Player::Odd : Player::Even, std::uniform_int_distribution<int>(0, max_priority)(rng));
  for (int v = 0; v < n; ++v) {
    int k = std::uniform_int_distribution<int>(1, std::min(n, 3))(rng);
    std::vector<int> all(n);
    for (int u = 0; u < n; ++u) all[u] = u;
    std::shuffle(all.begin(), all.end(), rng);
    for (int i = 0; i < k; ++i) g.add_edge(v, all[i]);
  }
  return g;
}

/// Winning regions with positional strategies: `strategy[v]` is the chosen
/// successor when v belongs to its winner, else -1.
struct GameSolution {
  std::vector<Player> winner;
  std::vector<int> strategy;
};

using VertexSet = std::vector<bool>;

/// Vertices (within `alive`) from which `p` forces a visit to `target`.
/// When `strategy` is given, it records p's attracting moves.
inline VertexSet attractor(const ParityGame& g, const VertexSet& target, Player p, const VertexSet& alive,
                           std::vector<int>* strategy = nullptr) {
  int n = g.size();
  VertexSet attr(n, false);
  std::vector<std::vector<int>> pred(n);
  std::vector<int> remaining(n, 0);
  for (int v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (int u : g.succ[v])
      if (alive[u]) {
        pred[u].push_back(v);
        ++remaining[v];
      }
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (alive[v] && target[v]) {
      attr[v] = true;
      queue.push_back(v);
    }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int u = queue[i];
    for (int v : pred[u]) {
      if (attr[v]) continue;
      if (g.owner[v] == p) {
        attr[v] = true;
        if (strategy) (*strategy)[v] = u;
        queue.push_back(v);
      } else if (--remaining[v] == 0) {
        attr[v] = true;
        queue.push_back(v);
      }
    }
  }
  return attr;
}

inline VertexSet attractor(const ParityGame& g, const VertexSet& target, Player p) {
  return attractor(g, target, p, VertexSet(g.size(), true));
}

namespace detail {

inline void zielonka_rec(const ParityGame& g, const VertexSet& alive, VertexSet win[2], std::vector<int>& strat) {
  int n = g.size();
  win[0].assign(n, false);
  win[1].assign(n, false);
  int top = -1;
  for (int v = 0; v < n; ++v)
    if (alive[v]) top = std::max(top, g.priority[v]);
  if (top < 0) return;
  Player p = top % 2 == 0 ? Player::Even : Player::Odd;
  int pi = static_cast<int>(p), oi = 1 - pi;
  VertexSet u(n, false);
  for (int v = 0; v < n; ++v) u[v] = alive[v] && g.priority[v] == top;
  std::vector<int> attr_strat(n, -1);
  auto a = attractor(g, u, p, alive, &attr_strat);
  VertexSet rest(n);
  for (int v = 0; v < n; ++v) rest[v] = alive[v] && !a[v];
  VertexSet sub[2];
  zielonka_rec(g, rest, sub, strat);
  bool opp_empty = std::none_of(sub[oi].begin(), sub[oi].end(), [](bool b) { return b; });
  if (opp_empty) {
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      win[pi][v] = true;
      if (a[v] && g.owner[v] == p) {
        if (u[v]) {
          for (int s : g.succ[v])
            if (alive[s]) {
              strat[v] = s;
              break;
            }
        } else {
          strat[v] = attr_strat[v];
        }
      }
    }
    return;
  }
  std::vector<int> opp_attr_strat(n, -1);
  auto b = attractor(g, sub[oi], opponent(p), alive, &opp_attr_strat);
  for (int v = 0; v < n; ++v)
    if (b[v] && !sub[oi][v] && g.owner[v] == opponent(p)) strat[v] = opp_attr_strat[v];
  VertexSet rest2(n);
  for (int v = 0; v < n; ++v) rest2[v] = alive[v] && !b[v];
  VertexSet sub2[2];
  zielonka_rec(g, rest2, sub2, strat);
  for (int v = 0; v < n; ++v) {
    win[pi][v] = sub2[pi][v];
    win[oi][v] = sub2[oi][v] || b[v];
  }
}

}  // namespace detail

/// Recursive (Zielonka) solver with positional strategies for both players.
inline GameSolution zielonka(const ParityGame& g) {
  g.validate();
  int n = g.size();
  VertexSet win[2];
  std::vector<int> strat(n, -1);
  detail::zielonka_rec(g, VertexSet(n, true), win, strat);
  GameSolution s;
  s.winner.resize(n);
  s.strategy.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    s.winner[v] = win[0][v] ? Player::Even : Player::Odd;
    if (g.owner[v] == s.winner[v]) s.strategy[v] = strat[v];
  }
  return s;
}

/// Exhaustive oracle over positional strategies: Even wins v iff some Even
/// strategy wins every play against every Odd strategy.
inline std::vector<Player> brute_force_solve(const ParityGame& g) {
  g.validate();
  int n = g.size();
  if (n > 10) throw Error("brute_force_solve accepts at most 10 vertices");
  std::vector<int> even, odd;
  for (int v = 0; v < n; ++v) (g.owner[v] == Player::Even ? even : odd).push_back(v);
  std::vector<int> choice(n, 0);
  auto play_even = [&](int start) {
    std::vector<int> seen(n, -1), order;
    int v = start;
    while (seen[v] < 0) {
      seen[v] = static_cast<int>(order.size());
      order.push_back(v);
      v = g.succ[v][choice[v]];
    }
    int top = -1;
    for (std::size_t i = seen[v]; i < order.size(); ++i) top = std::max(top, g.priority[order[i]]);
    return top % 2 == 0;
  };
  std::vector<bool> even_wins(n, false);
  std::function<void(std::size_t)> over_even = [&](std::size_t i) {
    if (i < even.size()) {
      for (choice[even[i]] = 0; choice[even[i]] < static_cast<int>(g.succ[even[i]].size()); ++choice[even[i]])
        over_even(i + 1);
      return;
    }
    std::vector<bool> beats_all(n, true);
    std::function<void(std::size_t)> over_odd = [&](std::size_t j) {
      if (j < odd.size()) {
        for (choice[odd[j]] = 0; choice[odd[j]] < static_cast<int>(g.succ[odd[j]].size()); ++choice[odd[j]])
          over_odd(j + 1);
        return;
      }
      for (int v = 0; v < n; ++v)
        if (beats_all[v] && !play_even(v)) beats_all[v] = false;
    };
    over_odd(0);
    for (int v = 0; v < n; ++v)
      if (beats_all[v]) even_wins[v] = true;
  };
  over_even(0);
  std::vector<Player> out(n);
  for (int v = 0; v < n; ++v) out[v] = even_wins[v] ? Player::Even : Player::Odd;
  return out;
}

/// Checks that following the solution's strategy keeps every play inside
/// the winner's region and that every cycle compatible with it is won.
inline bool validate_strategies(const ParityGame& g, const GameSolution& s) {
  int n = g.size();
  for (int pi = 0; pi < 2; ++pi) {
    Player p = static_cast<Player>(pi);
    auto next = [&](int v) {
      std::vector<int> out;
      if (g.owner[v] == p) {
        if (s.strategy[v] >= 0) out.push_back(s.strategy[v]);
      } else {
        out = g.succ[v];
      }
      return out;
    };
    VertexSet alive(n, false);
    for (int v = 0; v < n; ++v) alive[v] = s.winner[v] == p;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      auto ns = next(v);
      if (ns.empty()) return false;
      for (int u : ns)
        if (!alive[u]) return false;
      if (g.owner[v] == p &&
          std::find(g.succ[v].begin(), g.succ[v].end(), s.strategy[v]) == g.succ[v].end())
        return false;
    }
    // Every cycle of the restricted graph must have a top priority of p's parity.
    std::function<bool(const VertexSet&)> ok = [&](const VertexSet& live) {
      std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
      std::vector<bool> on(n, false);
      int counter = 0, ncomp = 0;
      std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (int u : next(v)) {
          if (!live[u]) continue;
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
            comp[u] = ncomp;
            if (u == v) break;
          }
          ++ncomp;
        }
      };
      for (int v = 0; v < n; ++v)
        if (live[v] && index[v] < 0) visit(v);
      std::vector<std::vector<int>> members(ncomp);
      for (int v = 0; v < n; ++v)
        if (live[v]) members[comp[v]].push_back(v);
      for (const auto& ms : members) {
        if (ms.empty()) continue;
        bool cyc = ms.size() > 1;
        for (int u : next(ms[0])) cyc |= u == ms[0];
        if (!cyc) continue;
        int top = -1;
        for (int v : ms) top = std::max(top, g.priority[v]);
        if (top % 2 != pi) return false;
        VertexSet rest(n, false);
        for (int v : ms) rest[v] = g.priority[v] != top;
        if (!ok(rest)) return false;
      }
      return true;
    };
    if (!ok(alive)) return false;
  }
  return true;
}

inline std::string to_dot(const ParityGame& g, const GameSolution* s = nullptr) {
  std::string out = "digraph game {\n";
  for (int v = 0; v < g.size(); ++v) {
    std::string label = g.name[v] + " / " + std::to_string(g.priority[v]);
    std::string esc;
    for (char c : label) {
      if (c == '"' || c == '\\') esc += '\\';
      esc += c;
    }
    out += "  v" + std::to_string(v) + " [label=\"" + esc + "\", shape=" +
           (g.owner[v] == Player::Even ? "diamond" : "box");
    if (s) out += std::string(", color=") + (s->winner[v] == Player::Even ? "blue" : "red");
    out += "];\n";
  }
  for (int v = 0; v < g.size(); ++v)
    for (int u : g.succ[v]) {
      out += "  v" + std::to_string(v) + " -> v" + std::to_string(u);
      if (s && s->strategy[v] == u) out += " [style=bold]";
      out += ";\n";
    }
  return out + "}\n";
}

}  // namespace llrel
