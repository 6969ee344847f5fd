#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "llrel/automaton.hpp"
#include "llrel/frontend.hpp"
#include "llrel/lawcheck.hpp"

using namespace llrel;
using json = nlohmann::ordered_json;

namespace {

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model(ss.str());
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
}

/// The named rel, or the only rel of shape E X * E A -o A.
std::pair<std::string, FixTable> body_of(const Model& m, const std::string& name) {
  if (!name.empty()) {
    auto r = m.rel(name);
    if (!r) throw Error("no rel named '" + name + "'");
    auto t = fix_body(*r, m);
    if (!t) throw Error("rel '" + name + "' has type " + r->type.str() + ", not E X * E A -o A");
    return {name, *t};
  }
  std::vector<std::pair<std::string, FixTable>> found;
  for (auto* r : m.all<RelDecl>())
    if (auto t = fix_body(*r, m)) found.emplace_back(r->name, *t);
  if (found.size() != 1)
    throw Error(found.empty() ? "the model has no fixpoint body" : "several fixpoint bodies; pick one with --rel");
  return found.front();
}

json regular_json(const RegularRunTree& g) {
  json vs = json::array();
  for (const auto& v : g.vertices) {
    json succ = json::array();
    for (const auto& [u, m] : v.succ) succ.push_back({{"to", u}, {"mult", m.str()}});
    vs.push_back({{"label", v.label.str()}, {"succ", succ}});
  }
  return {{"root", g.root}, {"vertices", vs}, {"leaves", leaves(g).str()}};
}

std::string pair_str(const Multiset& w, const Point& a) { return Point::pair(Point::bag(w), a).str(); }

/// Leaf multiset of a canonical run-tree encoding; a leaf's colour is the
/// largest along its path below the root.
std::string encoding_leaves(const std::string& enc) {
  std::vector<Multiset::Entry> out;
  std::size_t i = 0;
  std::function<void(int, bool)> node = [&](int above, bool root) {
    std::size_t j = i;
    while (j < enc.size() && enc[j] != '(' && enc[j] != ',' && enc[j] != ')') ++j;
    std::string label = enc.substr(i, j - i);
    i = j;
    bool is_x = label.rfind("X:", 0) == 0;
    std::string body = label.substr(2);
    int colour = 0;
    if (!body.empty() && body[0] == '<') {
      auto close = body.find('>');
      colour = std::stoi(body.substr(1, close - 1));
      body = body.substr(close + 1);
    }
    int c = root ? 0 : std::max(above, colour);
    if (is_x) out.emplace_back(c > 0 ? Point::coloured(c, Point::atom(0, body)) : Point::atom(0, body), Mult(1));
    if (i < enc.size() && enc[i] == '(') {
      ++i;
      while (enc[i] != ')') {
        node(c, false);
        if (enc[i] == ',') ++i;
      }
      ++i;
    }
  };
  node(0, true);
  return Multiset(out).str();
}

int cmd_fix(const Model& m, const std::string& rel, const std::string& mode_s, const std::vector<std::string>& queries,
            int bound, bool omega, int witness, bool dot, bool as_json) {
  auto mode = parse_mode(mode_s);
  auto [name, t] = body_of(m, rel);
  json out{{"schema", 1}, {"command", "fix"}, {"rel", name}, {"mode", to_string(mode)}};
  if (queries.empty()) {
    FixBounds b{{bound, omega, 3}, witness};
    auto e = fix_enumerate(t, mode, b);
    out["bounds"] = {{"max_total", bound}, {"allow_omega", omega}, {"witness", witness}};
    out["exact"] = e.exact;
    json pairs = json::array(), limited = json::array();
    for (const auto& [w, a] : e.pairs) pairs.push_back(pair_str(w, a));
    for (const auto& [w, a] : e.bound_limited) limited.push_back(pair_str(w, a));
    out["pairs"] = pairs;
    out["bound_limited"] = limited;
    if (as_json) {
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    std::cout << "fixpoint of " << name << " (" << to_string(mode) << "), leaves up to " << bound
              << (omega ? " with w" : "") << ":\n";
    if (e.pairs.empty()) std::cout << "  (empty)\n";
    for (const auto& p : pairs) std::cout << "  " << p.get<std::string>() << "\n";
    for (const auto& p : limited) std::cout << "  ? " << p.get<std::string>() << " (undecided within witness bound)\n";
    return 0;
  }
  Object qo = Object::lolli(t.exp(t.X), t.A);
  json results = json::array();
  for (const auto& q : queries) {
    Point p;
    try {
      p = parse_point(q, qo);
    } catch (const ParseError& e) {
      throw Error("query '" + q + "': " + e.what());
    }
    auto v = fix_member(t, mode, p.first().multiset(), p.second(), witness);
    json r{{"query", p.str()}, {"verdict", to_string(v.verdict)}};
    if (v.witness) r["witness"] = regular_json(*v.witness);
    results.push_back(r);
    if (!as_json) {
      std::cout << p.str() << ": " << to_string(v.verdict) << "\n";
      if (dot && v.witness) std::cout << to_dot(*v.witness, "witness");
    }
  }
  out["witness_bound"] = witness;
  out["queries"] = results;
  if (as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_check(const std::string& suite, const std::string& mode_s, int seeds, int bound, int witness, int first_seed,
              const std::string& junit, bool as_json, bool verbose) {
  std::vector<SuiteReport> reps;
  auto first = static_cast<std::uint64_t>(first_seed);
  if (suite == "seely") {
    reps.push_back(seely_suite(seeds, bound < 0 ? 3 : bound, first));
  } else if (suite == "comonads") {
    reps.push_back(comonad_suite(seeds, bound < 0 ? 3 : bound, first));
  } else if (suite == "conway") {
    std::vector<FixMode> modes;
    if (mode_s == "all")
      modes = {FixMode::Classic, FixMode::Inductive, FixMode::Coinductive, FixMode::Parity};
    else
      modes = {parse_mode(mode_s)};
    ConwayBounds b;
    if (bound >= 0) b.probe = bound;
    if (witness >= 0) b.witness = witness;
    for (auto mode : modes) reps.push_back(conway_suite(mode, seeds, b, first));
  } else {
    throw Error("unknown suite '" + suite + "' (expected seely, comonads or conway)");
  }
  bool ok = true;
  json js = json::array();
  for (const auto& rep : reps) {
    ok &= rep.ok();
    double secs = 0;
    json entries = json::array();
    for (const auto& e : rep.entries) {
      secs += e.seconds;
      json j{{"name", e.result.name}, {"status", to_string(e.result.status)}, {"seconds", e.seconds}};
      if (e.result.counterexample) {
        j["counterexample"] = {{"x", e.result.counterexample->first.str()},
                               {"y", e.result.counterexample->second.str()},
                               {"side", e.result.side}};
      }
      entries.push_back(j);
      if (!as_json && (verbose || e.result.status != CheckStatus::Pass)) std::cout << e.result.describe() << "\n";
    }
    auto pass = rep.count(CheckStatus::Pass), fail = rep.count(CheckStatus::Fail),
         limited = rep.count(CheckStatus::BoundLimited);
    js.push_back({{"suite", rep.name},
                  {"checks", rep.entries.size()},
                  {"pass", pass},
                  {"fail", fail},
                  {"bound_limited", limited},
                  {"seconds", secs},
                  {"entries", entries}});
    if (!as_json)
      std::cout << rep.name << ": " << rep.entries.size() << " checks, " << pass << " pass, " << fail << " fail, "
                << limited << " bound-limited (" << secs << " s)\n";
  }
  if (!junit.empty()) {
    std::ofstream f(junit);
    if (!f) throw Error("cannot write " + junit);
    f << to_junit(reps);
  }
  if (as_json) std::cout << json{{"schema", 1}, {"command", "check"}, {"ok", ok}, {"suites", js}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_interpret(const Model& m, const std::string& mode_s, int bound, int tabulate, int witness,
                  const std::string& only, bool as_json) {
  InterpOptions o;
  o.mode = parse_mode(mode_s);
  o.eval = {bound, false, 3};
  o.tabulate = {tabulate, false, 3};
  o.witness = witness;
  Interpreter it(m, o);
  json terms = json::array(), queries = json::array();
  for (auto* t : m.all<TermDecl>()) {
    if (!only.empty() && t->name != only) continue;
    auto im = it.values(it.closed(*t->term));
    json vals = json::array();
    for (const auto& p : im.points) vals.push_back(p.str());
    terms.push_back({{"name", t->name}, {"term", t->term->str()}, {"type", t->type.str()}, {"values", vals},
                     {"truncated", im.truncated}});
    if (!as_json) {
      std::cout << t->name << " : " << t->type.str() << "\n";
      for (const auto& p : im.points) std::cout << "  " << p.str() << "\n";
      if (im.points.empty()) std::cout << "  (no points within bounds)\n";
      if (im.truncated) std::cout << "  ... (more beyond the bounds)\n";
    }
  }
  if (m.all<TermDecl>().empty() && !as_json) std::cout << "(no terms)\n";
  if (!only.empty() && !m.term(only)) throw Error("no term named '" + only + "'");
  for (auto* q : m.all<QueryDecl>()) {
    if (!only.empty() && q->target != only) continue;
    auto v = it.query(q->target, q->point);
    queries.push_back({{"target", q->target}, {"point", q->point.str()}, {"verdict", to_string(v)}});
    if (!as_json) std::cout << "query " << q->target << " " << q->point.str() << ": " << to_string(v) << "\n";
  }
  if (as_json)
    std::cout << json{{"schema", 1},
                      {"command", "interpret"},
                      {"mode", to_string(o.mode)},
                      {"bounds", {{"eval", bound}, {"tabulate", tabulate}, {"witness", witness}}},
                      {"terms", terms},
                      {"queries", queries}}
                     .dump(2)
              << "\n";
  return 0;
}

int cmd_automaton(const Model& m, const std::string& rel, bool as_json) {
  auto [name, t] = body_of(m, rel);
  auto aut = build_automaton(t);
  if (!as_json) {
    std::cout << to_dot(aut);
    return 0;
  }
  json states = json::array();
  for (const auto& q : aut.states) {
    json s{{"state", q.str()}, {"leaf", aut.formula(q, false)}};
    if (!q.is_x) s["node"] = aut.formula(q, true);
    states.push_back(s);
  }
  std::cout << json{{"schema", 1}, {"command", "automaton"}, {"rel", name}, {"states", states}}.dump(2) << "\n";
  return 0;
}

int cmd_game(const Model& m, const std::string& rel, const std::string& mode_s, bool dot, bool as_json) {
  auto mode = parse_mode(mode_s);
  auto [name, t] = body_of(m, rel);
  auto g = acceptance_game(build_automaton(t), mode);
  auto sol = zielonka(g.game);
  if (!validate_strategies(g.game, sol)) throw Error("solver produced an invalid strategy");
  if (dot && !as_json) {
    std::cout << to_dot(g.game, &sol);
    return 0;
  }
  json roots = json::array();
  for (const auto& a : points_of(t.A, {})) {
    int v = g.state_vertex.at(Label{false, a, 0});
    roots.push_back({{"state", a.str()}, {"winner", to_string(sol.winner[v])}, {"nonempty", sol.winner[v] == Player::Even}});
    if (!as_json)
      std::cout << a.str() << ": " << to_string(sol.winner[v]) << " wins"
                << (sol.winner[v] == Player::Even ? " (accepting run-tree exists)" : " (no accepting run-tree)") << "\n";
  }
  if (as_json) {
    json vs = json::array();
    for (int v = 0; v < g.game.size(); ++v)
      vs.push_back({{"id", v},
                    {"name", g.game.name[v]},
                    {"owner", to_string(g.game.owner[v])},
                    {"priority", g.game.priority[v]},
                    {"succ", g.game.succ[v]},
                    {"winner", to_string(sol.winner[v])},
                    {"strategy", sol.strategy[v]}});
    std::cout << json{{"schema", 1}, {"command", "game"}, {"rel", name}, {"mode", to_string(mode)},
                      {"roots", roots}, {"vertices", vs}}
                     .dump(2)
              << "\n";
  }
  return 0;
}

int cmd_leaves(const Model& m, const std::string& rel, const std::string& state, int nodes, bool dot, bool as_json) {
  auto [name, t] = body_of(m, rel);
  std::vector<Point> roots;
  if (state.empty())
    roots = points_of(t.A, {});
  else
    roots = {parse_point(state, t.A)};
  json out = json::array();
  for (const auto& a : roots) {
    auto trees = finite_runtrees(t, a, nodes);
    json ts = json::array();
    for (const auto& enc : trees) ts.push_back({{"tree", enc}, {"leaves", encoding_leaves(enc)}});
    out.push_back({{"state", a.str()}, {"trees", ts}});
    if (as_json) continue;
    std::cout << a.str() << ": " << trees.size() << " finite run-trees with at most " << nodes << " nodes\n";
    for (const auto& enc : trees) std::cout << "  " << encoding_leaves(enc) << "  " << enc << "\n";
    if (dot) {
      auto g = acceptance_game(build_automaton(t), FixMode::Classic);
      auto sol = zielonka(g.game);
      if (sol.winner[g.state_vertex.at(Label{false, a, 0})] == Player::Even)
        std::cout << to_dot(strategy_witness(g, sol, a), "strategy");
    }
  }
  if (as_json)
    std::cout << json{{"schema", 1}, {"command", "leaves"}, {"rel", name}, {"max_nodes", nodes}, {"roots", out}}.dump(2)
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relational semantics of fixpoints: model files, fixpoints, law checks, games"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output (schema 1)");

  std::string model, rel, mode = "classic", state, suite, junit, term;
  std::vector<std::string> queries;
  int bound = 3, witness = 3, nodes = 6, seeds = 50, first_seed = 0, tabulate = 3;
  int check_bound = -1, check_witness = -1;
  bool omega = false, dot = false, verbose = false;
  std::string check_mode = "all";

  auto* fix = app.add_subcommand("fix", "Enumerate or query the fixpoint of a body");
  fix->add_option("model", model, "Model file")->required();
  fix->add_option("--rel", rel, "Body to use (default: the only one)");
  fix->add_option("--mode", mode, "classic, ind, coind or parity")->capture_default_str();
  fix->add_option("--query", queries, "Point (w,a) to decide; repeatable");
  fix->add_option("--bound", bound, "Largest leaf total enumerated")->capture_default_str();
  fix->add_flag("--omega", omega, "Also enumerate leaf multisets with w entries");
  fix->add_option("--witness", witness, "Largest cyclic core searched")->capture_default_str();
  fix->add_flag("--dot", dot, "Print witnesses of queries as DOT");
  fix->add_flag("--json", as_json, "Machine-readable output (schema 1)");

  auto* check = app.add_subcommand("check", "Run a law-checking suite");
  check->add_option("--suite", suite, "seely, comonads or conway")->required();
  check->add_option("--mode", check_mode, "Fixpoint mode for conway, or all")->capture_default_str();
  check->add_option("--seeds", seeds, "Number of random instances")->capture_default_str();
  check->add_option("--first-seed", first_seed, "First seed")->capture_default_str();
  check->add_option("--bound", check_bound, "Probe bound (default 3, conway 4)");
  check->add_option("--witness", check_witness, "Witness bound for conway");
  check->add_option("--junit", junit, "Write a JUnit XML report");
  check->add_flag("--verbose", verbose, "List passing checks too");
  check->add_flag("--json", as_json, "Machine-readable output (schema 1)");

  auto* interp = app.add_subcommand("interpret", "Interpret the terms of a model and answer its queries");
  interp->add_option("model", model, "Model file")->required();
  interp->add_option("--mode", mode, "Fixpoint mode for Y")->capture_default_str();
  interp->add_option("--bound", bound, "Evaluation bound")->capture_default_str();
  interp->add_option("--tabulate", tabulate, "Premise bound when tabulating Y bodies")->capture_default_str();
  interp->add_option("--witness", witness, "Largest cyclic core searched")->capture_default_str();
  interp->add_option("--term", term, "Only this term and its queries");
  interp->add_flag("--json", as_json, "Machine-readable output (schema 1)");

  auto* aut = app.add_subcommand("automaton", "Export the automaton of a body (DOT, or JSON)");
  aut->add_option("model", model, "Model file")->required();
  aut->add_option("--rel", rel, "Body to use");
  aut->add_flag("--json", as_json, "Machine-readable output (schema 1)");

  auto* game = app.add_subcommand("game", "Build and solve the acceptance game of a body");
  game->add_option("model", model, "Model file")->required();
  game->add_option("--rel", rel, "Body to use");
  game->add_option("--mode", mode, "Acceptance condition")->capture_default_str();
  game->add_flag("--dot", dot, "Print the solved game as DOT");
  game->add_flag("--json", as_json, "Machine-readable output (schema 1)");

  auto* lv = app.add_subcommand("leaves", "List small finite run-trees and their leaves");
  lv->add_option("model", model, "Model file")->required();
  lv->add_option("--rel", rel, "Body to use");
  lv->add_option("--state", state, "Root point (default: all)");
  lv->add_option("--nodes", nodes, "Largest tree size")->capture_default_str();
  lv->add_flag("--dot", dot, "Also print a strategy witness as DOT");
  lv->add_flag("--json", as_json, "Machine-readable output (schema 1)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*check) return cmd_check(suite, check_mode, seeds, check_bound, check_witness, first_seed, junit, as_json, verbose);
    auto m = load_model(model);
    if (*fix) return cmd_fix(m, rel, mode, queries, bound, omega, witness, dot, as_json);
    if (*interp) return cmd_interpret(m, mode, bound, tabulate, witness, term, as_json);
    if (*aut) return cmd_automaton(m, rel, as_json);
    if (*game) return cmd_game(m, rel, mode, dot, as_json);
    if (*lv) return cmd_leaves(m, rel, state, nodes, dot, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
