#pragma once

#include <random>

#include "llrel/runtree.hpp"

namespace llrel {

/// Size parameters for random fixpoint bodies.
struct InstanceParams {
  int x_size = 2;
  int a_size = 2;
  int rows = 3;
  int colours = 0;
  int max_leaves = 2;    // finite leaf total per row
  int max_children = 2;  // finite child total per row
  double omega = 0.0;    // chance that a row gets an infinite entry
};

/// Deterministic generator of fixpoint bodies: the same seed and
/// parameters always give the same table.
class InstanceGen {
 public:
  explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

  FixTable next(const InstanceParams& p) {
    std::vector<std::string> xn, an;
    for (int i = 0; i < p.x_size; ++i) xn.push_back("x" + std::to_string(i));
    for (int i = 0; i < p.a_size; ++i) an.push_back("a" + std::to_string(i));
    auto X = Object::base("X", xn), A = Object::base("A", an);
    return FixTable{X, A, p.colours, rows(X, A, A, p)};
  }

  /// Rows ((xs, cs), r) over base objects P, C, R: with probability 1/2 an
  /// empty-premise row first, then random rows up to `p.rows`.
  std::vector<FixRow> rows(const Object& P, const Object& C, const Object& R, const InstanceParams& p) {
    std::vector<FixRow> out;
    const auto& ps = points_of(P, {});
    const auto& cs = points_of(C, {});
    const auto& rs = points_of(R, {});
    auto atom = [&](const std::vector<Point>& pts) {
      const auto& q = pts[pick(static_cast<int>(pts.size()))];
      return p.colours > 0 ? Point::coloured(1 + pick(p.colours), q) : q;
    };
    auto bag = [&](const std::vector<Point>& pts, int max_total) {
      std::vector<Multiset::Entry> es;
      if (pts.empty()) return Multiset();
      int n = pick(max_total + 1);
      for (int i = 0; i < n; ++i) es.emplace_back(atom(pts), Mult(1));
      return Multiset(std::move(es));
    };
    auto head = [&] { return rs[pick(static_cast<int>(rs.size()))]; };
    if (p.rows > 0 && coin(0.5)) out.push_back({Multiset(), Multiset(), head()});
    while (static_cast<int>(out.size()) < p.rows) {
      FixRow r{bag(ps, p.max_leaves), bag(cs, p.max_children), head()};
      if (p.omega > 0 && coin(p.omega)) {
        if (coin(0.5) || cs.empty())
          r.xs += Multiset::singleton(atom(ps), Mult::omega());
        else
          r.as += Multiset::singleton(atom(cs), Mult::omega());
      }
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::mt19937_64& rng() { return rng_; }
  int pick(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_)); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace llrel
