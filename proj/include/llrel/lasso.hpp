#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "llrel/point.hpp"

namespace llrel {

/// The eventually periodic word prefix . cycle^w; a finite word when the
/// cycle is empty.
struct LassoWord {
  std::vector<Point> prefix;
  std::vector<Point> cycle;

  bool finite() const { return cycle.empty(); }

  /// The letter at position i of the (possibly infinite) word.
  const Point& at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }
};

inline Multiset word_to_multiset(const LassoWord& w) {
  std::vector<Multiset::Entry> es;
  for (const auto& p : w.prefix) es.emplace_back(p, Mult(1));
  for (const auto& p : w.cycle) es.emplace_back(p, Mult::omega());
  return Multiset(std::move(es));
}

/// Is there a letter-preserving bijection between the positions of a and
/// b? Back-and-forth matching: alternately take the least unmatched
/// position on one side and pair it with the least free position carrying
/// the same letter on the other. If some letter occurs more often on one
/// side, an unmatched surplus occurrence lies below `horizon`, so the
/// matching gets stuck before every position there is processed.
inline bool word_equiv(const LassoWord& a, const LassoWord& b) {
  const LassoWord* w[2] = {&a, &b};
  std::set<std::size_t> used[2];
  auto length = [&](int s) { return w[s]->finite() ? w[s]->prefix.size() : SIZE_MAX; };
  auto in_cycle = [&](int s, const Point& c) {
    return std::find(w[s]->cycle.begin(), w[s]->cycle.end(), c) != w[s]->cycle.end();
  };
  auto least_free = [&](int s) {
    std::size_t i = 0;
    while (used[s].count(i)) ++i;
    return i;
  };
  auto free_with = [&](int s, const Point& c) -> std::optional<std::size_t> {
    bool recurs = in_cycle(s, c);
    for (std::size_t i = 0; i < length(s); ++i) {
      if (!recurs && i >= w[s]->prefix.size()) break;
      if (!used[s].count(i) && w[s]->at(i) == c) return i;
    }
    return std::nullopt;
  };
  std::size_t horizon = a.prefix.size() + (b.prefix.size() + 1) * a.cycle.size() + b.prefix.size() +
                        (a.prefix.size() + 1) * b.cycle.size() + 1;
  while (true) {
    bool progressed = false;
    for (int s = 0; s < 2; ++s) {
      std::size_t i = least_free(s);
      if (i >= horizon || i >= length(s)) continue;
      auto j = free_with(1 - s, w[s]->at(i));
      if (!j) return false;
      used[s].insert(i);
      used[1 - s].insert(*j);
      progressed = true;
    }
    if (!progressed) break;
  }
  return true;
}

/// Every lasso over `alphabet` with |prefix| <= max_prefix and
/// |cycle| <= max_cycle.
inline std::vector<LassoWord> all_lassos(const std::vector<Point>& alphabet, std::size_t max_prefix,
                                         std::size_t max_cycle) {
  std::vector<std::vector<Point>> words{{}};
  for (std::size_t n = 0, from = 0; n < std::max(max_prefix, max_cycle); ++n) {
    std::size_t to = words.size();
    for (std::size_t i = from; i < to; ++i)
      for (const auto& c : alphabet) {
        auto w = words[i];
        w.push_back(c);
        words.push_back(std::move(w));
      }
    from = to;
  }
  std::vector<LassoWord> out;
  for (const auto& p : words)
    for (const auto& c : words)
      if (p.size() <= max_prefix && c.size() <= max_cycle) out.push_back({p, c});
  return out;
}

/// A lasso representation of `m`: finite entries spelled out in the prefix,
/// infinite entries collected in the cycle.
inline LassoWord multiset_to_word(const Multiset& m) {
  LassoWord w;
  for (const auto& [p, k] : m.entries()) {
    if (k.is_omega())
      w.cycle.push_back(p);
    else
      for (std::uint32_t i = 0; i < k.finite(); ++i) w.prefix.push_back(p);
  }
  return w;
}

}  // namespace llrel
