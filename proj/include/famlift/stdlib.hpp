#pragma once

#include <optional>
#include <string>
#include <vector>

#include "famlift/container.hpp"

// Ready-made containers and functors used throughout the tests and fixtures.

namespace famlift {

// Natural numbers: one sort, a nullary zero shape and a unary successor.
inline IndexedContainer nat_container() {
  return IndexedContainer({"nat"}, {{"z", "s"}},
                          {{"nat", "s", "nat", {"p"}}});
}

// Untyped lambda terms with free variables drawn from an n-element scope,
// truncated at scope size `n_max`: at sort n there are n nullary variable
// shapes, a binary application shape, and (below the top sort) an abstraction
// shape whose body lives at sort n+1.
inline IndexedContainer lam_container(int n_max) {
  if (n_max < 1) throw error("lam container: scope bound must be at least 1");
  std::vector<Label> indices;
  std::vector<std::vector<Label>> shapes;
  std::vector<IndexedContainer::PositionEntry> entries;
  for (int n = 0; n <= n_max; ++n) indices.push_back(std::to_string(n));
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Label> sh;
    for (int i = 0; i < n; ++i) sh.push_back("var" + std::to_string(i));
    sh.push_back("app");
    entries.push_back({indices[n], "app", indices[n], {"fun", "arg"}});
    if (n < n_max) {
      sh.push_back("abs");
      entries.push_back({indices[n], "abs", indices[n + 1], {"body"}});
    }
    shapes.push_back(std::move(sh));
  }
  return IndexedContainer(std::move(indices), std::move(shapes), entries);
}

// The mutually recursive evens/odds numbers: zero is even, successors swap
// parity.
inline IndexedContainer odds_evens_container() {
  return IndexedContainer({"even", "odd"}, {{"zero", "evenSucc"}, {"oddSucc"}},
                          {{"even", "evenSucc", "odd", {"p"}},
                           {"odd", "oddSucc", "even", {"p"}}});
}

// Finitely branching labelled transition systems over alphabet A.
inline FinitaryFunctor lts_functor(std::vector<Label> alphabet) {
  return pfin_prod_functor(std::move(alphabet));
}

struct StdlibEntry {
  std::string name;
  std::optional<IndexedContainer> container;  // present for container-based entries
  FinitaryFunctor functor;
  std::string doc;
};

inline const std::vector<StdlibEntry>& stdlib_entries() {
  static const std::vector<StdlibEntry> entries = [] {
    std::vector<StdlibEntry> v;
    v.push_back({"nat", nat_container(), as_functor(nat_container()),
                 "natural numbers: zero and successor over a single sort"});
    v.push_back({"lam2", lam_container(2), as_functor(lam_container(2)),
                 "lambda terms with scopes of size 0..2 (abstraction truncated at the top)"});
    v.push_back({"odds-evens", odds_evens_container(), as_functor(odds_evens_container()),
                 "mutually recursive even/odd numbers over two sorts"});
    v.push_back({"pfin", std::nullopt, pfin_functor(),
                 "finite powerset of a single-sorted set"});
    v.push_back({"lts-ab", std::nullopt, lts_functor({"a", "b"}),
                 "finite subsets of {a,b} x X: labelled transition systems"});
    return v;
  }();
  return entries;
}

inline const StdlibEntry& stdlib_entry(const std::string& name) {
  for (const StdlibEntry& e : stdlib_entries())
    if (e.name == name) return e;
  throw error("unknown stdlib entry '" + name + "'");
}

}  // namespace famlift
