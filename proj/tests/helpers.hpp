#pragma once

#include <map>
#include <string>

#include "selfsim/catalogue.hpp"
#include "selfsim/epword.hpp"
#include "selfsim/graph.hpp"
#include "selfsim/levels.hpp"

namespace testutil {

using namespace selfsim;

inline const CatalogueEntry& entry(int key) {
  static std::map<int, CatalogueEntry> cache;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, catalogue_get(key)).first;
  return it->second;
}

inline MachinePtr machine(int key) { return entry(key).machine; }

inline Letters L(const std::string& s, int k = 2) { return parse_letters(s, k); }

inline GroupElement E(const MachinePtr& m, const std::string& s) {
  return parse_element(m, s);
}

inline EPWord EP(const std::string& s, int k = 2) { return parse_epword(s, k); }

inline MachinePtr identity_machine() {
  static MachinePtr m = parse_automaton_shared(
      "name: trivial\n"
      "alphabet: 2\n"
      "state e: 0->0@e ; 1->1@e\n");
  return m;
}

inline MachinePtr odometer() {
  static MachinePtr m = parse_automaton_shared(
      "name: odometer\n"
      "alphabet: 2\n"
      "state a: 0->1@e ; 1->0@a\n"
      "state e: 0->0@e ; 1->1@e\n");
  return m;
}

// Reference action: applies g letter by letter with a fresh copy per call.
// Used as the independent route when checking the element operations.
inline Letters naive_act(const GroupElement& g, const Letters& u) {
  Letters out;
  out.reserve(u.size());
  Word w = g.word;
  for (int x : u) {
    int y = x;
    for (auto it = w.rbegin(); it != w.rend(); ++it) y = step_signed(*g.machine, *it, y);
    out.push_back(y);
  }
  return out;
}

// True when g and h act identically on every word of length <= depth,
// decided by exhaustive enumeration.
inline bool same_action_to_depth(const GroupElement& g, const GroupElement& h,
                                 int depth) {
  for (int n = 1; n <= depth; ++n) {
    auto a = level_images_serial(g, n);
    auto b = level_images_serial(h, n);
    if (a != b) return false;
  }
  return true;
}

}  // namespace testutil
