#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "selfsim/mealy.hpp"

namespace selfsim {

using Word = std::vector<SignedState>;

/// A group element: a freely reduced signed word over the states of an
/// automaton, acting on words over the alphabet.
///
/// Composition convention: in the word s1 s2 ... sn the RIGHTMOST factor acts
/// first, so that (gh)(v) = g(h(v)). All operations here follow it.
struct GroupElement {
  MachinePtr machine;
  Word word;  // freely reduced

  static GroupElement identity(MachinePtr m) { return {std::move(m), {}}; }
  bool trivial_word() const { return word.empty(); }
  std::size_t length() const { return word.size(); }
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.word == b.word && same_machine(a.machine, b.machine);
  }
};

void push_reduced(Word& w, SignedState s);
Word freely_reduce(std::span<const SignedState> w);

// Builds an element from a (possibly unreduced) word.
GroupElement make_element(MachinePtr m, std::span<const SignedState> w);

// Element grammar:
//   expr    := 'section' '(' expr ',' letters ')' | product
//   product := factor ('*' factor)*
//   factor  := ident ('^' int)? | '(' product ')' ('^' int)? | '1'
// e.g. "a^2*b*c", "c^-1", "(c*a)^4", "section(b*c, 1)".
GroupElement parse_element(MachinePtr m, std::string_view text);
std::string format_element(const GroupElement& g);

// Single transducer step of a signed state on a letter: returns the output
// letter and advances s to the successor.
int step_signed(const MealyAutomaton& a, SignedState& s, int x);

// Threads one input letter through a composition word (rightmost factor
// first), advancing every factor; returns the output letter.
int thread_letter(const MealyAutomaton& a, Word& w, int x);

// Image of a finite word under g; |act(g,u)| = |u|.
Letters act(const GroupElement& g, const Letters& u);

// Freely reduced section g|v (the element describing g below the vertex v).
GroupElement section(const GroupElement& g, const Letters& v);

// compose(g,h) applies h first. Both operands must share the automaton.
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupElement& g);
GroupElement power(const GroupElement& g, long long n);

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

// Decides whether g acts trivially on every finite word, by closing {g}
// under single-letter sections (memoized on reduced words; reduced sections
// never grow, so the closure is finite) and checking that every member fixes
// every letter. Throws BudgetError past closure_cap. closure_size, when
// given, receives the number of distinct reduced words visited.
bool is_identity(const GroupElement& g,
                 std::size_t closure_cap = kDefaultClosureCap,
                 std::size_t* closure_size = nullptr);

// Exact equality of the induced actions; reduces to is_identity(g h^-1).
bool equal(const GroupElement& g, const GroupElement& h,
           std::size_t closure_cap = kDefaultClosureCap,
           std::size_t* closure_size = nullptr);

// Compact byte key of a reduced word, for memoization.
std::string word_key(const Word& w);

}  // namespace selfsim
