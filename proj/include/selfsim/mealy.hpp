#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

// Letters of the alphabet are integers 0..k-1.
using Letters = std::vector<int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  int line_;
  int col_;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

struct Transition {
  int out = 0;
  int next = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

// A state index with an orientation. Negative sign selects the inverse
// transducer of the state.
struct SignedState {
  int state = 0;
  int sign = +1;
  SignedState inverse() const { return {state, -sign}; }
  friend bool operator==(const SignedState&, const SignedState&) = default;
};

/// Deterministic invertible letter transducer.
///
/// step[s][x] is the transition taken when state s reads letter x. Every
/// per-state output map is a bijection on the alphabet, so each state also
/// defines an inverse transducer: inv_step[s][y] holds the letter the inverse
/// of s emits when reading y, and the successor state (to be taken with
/// negative sign).
struct MealyAutomaton {
  std::string name;
  int alphabet_size = 2;
  std::vector<std::string> labels;
  std::vector<std::vector<Transition>> step;
  std::vector<std::vector<Transition>> inv_step;  // filled by validate()

  int state_count() const { return static_cast<int>(labels.size()); }
  int state_index(std::string_view label) const;

  // A state is active when its output map is not the identity permutation.
  bool state_active(int s) const;

  // Checks all structural invariants and builds inv_step. Throws Error on
  // duplicate state labels, incomplete transition tables, out-of-range
  // letters or successors, or a non-bijective output map.
  void validate();

  // Structural comparison ignoring name and labels.
  bool same_shape(const MealyAutomaton& other) const {
    return alphabet_size == other.alphabet_size && step == other.step;
  }

  friend bool operator==(const MealyAutomaton& a, const MealyAutomaton& b) {
    return a.alphabet_size == b.alphabet_size && a.labels == b.labels &&
           a.step == b.step;
  }
};

using MachinePtr = std::shared_ptr<const MealyAutomaton>;

inline bool same_machine(const MachinePtr& a, const MachinePtr& b) {
  return a == b || (a && b && *a == *b);
}

// Text format (line oriented, '#' starts a comment):
//   name: 861            (optional)
//   alphabet: 2
//   state a: 0->1@c ; 1->0@b
// One "state" line per state covering every letter of the alphabet.
MealyAutomaton parse_automaton(std::string_view text);
MachinePtr parse_automaton_shared(std::string_view text);
std::string serialize_automaton(const MealyAutomaton& a);

// Moore diagram in Graphviz format; edges are labelled "in|out" and active
// states are shaded.
std::string render_dot(const MealyAutomaton& a);

// Inverse transducer: state s' reads y and emits x exactly when s reads x and
// emits y; successors are the inverses of the originals. Labels gain a prime.
MealyAutomaton inverse_automaton(const MealyAutomaton& a);

struct ProductResult {
  MealyAutomaton machine;
  int initial = 0;  // state corresponding to the (reduced) input word
};

// Composition transducer for a signed word over the states of `a`. States are
// freely reduced signed tuples; only the part reachable from the initial
// tuple is materialized. The initial state acts on words exactly as the word
// itself (rightmost factor first).
ProductResult product_automaton(const MealyAutomaton& a,
                                std::span<const SignedState> word);

struct MinimizeResult {
  MealyAutomaton machine;
  std::vector<int> state_class;  // class of each original state
};

// Partition-refinement quotient: states are merged exactly when they induce
// the same output function on all words. Class numbering follows first
// occurrence in state order.
MinimizeResult minimize(const MealyAutomaton& a);

Letters parse_letters(std::string_view text, int alphabet_size);
std::string format_letters(const Letters& u);

}  // namespace selfsim
