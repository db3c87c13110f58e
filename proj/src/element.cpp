#include "selfsim/element.hpp"

#include <cctype>
#include <deque>
#include <unordered_set>

namespace selfsim {

void push_reduced(Word& w, SignedState s) {
  if (!w.empty() && w.back().state == s.state && w.back().sign == -s.sign)
    w.pop_back();
  else
    w.push_back(s);
}

Word freely_reduce(std::span<const SignedState> w) {
  Word out;
  out.reserve(w.size());
  for (const auto& s : w) push_reduced(out, s);
  return out;
}

GroupElement make_element(MachinePtr m, std::span<const SignedState> w) {
  for (const auto& s : w)
    if (s.state < 0 || s.state >= m->state_count())
      throw Error("state index out of range in word");
  return {std::move(m), freely_reduce(w)};
}

std::string word_key(const Word& w) {
  std::string key;
  key.reserve(w.size());
  for (const auto& s : w)
    key.push_back(static_cast<char>(s.state * 2 + (s.sign < 0 ? 1 : 0)));
  return key;
}

int step_signed(const MealyAutomaton& a, SignedState& s, int x) {
  const Transition& t = s.sign > 0 ? a.step[s.state][x] : a.inv_step[s.state][x];
  s.state = t.next;
  return t.out;
}

int thread_letter(const MealyAutomaton& a, Word& w, int x) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = step_signed(a, *it, x);
  return x;
}

Letters act(const GroupElement& g, const Letters& u) {
  const MealyAutomaton& a = *g.machine;
  for (int x : u)
    if (x < 0 || x >= a.alphabet_size) throw Error("letter out of range");
  Word w = g.word;
  Letters out;
  out.reserve(u.size());
  for (int x : u) out.push_back(thread_letter(a, w, x));
  return out;
}

GroupElement section(const GroupElement& g, const Letters& v) {
  const MealyAutomaton& a = *g.machine;
  for (int x : v)
    if (x < 0 || x >= a.alphabet_size) throw Error("letter out of range");
  Word w = g.word;
  for (int x : v) thread_letter(a, w, x);
  return {g.machine, freely_reduce(w)};
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (!same_machine(g.machine, h.machine)) throw Error("automaton mismatch");
  Word w = g.word;
  for (const auto& s : h.word) push_reduced(w, s);
  return {g.machine, std::move(w)};
}

GroupElement invert(const GroupElement& g) {
  Word w;
  w.reserve(g.word.size());
  for (auto it = g.word.rbegin(); it != g.word.rend(); ++it)
    w.push_back(it->inverse());
  return {g.machine, std::move(w)};
}

GroupElement power(const GroupElement& g, long long n) {
  GroupElement base = n < 0 ? invert(g) : g;
  unsigned long long reps = n < 0 ? -static_cast<unsigned long long>(n) : n;
  if (reps > 0 && base.word.size() > (std::size_t(1) << 24) / reps)
    throw BudgetError("power word would exceed the length cap");
  Word w;
  w.reserve(base.word.size() * reps);
  for (unsigned long long i = 0; i < reps; ++i)
    for (const auto& s : base.word) push_reduced(w, s);
  return {g.machine, std::move(w)};
}

bool is_identity(const GroupElement& g, std::size_t closure_cap,
                 std::size_t* closure_size) {
  const MealyAutomaton& a = *g.machine;
  if (closure_size) *closure_size = 0;
  if (g.word.empty()) return true;

  std::unordered_set<std::string> seen;
  std::deque<Word> pending;
  seen.insert(word_key(g.word));
  pending.push_back(g.word);
  while (!pending.empty()) {
    Word w = std::move(pending.front());
    pending.pop_front();
    for (int x = 0; x < a.alphabet_size; ++x) {
      Word next = w;
      int y = thread_letter(a, next, x);
      if (y != x) {
        if (closure_size) *closure_size = seen.size();
        return false;
      }
      next = freely_reduce(next);
      if (seen.insert(word_key(next)).second) {
        if (seen.size() > closure_cap)
          throw BudgetError("section closure exceeded cap of " +
                            std::to_string(closure_cap));
        pending.push_back(std::move(next));
      }
    }
  }
  if (closure_size) *closure_size = seen.size();
  return true;
}

bool equal(const GroupElement& g, const GroupElement& h,
           std::size_t closure_cap, std::size_t* closure_size) {
  if (!same_machine(g.machine, h.machine)) throw Error("automaton mismatch");
  if (g.word == h.word) {
    if (closure_size) *closure_size = 0;
    return true;
  }
  return is_identity(compose(g, invert(h)), closure_cap, closure_size);
}

namespace {

struct ExprScanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool try_consume(char c) {
    if (peek_is(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_consume(c))
      throw ParseError(std::string("expected '") + c + "' in element expression", 1,
                       static_cast<int>(pos) + 1);
  }
  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (s.substr(pos, kw.size()) == kw) {
      std::size_t after = pos + kw.size();
      // keyword must be followed by '(' to count (state names stay usable)
      std::size_t j = after;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '(') {
        pos = after;
        return true;
      }
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto body = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
    };
    if (pos >= s.size() || !head(s[pos]))
      throw ParseError("expected state name", 1, static_cast<int>(pos) + 1);
    while (pos < s.size() && body(s[pos])) ++pos;
    return std::string(s.substr(start, pos - start));
  }
  long long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw ParseError("expected integer exponent", 1, static_cast<int>(pos) + 1);
    try {
      return std::stoll(std::string(s.substr(start, pos - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("exponent out of range", 1, static_cast<int>(pos) + 1);
    }
  }
  std::string until(char closer) {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != closer) ++pos;
    return std::string(s.substr(start, pos - start));
  }
};

class ElementParser {
 public:
  ElementParser(MachinePtr m, std::string_view text) : machine_(std::move(m)), sc_{text} {}

  GroupElement parse() {
    GroupElement g = expr();
    if (!sc_.done())
      throw ParseError("trailing input in element expression", 1,
                       static_cast<int>(sc_.pos) + 1);
    return g;
  }

 private:
  GroupElement expr() {
    if (sc_.try_keyword("section")) {
      sc_.expect('(');
      GroupElement inner = expr();
      sc_.expect(',');
      std::string word_text = sc_.until(')');
      sc_.expect(')');
      return section(inner, parse_letters(word_text, machine_->alphabet_size));
    }
    return product();
  }

  GroupElement product() {
    GroupElement g = factor();
    while (sc_.try_consume('*')) g = compose(g, factor());
    return g;
  }

  GroupElement factor() {
    if (sc_.try_consume('(')) {
      GroupElement g = product();
      sc_.expect(')');
      return maybe_power(g);
    }
    if (sc_.peek_is('1')) {
      ++sc_.pos;
      return GroupElement::identity(machine_);
    }
    std::string name = sc_.ident();
    int s = machine_->state_index(name);
    if (s < 0) throw Error("unknown state '" + name + "'");
    GroupElement g{machine_, {SignedState{s, +1}}};
    return maybe_power(g);
  }

  GroupElement maybe_power(const GroupElement& g) {
    if (sc_.try_consume('^')) return power(g, sc_.integer());
    return g;
  }

  MachinePtr machine_;
  ExprScanner sc_;
};

}  // namespace

GroupElement parse_element(MachinePtr m, std::string_view text) {
  return ElementParser(std::move(m), text).parse();
}

std::string format_element(const GroupElement& g) {
  if (g.word.empty()) return "1";
  const auto& labels = g.machine->labels;
  std::string out;
  std::size_t i = 0;
  while (i < g.word.size()) {
    std::size_t j = i;
    while (j < g.word.size() && g.word[j] == g.word[i]) ++j;
    long long exp = static_cast<long long>(j - i) * g.word[i].sign;
    if (!out.empty()) out += '*';
    out += labels[g.word[i].state];
    if (exp != 1) out += "^" + std::to_string(exp);
    i = j;
  }
  return out;
}

}  // namespace selfsim
