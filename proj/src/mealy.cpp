#include "selfsim/mealy.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "selfsim/element.hpp"

namespace selfsim {

int MealyAutomaton::state_index(std::string_view label) const {
  for (int i = 0; i < state_count(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

bool MealyAutomaton::state_active(int s) const {
  for (int x = 0; x < alphabet_size; ++x)
    if (step[s][x].out != x) return true;
  return false;
}

void MealyAutomaton::validate() {
  const int n = state_count();
  const int k = alphabet_size;
  if (k < 2) throw Error("alphabet size must be at least 2");
  if (n == 0) throw Error("automaton has no states");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (labels[i] == labels[j]) throw Error("duplicate state '" + labels[i] + "'");
  if (static_cast<int>(step.size()) != n)
    throw Error("transition table does not cover every state");

  inv_step.assign(n, std::vector<Transition>(k, {-1, -1}));
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(step[s].size()) != k)
      throw Error("state '" + labels[s] + "' does not cover every letter");
    for (int x = 0; x < k; ++x) {
      const Transition& t = step[s][x];
      if (t.out < 0 || t.out >= k)
        throw Error("output letter out of range in state '" + labels[s] + "'");
      if (t.next < 0 || t.next >= n)
        throw Error("undefined next state in state '" + labels[s] + "'");
      if (inv_step[s][t.out].out != -1)
        throw Error("non-bijective output map in state '" + labels[s] + "'");
      inv_step[s][t.out] = {x, t.next};
    }
  }
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

struct LineScanner {
  std::string_view s;
  int line;
  std::size_t pos = 0;

  int col() const { return static_cast<int>(pos) + 1; }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool try_consume(std::string_view tok) {
    skip_ws();
    if (s.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!try_consume(tok))
      throw ParseError("expected '" + std::string(tok) + "'", line, col());
  }
  std::string ident() {
    skip_ws();
    if (pos >= s.size() || !ident_start(s[pos]))
      throw ParseError("expected identifier", line, col());
    std::size_t start = pos;
    while (pos < s.size() && ident_char(s[pos])) ++pos;
    return std::string(s.substr(start, pos - start));
  }
  int integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw ParseError("expected integer", line, col());
    try {
      return std::stoi(std::string(s.substr(start, pos - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range", line, col());
    }
  }
};

std::vector<std::pair<int, std::string>> logical_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int line_no = 0;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t end = text.find('\n', i);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view raw = text.substr(i, end - i);
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    std::size_t a = raw.find_first_not_of(" \t\r");
    if (a != std::string_view::npos) {
      std::size_t b = raw.find_last_not_of(" \t\r");
      out.emplace_back(line_no, std::string(raw.substr(0, b + 1)));
    }
    if (end == text.size()) break;
    i = end + 1;
  }
  return out;
}

}  // namespace

MealyAutomaton parse_automaton(std::string_view text) {
  MealyAutomaton a;
  a.alphabet_size = 0;

  auto lines = logical_lines(text);

  // First pass: collect state labels so transitions may refer forward.
  for (auto& [ln, content] : lines) {
    LineScanner sc{content, ln};
    if (sc.try_consume("state")) {
      a.labels.push_back(sc.ident());
    }
  }
  if (a.labels.empty()) throw ParseError("no state lines", 1, 1);

  std::vector<bool> seen(a.labels.size(), false);
  a.step.assign(a.labels.size(), {});
  int next_state_line = 0;

  for (auto& [ln, content] : lines) {
    LineScanner sc{content, ln};
    if (sc.try_consume("name")) {
      sc.expect(":");
      sc.skip_ws();
      a.name = content.substr(sc.pos);
      continue;
    }
    if (sc.try_consume("alphabet")) {
      sc.expect(":");
      int k = sc.integer();
      if (k < 2) throw ParseError("alphabet size must be at least 2", ln, sc.col());
      a.alphabet_size = k;
      if (!sc.done()) throw ParseError("trailing input", ln, sc.col());
      continue;
    }
    if (sc.try_consume("state")) {
      if (a.alphabet_size == 0)
        throw ParseError("state line before alphabet line", ln, 1);
      std::string label = sc.ident();
      int s = next_state_line++;
      // labels were collected in order, so line order matches state index
      if (seen[s] || a.labels[s] != label)
        throw ParseError("unexpected state ordering", ln, sc.col());
      seen[s] = true;
      sc.expect(":");
      std::vector<Transition> row(a.alphabet_size, {-1, -1});
      while (true) {
        int in = sc.integer();
        if (in < 0 || in >= a.alphabet_size)
          throw ParseError("input letter out of range", ln, sc.col());
        sc.expect("->");
        int out = sc.integer();
        if (out < 0 || out >= a.alphabet_size)
          throw ParseError("output letter out of range", ln, sc.col());
        sc.expect("@");
        std::string next_label = sc.ident();
        int next = -1;
        for (std::size_t i = 0; i < a.labels.size(); ++i)
          if (a.labels[i] == next_label) next = static_cast<int>(i);
        if (next < 0)
          throw ParseError("undefined next state '" + next_label + "'", ln, sc.col());
        if (row[in].out != -1)
          throw ParseError("duplicate transition for letter " + std::to_string(in), ln, sc.col());
        row[in] = {out, next};
        if (!sc.try_consume(";")) break;
      }
      if (!sc.done()) throw ParseError("trailing input", ln, sc.col());
      for (int x = 0; x < a.alphabet_size; ++x)
        if (row[x].out == -1)
          throw ParseError("missing transition for letter " + std::to_string(x) +
                               " in state '" + label + "'",
                           ln, 1);
      a.step[s] = std::move(row);
      continue;
    }
    throw ParseError("unrecognized line", ln, 1);
  }

  if (a.alphabet_size == 0) throw ParseError("missing alphabet line", 1, 1);
  a.validate();
  return a;
}

MachinePtr parse_automaton_shared(std::string_view text) {
  return std::make_shared<const MealyAutomaton>(parse_automaton(text));
}

std::string serialize_automaton(const MealyAutomaton& a) {
  std::ostringstream os;
  if (!a.name.empty()) os << "name: " << a.name << "\n";
  os << "alphabet: " << a.alphabet_size << "\n";
  for (int s = 0; s < a.state_count(); ++s) {
    os << "state " << a.labels[s] << ":";
    for (int x = 0; x < a.alphabet_size; ++x) {
      if (x) os << " ;";
      os << " " << x << "->" << a.step[s][x].out << "@" << a.labels[a.step[s][x].next];
    }
    os << "\n";
  }
  return os.str();
}

std::string render_dot(const MealyAutomaton& a) {
  std::ostringstream os;
  os << "digraph \"" << (a.name.empty() ? "automaton" : a.name) << "\" {\n";
  os << "  rankdir=LR;\n  node [shape=circle];\n";
  for (int s = 0; s < a.state_count(); ++s) {
    os << "  \"" << a.labels[s] << "\"";
    if (a.state_active(s)) os << " [style=filled, fillcolor=gray80]";
    os << ";\n";
  }
  for (int s = 0; s < a.state_count(); ++s) {
    // merge parallel edges into a comma-separated label
    std::map<int, std::string> label_for_target;
    for (int x = 0; x < a.alphabet_size; ++x) {
      std::string piece = std::to_string(x) + "|" + std::to_string(a.step[s][x].out);
      auto& lab = label_for_target[a.step[s][x].next];
      lab += lab.empty() ? piece : ", " + piece;
    }
    for (auto& [t, lab] : label_for_target)
      os << "  \"" << a.labels[s] << "\" -> \"" << a.labels[t] << "\" [label=\"" << lab << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

MealyAutomaton inverse_automaton(const MealyAutomaton& a) {
  MealyAutomaton b;
  b.name = a.name.empty() ? "" : a.name + "'";
  b.alphabet_size = a.alphabet_size;
  b.labels.reserve(a.labels.size());
  for (auto& l : a.labels) b.labels.push_back(l + "'");
  b.step.assign(a.state_count(), std::vector<Transition>(a.alphabet_size));
  for (int s = 0; s < a.state_count(); ++s)
    for (int y = 0; y < a.alphabet_size; ++y)
      b.step[s][y] = {a.inv_step[s][y].out, a.inv_step[s][y].next};
  b.validate();
  return b;
}

namespace {

std::string tuple_label(const MealyAutomaton& a, const Word& w) {
  if (w.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += a.labels[w[i].state];
    if (w[i].sign < 0) out += '\'';
  }
  return out;
}

}  // namespace

ProductResult product_automaton(const MealyAutomaton& a,
                                std::span<const SignedState> word) {
  if (word.empty()) throw Error("empty word");
  for (const auto& s : word)
    if (s.state < 0 || s.state >= a.state_count())
      throw Error("state index out of range in word");

  Word initial = freely_reduce(word);

  MealyAutomaton p;
  p.name = a.name.empty() ? "product" : a.name + "_pow";
  p.alphabet_size = a.alphabet_size;

  std::unordered_map<std::string, int> index;
  std::unordered_map<std::string, int> label_uses;
  std::vector<Word> tuples;
  auto intern = [&](const Word& w) {
    auto [it, inserted] = index.try_emplace(word_key(w), static_cast<int>(tuples.size()));
    if (inserted) {
      tuples.push_back(w);
      std::string label = tuple_label(a, w);
      if (int n = label_uses[label]++; n > 0) label += "." + std::to_string(n);
      p.labels.push_back(std::move(label));
      p.step.emplace_back();
    }
    return it->second;
  };

  int initial_id = intern(initial);
  std::queue<int> pending;
  pending.push(initial_id);
  std::vector<bool> expanded;
  while (!pending.empty()) {
    int id = pending.front();
    pending.pop();
    if (static_cast<std::size_t>(id) < expanded.size() && expanded[id]) continue;
    if (static_cast<std::size_t>(id) >= expanded.size()) expanded.resize(id + 1, false);
    expanded[id] = true;
    std::vector<Transition> row(p.alphabet_size);
    for (int x = 0; x < p.alphabet_size; ++x) {
      Word w = tuples[id];
      int y = thread_letter(a, w, x);
      int next = intern(freely_reduce(w));
      if (static_cast<std::size_t>(next) >= expanded.size() || !expanded[next]) pending.push(next);
      row[x] = {y, next};
    }
    p.step[id] = std::move(row);
  }
  p.validate();
  return {std::move(p), initial_id};
}

MinimizeResult minimize(const MealyAutomaton& a) {
  const int n = a.state_count();
  const int k = a.alphabet_size;

  // Seed the partition with output rows, then refine by successor classes
  // until stable. Class ids follow first occurrence in state order.
  std::vector<int> cls(n);
  {
    std::map<std::vector<int>, int> ids;
    for (int s = 0; s < n; ++s) {
      std::vector<int> row(k);
      for (int x = 0; x < k; ++x) row[x] = a.step[s][x].out;
      auto [it, inserted] = ids.try_emplace(row, static_cast<int>(ids.size()));
      cls[s] = it->second;
    }
  }
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next_cls(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (int x = 0; x < k; ++x) sig.push_back(cls[a.step[s][x].next]);
      auto [it, inserted] = ids.try_emplace(sig, static_cast<int>(ids.size()));
      next_cls[s] = it->second;
    }
    // renumber by first occurrence to keep ids deterministic
    std::vector<int> renum(ids.size(), -1);
    int fresh = 0;
    for (int s = 0; s < n; ++s)
      if (renum[next_cls[s]] < 0) renum[next_cls[s]] = fresh++;
    for (int s = 0; s < n; ++s) next_cls[s] = renum[next_cls[s]];
    if (next_cls == cls) break;
    cls = std::move(next_cls);
  }

  int classes = *std::max_element(cls.begin(), cls.end()) + 1;
  MealyAutomaton q;
  q.name = a.name.empty() ? "" : a.name + "_min";
  q.alphabet_size = k;
  q.labels.assign(classes, "");
  q.step.assign(classes, std::vector<Transition>(k));
  for (int s = 0; s < n; ++s) {
    if (!q.labels[cls[s]].empty()) continue;
    q.labels[cls[s]] = a.labels[s];
    for (int x = 0; x < k; ++x) q.step[cls[s]][x] = {a.step[s][x].out, cls[a.step[s][x].next]};
  }
  q.validate();
  return {std::move(q), std::move(cls)};
}

Letters parse_letters(std::string_view text, int alphabet_size) {
  Letters out;
  bool comma_form = text.find(',') != std::string_view::npos;
  if (comma_form) {
    std::string cur;
    auto flush = [&](std::size_t at) {
      if (cur.empty()) throw ParseError("empty letter", 1, static_cast<int>(at));
      try {
        out.push_back(std::stoi(cur));
      } catch (const std::out_of_range&) {
        throw Error("letter out of range");
      }
      cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == ',') flush(i);
      else if (std::isdigit(static_cast<unsigned char>(c))) cur += c;
      else if (c != ' ') throw ParseError("unexpected character in word", 1, static_cast<int>(i) + 1);
    }
    flush(text.size());
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == ' ') continue;
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("unexpected character in word", 1, static_cast<int>(i) + 1);
      out.push_back(c - '0');
    }
  }
  for (int x : out)
    if (x < 0 || x >= alphabet_size) throw Error("letter out of range");
  return out;
}

std::string format_letters(const Letters& u) {
  std::string out;
  bool wide = false;
  for (int x : u)
    if (x > 9) wide = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (wide && i) out += ',';
    out += std::to_string(u[i]);
  }
  return out;
}

}  // namespace selfsim
