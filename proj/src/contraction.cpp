#include "selfsim/contraction.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace selfsim {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NonContracting: return "non_contracting";
    case Verdict::CandidateOnly: return "candidate_only";
    case Verdict::Rejected: return "rejected";
  }
  return "?";
}

WitnessReport check_witness(const GroupElement& g, const Letters& v,
                            const WitnessBudgets& budgets) {
  if (v.empty()) throw Error("witness word must be nonempty");
  WitnessReport r;
  r.automaton_name = g.machine->name;
  r.g = g;
  r.v = v;
  r.fixes_v = act(g, v) == v;
  try {
    r.section_is_self =
        equal(section(g, v), g, budgets.closure_cap, &r.equality_closure);
  } catch (const BudgetError&) {
    r.section_is_self = false;  // unconfirmed within budget
    r.equality_closure = budgets.closure_cap;
  }
  r.order = order_status(g, budgets.order);
  if (r.fixes_v && r.section_is_self && r.order.infinite_evidence())
    r.verdict = Verdict::NonContracting;
  else if (r.fixes_v && r.section_is_self && !r.order.finite())
    r.verdict = Verdict::CandidateOnly;
  else
    r.verdict = Verdict::Rejected;
  return r;
}

namespace {

// Signed generators in enumeration order: s, s^-1, t, t^-1, ...
std::vector<SignedState> signed_alphabet(const MealyAutomaton& a) {
  std::vector<SignedState> out;
  out.reserve(2 * a.state_count());
  for (int s = 0; s < a.state_count(); ++s) {
    out.push_back({s, +1});
    out.push_back({s, -1});
  }
  return out;
}

// All freely reduced words of length 1..max_len in length-lexicographic
// order over the signed alphabet.
std::vector<Word> reduced_words(const MealyAutomaton& a, int max_len) {
  std::vector<SignedState> letters = signed_alphabet(a);
  std::vector<Word> out;
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    next.reserve(frontier.size() * letters.size());
    for (const Word& w : frontier) {
      for (const SignedState& s : letters) {
        if (!w.empty() && w.back().state == s.state && w.back().sign == -s.sign)
          continue;
        Word ext = w;
        ext.push_back(s);
        next.push_back(std::move(ext));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<Letters> words_up_to(int k, int max_len) {
  std::vector<Letters> out;
  std::vector<Letters> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Letters> next;
    for (const Letters& u : frontier)
      for (int x = 0; x < k; ++x) {
        Letters ext = u;
        ext.push_back(x);
        next.push_back(std::move(ext));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<WitnessReport> search_witness(const MachinePtr& machine,
                                          int max_g_len, int max_v_len,
                                          const WitnessBudgets& budgets,
                                          bool parallel) {
  if (max_g_len < 1 || max_v_len < 1) throw Error("search bounds must be at least 1");
  const MealyAutomaton& a = *machine;
  std::vector<Word> gs = reduced_words(a, max_g_len);
  std::vector<Letters> vs = words_up_to(a.alphabet_size, max_v_len);

  // Parallel scan for the two word conditions; report assembly and
  // deduplication run sequentially afterwards in canonical order.
  std::vector<std::uint8_t> hit(gs.size() * vs.size(), 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long gi = 0; gi < static_cast<long long>(gs.size()); ++gi) {
    GroupElement g{machine, gs[gi]};
    for (std::size_t vi = 0; vi < vs.size(); ++vi) {
      const Letters& v = vs[vi];
      if (act(g, v) != v) continue;
      bool self = false;
      try {
        self = equal(section(g, v), g, budgets.closure_cap);
      } catch (const BudgetError&) {
        self = false;  // recorded per-candidate; the sweep continues
      }
      if (self) hit[gi * vs.size() + vi] = 1;
    }
  }

  // Canonical order is (|g|, |v|, lex); gs and vs are already enumerated in
  // length-lexicographic order, so iterate lengths in lockstep.
  std::vector<WitnessReport> reports;
  std::unordered_map<std::string, std::vector<GroupElement>> accepted_for_v;
  for (int glen = 1; glen <= max_g_len; ++glen) {
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      if (static_cast<int>(gs[gi].size()) != glen) continue;
      for (std::size_t vi = 0; vi < vs.size(); ++vi) {
        if (!hit[gi * vs.size() + vi]) continue;
        GroupElement g{machine, gs[gi]};
        const Letters& v = vs[vi];
        auto& earlier = accepted_for_v[format_letters(v)];
        bool duplicate = false;
        for (const GroupElement& e : earlier)
          if (equal(e, g, budgets.closure_cap)) {
            duplicate = true;
            break;
          }
        if (duplicate) continue;
        earlier.push_back(g);
        reports.push_back(check_witness(g, v, budgets));
      }
    }
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const WitnessReport& x, const WitnessReport& y) {
                     if (x.g.length() != y.g.length()) return x.g.length() < y.g.length();
                     return x.v.size() < y.v.size();
                   });
  return reports;
}

namespace {

// Registry of group-element classes under exact equality. Candidates are
// bucketed by a fingerprint of their depth-5 action before the (expensive)
// exact decision runs. Every decision is budgeted; an overrun makes the
// decision fall back to "distinct" and poisons the run (see compromised()).
class ClassRegistry {
 public:
  ClassRegistry(MachinePtr machine, std::size_t equality_cap)
      : machine_(std::move(machine)), equality_cap_(equality_cap) {}

  std::size_t size() const { return reps_.size(); }
  const GroupElement& rep(int id) const { return reps_[id]; }
  std::size_t work() const { return work_; }
  bool compromised() const { return compromised_; }

  int find(const GroupElement& g) {
    if (auto it = by_word_.find(word_key(g.word)); it != by_word_.end())
      return it->second;
    auto bucket = buckets_.find(fingerprint(g));
    if (bucket == buckets_.end()) return -1;
    for (int id : bucket->second)
      if (budgeted_equal(reps_[id], g)) return id;
    return -1;
  }

  int intern(const GroupElement& g) {
    std::string key = word_key(g.word);
    if (auto it = by_word_.find(key); it != by_word_.end()) return it->second;
    std::uint64_t fp = fingerprint(g);
    auto& bucket = buckets_[fp];
    for (int id : bucket) {
      if (budgeted_equal(reps_[id], g)) {
        by_word_.emplace(std::move(key), id);
        return id;
      }
    }
    int id = static_cast<int>(reps_.size());
    reps_.push_back(g);  // first-seen reduced word is the canonical rep
    bucket.push_back(id);
    by_word_.emplace(std::move(key), id);
    return id;
  }

 private:
  bool budgeted_equal(const GroupElement& a, const GroupElement& b) {
    std::size_t visited = 0;
    try {
      bool eq = equal(a, b, equality_cap_, &visited);
      work_ += visited;
      return eq;
    } catch (const BudgetError&) {
      work_ += equality_cap_;
      compromised_ = true;
      return false;
    }
  }

  std::uint64_t fingerprint(const GroupElement& g) {
    const MealyAutomaton& a = *machine_;
    const int k = a.alphabet_size;
    const int depth = 5;
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    // Hash of the depth-5 image table; equal elements agree on it.
    struct Frame {
      Word w;
      int d;
      std::uint64_t img;
    };
    std::vector<Frame> stack{{g.word, 0, 0}};
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.d == depth) {
        mix(f.img);
        continue;
      }
      for (int x = k - 1; x >= 0; --x) {
        Word next = f.w;
        int y = thread_letter(a, next, x);
        stack.push_back({std::move(next), f.d + 1, f.img * k + y});
      }
    }
    return h;
  }

  MachinePtr machine_;
  std::size_t equality_cap_;
  std::size_t work_ = 0;
  bool compromised_ = false;
  std::vector<GroupElement> reps_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
  std::unordered_map<std::string, int> by_word_;
};

}  // namespace

NucleusReport compute_nucleus(const MachinePtr& machine,
                              const NucleusBudgets& budgets) {
  const MealyAutomaton& a = *machine;
  NucleusReport report;
  ClassRegistry registry(machine, budgets.equality_cap);

  std::vector<int> members;  // class ids, insertion order
  std::vector<std::uint8_t> in_set;
  auto is_member = [&](int id) {
    return static_cast<std::size_t>(id) < in_set.size() && in_set[id];
  };
  auto add_member = [&](int id) {
    if (static_cast<std::size_t>(id) >= in_set.size()) in_set.resize(id + 1, 0);
    if (in_set[id]) return false;
    in_set[id] = 1;
    members.push_back(id);
    return true;
  };

  auto budget_exceeded = [&](const std::string& why) {
    report.status = NucleusReport::Status::BudgetExceeded;
    report.budget_note = why;
    report.classes_registered = registry.size();
    report.closure_work = registry.work();
    for (int id : members) report.elements.push_back(registry.rep(id));
    return report;
  };
  auto work_exhausted = [&] { return registry.work() > budgets.work_budget; };

  // Seed: identity, the states and their inverses, as element classes.
  add_member(registry.intern(GroupElement::identity(machine)));
  for (int s = 0; s < a.state_count(); ++s) {
    add_member(registry.intern(GroupElement{machine, {SignedState{s, +1}}}));
    add_member(registry.intern(GroupElement{machine, {SignedState{s, -1}}}));
  }
  if (work_exhausted())
    return budget_exceeded("equality work budget exceeded while seeding");

  // Close the member set under single-letter sections. The cursor persists
  // across calls; members are append-only.
  std::size_t closed_upto = 0;
  auto close_members = [&]() {
    for (; closed_upto < members.size(); ++closed_upto) {
      for (int x = 0; x < a.alphabet_size; ++x) {
        GroupElement sec = section(registry.rep(members[closed_upto]), {x});
        add_member(registry.intern(sec));
        if (members.size() > budgets.size_budget || work_exhausted()) return false;
      }
    }
    return true;
  };
  if (!close_members())
    return budget_exceeded(work_exhausted()
                               ? "equality work budget exceeded during section closure"
                               : "size budget exceeded during section closure");

  // Explores the section digraph below a product. Nodes equal to a member
  // are terminal. Any non-member node lying on or after a directed cycle
  // occurs as a section at arbitrarily large depth and is returned for
  // admission to the set.
  struct Exploration {
    std::vector<int> new_members;
    bool depth_exceeded = false;
    bool work_exceeded = false;
  };
  auto explore = [&](const GroupElement& p) {
    Exploration result;
    std::unordered_map<int, int> local;  // class id -> local node
    std::vector<int> node_class;
    std::vector<std::vector<int>> edges;
    std::deque<std::pair<int, int>> frontier;  // local node, depth

    auto local_node = [&](int cls) {
      auto [it, inserted] = local.try_emplace(cls, static_cast<int>(node_class.size()));
      if (inserted) {
        node_class.push_back(cls);
        edges.emplace_back();
      }
      return it->second;
    };

    int root_cls = registry.intern(p);
    if (is_member(root_cls)) return result;
    frontier.emplace_back(local_node(root_cls), 0);
    std::vector<std::uint8_t> expanded;
    while (!frontier.empty()) {
      auto [node, depth] = frontier.front();
      frontier.pop_front();
      if (static_cast<std::size_t>(node) >= expanded.size()) expanded.resize(node + 1, 0);
      if (expanded[node]) continue;
      expanded[node] = 1;
      if (depth >= budgets.depth_budget) {
        result.depth_exceeded = true;
        return result;
      }
      for (int x = 0; x < a.alphabet_size; ++x) {
        GroupElement sec = section(registry.rep(node_class[node]), {x});
        int cls = registry.intern(sec);
        if (work_exhausted()) {
          result.work_exceeded = true;
          return result;
        }
        if (registry.size() > budgets.class_budget) {
          result.depth_exceeded = true;  // treated as a budget stop by caller
          return result;
        }
        if (is_member(cls)) continue;  // resolved branch
        int next = local_node(cls);
        edges[node].push_back(next);
        if (static_cast<std::size_t>(next) >= expanded.size() || !expanded[next])
          frontier.emplace_back(next, depth + 1);
      }
    }

    // Nodes on cycles (including self-loops), then everything reachable from
    // them, all within the non-member subgraph.
    const int n = static_cast<int>(node_class.size());
    std::vector<int> indegree(n, 0);
    for (int u = 0; u < n; ++u)
      for (int v : edges[u]) ++indegree[v];
    std::deque<int> peel;
    for (int u = 0; u < n; ++u)
      if (indegree[u] == 0) peel.push_back(u);
    std::vector<std::uint8_t> removed(n, 0);
    while (!peel.empty()) {
      int u = peel.front();
      peel.pop_front();
      removed[u] = 1;
      for (int v : edges[u])
        if (--indegree[v] == 0) peel.push_back(v);
    }
    // Remaining nodes lie on cycles; collect them and their descendants.
    std::deque<int> reach;
    std::vector<std::uint8_t> marked(n, 0);
    for (int u = 0; u < n; ++u)
      if (!removed[u]) {
        marked[u] = 1;
        reach.push_back(u);
      }
    while (!reach.empty()) {
      int u = reach.front();
      reach.pop_front();
      result.new_members.push_back(node_class[u]);
      for (int v : edges[u])
        if (!marked[v]) {
          marked[v] = 1;
          reach.push_back(v);
        }
    }
    return result;
  };

  std::unordered_map<std::uint64_t, std::uint8_t> product_done;
  bool changed = true;
  while (changed) {
    changed = false;
    ++report.rounds;
    const std::vector<int> snapshot = members;
    for (int gi : snapshot) {
      for (int hi : snapshot) {
        std::uint64_t pair_key = (static_cast<std::uint64_t>(gi) << 32) |
                                 static_cast<std::uint32_t>(hi);
        if (product_done.contains(pair_key)) continue;
        GroupElement p = compose(registry.rep(gi), registry.rep(hi));
        ++report.products_explored;
        Exploration ex = explore(p);
        if (ex.work_exceeded)
          return budget_exceeded("equality work budget exceeded (" +
                                 std::to_string(registry.work()) + " closure nodes)");
        if (ex.depth_exceeded)
          return budget_exceeded("exploration budget exceeded (depth " +
                                 std::to_string(budgets.depth_budget) +
                                 ", classes " + std::to_string(registry.size()) + ")");
        if (ex.new_members.empty()) {
          product_done[pair_key] = 1;
          continue;
        }
        for (int cls : ex.new_members) {
          if (add_member(cls)) changed = true;
          if (members.size() > budgets.size_budget)
            return budget_exceeded("size budget exceeded (" +
                                   std::to_string(members.size()) + " elements)");
        }
        if (!close_members())
          return budget_exceeded(
              work_exhausted() ? "equality work budget exceeded during section closure"
                               : "size budget exceeded during section closure");
      }
    }
  }

  if (registry.compromised())
    return budget_exceeded("an equality decision exceeded its closure cap");

  report.status = NucleusReport::Status::Stabilized;
  report.classes_registered = registry.size();
  report.closure_work = registry.work();
  for (int id : members) report.elements.push_back(registry.rep(id));

  // Minimal nucleus: members on or after a cycle of the section digraph.
  const int n = static_cast<int>(members.size());
  std::unordered_map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[members[i]] = i;
  std::vector<std::vector<int>> edges(n);
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < a.alphabet_size; ++x) {
      GroupElement sec = section(registry.rep(members[i]), {x});
      int cls = registry.find(sec);
      edges[i].push_back(pos.at(cls));  // members are section-closed
      ++indegree[pos.at(cls)];
    }
  std::deque<int> peel;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) peel.push_back(i);
  std::vector<std::uint8_t> removed(n, 0);
  while (!peel.empty()) {
    int u = peel.front();
    peel.pop_front();
    removed[u] = 1;
    for (int v : edges[u])
      if (--indegree[v] == 0) peel.push_back(v);
  }
  std::deque<int> reach;
  std::vector<std::uint8_t> marked(n, 0);
  for (int i = 0; i < n; ++i)
    if (!removed[i]) {
      marked[i] = 1;
      reach.push_back(i);
    }
  while (!reach.empty()) {
    int u = reach.front();
    reach.pop_front();
    report.minimal_nucleus.push_back(registry.rep(members[u]));
    for (int v : edges[u])
      if (!marked[v]) {
        marked[v] = 1;
        reach.push_back(v);
      }
  }
  return report;
}

std::string to_key_values(const OrderStatus& s, const std::string& prefix) {
  std::ostringstream os;
  os << prefix << "status=";
  switch (s.kind) {
    case OrderStatus::Kind::Finite: os << "finite\n" << prefix << "order=" << s.order << "\n"; break;
    case OrderStatus::Kind::InfiniteEvidence: os << "infinite_evidence\n"; break;
    case OrderStatus::Kind::Unknown: os << "unknown\n"; break;
  }
  os << prefix << "depth=" << s.ord_sequence.size() << "\n";
  os << prefix << "sequence=" << format_ord_sequence(s.ord_sequence) << "\n";
  if (!s.note.empty()) os << prefix << "note=" << s.note << "\n";
  return os.str();
}

std::string to_key_values(const WitnessReport& r) {
  std::ostringstream os;
  os << "automaton=" << r.automaton_name << "\n";
  os << "g=" << format_element(r.g) << "\n";
  os << "v=" << format_letters(r.v) << "\n";
  os << "fixes_v=" << (r.fixes_v ? "true" : "false") << "\n";
  os << "section_is_self=" << (r.section_is_self ? "true" : "false") << "\n";
  os << "equality_closure_size=" << r.equality_closure << "\n";
  os << to_key_values(r.order, "order.");
  os << "verdict=" << to_string(r.verdict) << "\n";
  return os.str();
}

std::string to_key_values(const NucleusReport& r) {
  std::ostringstream os;
  os << "status=" << (r.stabilized() ? "stabilized" : "budget_exceeded") << "\n";
  os << "rounds=" << r.rounds << "\n";
  os << "products_explored=" << r.products_explored << "\n";
  os << "classes_registered=" << r.classes_registered << "\n";
  os << "closure_work=" << r.closure_work << "\n";
  os << "size=" << r.elements.size() << "\n";
  if (!r.budget_note.empty()) os << "budget_note=" << r.budget_note << "\n";
  if (r.stabilized()) {
    os << "minimal_nucleus_size=" << r.minimal_nucleus.size() << "\n";
    for (std::size_t i = 0; i < r.elements.size(); ++i)
      os << "element." << i << "=" << format_element(r.elements[i]) << "\n";
    for (std::size_t i = 0; i < r.minimal_nucleus.size(); ++i)
      os << "minimal_nucleus." << i << "=" << format_element(r.minimal_nucleus[i]) << "\n";
  }
  return os.str();
}

}  // namespace selfsim
