// Acceptance suite: one pass/fail line per criterion, each with its runtime
// budget. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "selfsim/catalogue.hpp"
#include "selfsim/graph.hpp"

using namespace selfsim;
using Clock = std::chrono::steady_clock;

namespace {

using Failures = std::vector<std::string>;

Letters L(const std::string& s) { return parse_letters(s, 2); }

EPWord EP(const std::string& s) { return parse_epword(s, 2); }

std::uint32_t suite_seed() {
  if (const char* env = std::getenv("SELFSIM_SEED"); env && *env)
    return static_cast<std::uint32_t>(std::strtoul(env, nullptr, 10));
  return 20240901u;
}

// ---- criterion 1: witness conditions -------------------------------------

Failures witness_conditions() {
  Failures fails;
  for (int key : catalogue_keys()) {
    CatalogueEntry e = catalogue_get(key);
    GroupElement g = e.witness_element();
    Letters v = e.witness_word();
    if (act(g, v) != v)
      fails.push_back(std::to_string(key) + ": g does not fix v");
    if (!equal(section(g, v), g))
      fails.push_back(std::to_string(key) + ": g|v differs from g");
  }
  return fails;
}

// ---- criterion 2: finite-order facts --------------------------------------

Failures finite_order_facts() {
  Failures fails;
  auto m882 = catalogue_get(882).machine;
  auto m887 = catalogue_get(887).machine;
  if (!is_identity(parse_element(m882, "b^2"))) fails.push_back("882: b^2 is not the identity");
  for (const char* sq : {"a^2", "b^2", "c^2"})
    if (!is_identity(parse_element(m887, sq)))
      fails.push_back(std::string("887: ") + sq + " is not the identity");
  OrderStatus st = order_status(parse_element(m887, "a"));
  if (!st.finite() || st.order != 2) fails.push_back("887: order of a is not Finite(2)");
  return fails;
}

// ---- criterion 3: eventually periodic computations ------------------------

struct EpCase {
  int key;
  std::string g;
  std::string input;
  std::string expected;
};

const std::vector<EpCase>& ep_cases() {
  static const std::vector<EpCase> cases = {
      {749, "a^2*b*c", "0^inf", "001(101)^inf"},
      {749, "(a^2*b*c)^-1", "0^inf", "0011(1011)^inf"},
      {861, "c^-1", "1^inf", "(10)^inf"},
      {882, "c*a*c*b", "0^inf", "110^inf"},
      {887, "(c*a)^4", "1^inf", "11110101^inf"},
      {887, "(c*a)^8", "1^inf", "11111110101^inf"},
      {887, "(c*a)^16", "1^inf", "11111111110101^inf"},
      {920, "b", "01^inf", "0^inf"},
      {969, "c", "(101)^inf", "11(100)^inf"},
      {969, "c^-1", "(101)^inf", "1^inf"},
      {2361, "a", "0^inf", "10^inf"},
      {2361, "c^-1", "10^inf", "1^inf"},
      {2365, "a^-1", "0^inf", "10^inf"},
      {2365, "c", "10^inf", "1^inf"},
      {2402, "c^-2", "10^inf", "101^inf"},
      {2427, "c^-2", "(101)^inf", "(100)^inf"},
  };
  return cases;
}

Failures ep_computations() {
  Failures fails;
  for (const auto& c : ep_cases()) {
    auto m = catalogue_get(c.key).machine;
    auto t0 = Clock::now();
    EPWord got = act_ep(parse_element(m, c.g), EP(c.input));
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    EPWord want = EP(c.expected);
    if (!(got == want))
      fails.push_back(std::to_string(c.key) + ": " + c.g + "(" + c.input + ") = " +
                      format_epword(got) + ", expected " + format_epword(want));
    if (secs >= 1.0)
      fails.push_back(std::to_string(c.key) + ": " + c.g + " took " +
                      std::to_string(secs) + " s (limit 1 s each)");
  }
  return fails;
}

// ---- criterion 4: infinite-order evidence with brute-force oracle ---------

Failures order_evidence() {
  Failures fails;
  for (int key : catalogue_keys()) {
    CatalogueEntry e = catalogue_get(key);
    GroupElement g = e.witness_element();
    OrderStatus st = order_status(g);
    if (st.finite()) {
      fails.push_back(std::to_string(key) + ": witness certified finite");
      continue;
    }
    if (!st.infinite_evidence()) {
      fails.push_back(std::to_string(key) + ": no infinite-order evidence");
      continue;
    }
    int growth = 0;
    for (std::size_t i = 1; i < st.ord_sequence.size(); ++i)
      if (st.ord_sequence[i] > st.ord_sequence[i - 1]) ++growth;
    if (growth < 4)
      fails.push_back(std::to_string(key) + ": order grew at only " +
                      std::to_string(growth) + " depths");

    // Independent oracle: recompute the level orders by applying g to every
    // word separately, for n <= 12.
    std::size_t horizon = std::min<std::size_t>(st.ord_sequence.size(), 12);
    for (std::size_t n = 1; n <= horizon; ++n) {
      LevelPermutation p;
      p.depth = static_cast<int>(n);
      p.alphabet = 2;
      p.images = level_images_serial(g, static_cast<int>(n));
      if (p.order() != st.ord_sequence[n - 1]) {
        fails.push_back(std::to_string(key) + ": oracle disagrees at depth " +
                        std::to_string(n));
        break;
      }
    }
  }
  return fails;
}

// ---- criterion 5: fixed-point propagation to powers ------------------------

Failures propagation() {
  Failures fails;
  for (int key : catalogue_keys()) {
    CatalogueEntry e = catalogue_get(key);
    GroupElement g = e.witness_element();
    Letters v = e.witness_word();
    for (int n = 1; n <= 5; ++n) {
      GroupElement gn = power(g, n);
      Letters vk;
      for (int k = 1; k <= 5; ++k) {
        vk.insert(vk.end(), v.begin(), v.end());
        if (act(gn, vk) != vk) {
          fails.push_back(std::to_string(key) + ": g^" + std::to_string(n) +
                          " moves v^" + std::to_string(k));
          continue;
        }
        if (!equal(section(gn, vk), gn))
          fails.push_back(std::to_string(key) + ": g^" + std::to_string(n) +
                          "|v^" + std::to_string(k) + " differs");
      }
    }
  }
  return fails;
}

// ---- criterion 6: cocycle and inverse property suites ----------------------

Failures property_suites() {
  Failures fails;
  const std::uint32_t seed = suite_seed();
  std::cout << "[info] criterion 6 seed: " << seed << "\n";
  for (int key : catalogue_keys()) {
    auto m = catalogue_get(key).machine;
    std::mt19937 rng(seed + static_cast<std::uint32_t>(key));
    std::uniform_int_distribution<int> wlen(0, 4);
    std::uniform_int_distribution<int> ulen(0, 6);
    std::uniform_int_distribution<int> state(0, m->state_count() - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    auto random_element = [&] {
      Word w;
      int len = wlen(rng);
      for (int i = 0; i < len; ++i)
        push_reduced(w, {state(rng), coin(rng) ? 1 : -1});
      return GroupElement{m, w};
    };
    auto random_word = [&] {
      Letters u(ulen(rng));
      for (auto& x : u) x = coin(rng);
      return u;
    };
    for (int rep = 0; rep < 100; ++rep) {
      GroupElement g = random_element();
      GroupElement h = random_element();
      Letters u = random_word(), v = random_word();
      Letters uv = u;
      uv.insert(uv.end(), v.begin(), v.end());

      Letters lhs = act(g, uv);
      Letters rhs = act(g, u);
      Letters tail = act(section(g, u), v);
      rhs.insert(rhs.end(), tail.begin(), tail.end());
      bool ok = lhs == rhs;
      ok = ok && equal(section(g, uv), section(section(g, u), v));
      ok = ok && equal(section(compose(g, h), v),
                       compose(section(g, act(h, v)), section(h, v)));
      ok = ok && act(invert(g), act(g, u)) == u;
      ok = ok && equal(section(invert(g), v),
                       invert(section(g, act(invert(g), v))));
      if (!ok) {
        fails.push_back(std::to_string(key) + ": property failed at rep " +
                        std::to_string(rep) + " (seed " + std::to_string(seed) + ")");
        break;
      }
    }
  }
  return fails;
}

// ---- criterion 7: nucleus sanity -------------------------------------------

Failures nucleus_sanity() {
  Failures fails;

  MachinePtr trivial = parse_automaton_shared(
      "alphabet: 2\nstate e: 0->0@e ; 1->1@e\n");
  NucleusReport rt = compute_nucleus(trivial);
  if (!rt.stabilized() || rt.elements.size() != 1 || !is_identity(rt.elements[0]) ||
      rt.minimal_nucleus.size() != 1 || !is_identity(rt.minimal_nucleus[0]))
    fails.push_back("trivial automaton: expected a stabilized identity nucleus");

  MachinePtr odo = parse_automaton_shared(
      "alphabet: 2\nstate a: 0->1@e ; 1->0@a\nstate e: 0->0@e ; 1->1@e\n");
  NucleusReport ro = compute_nucleus(odo);
  if (!ro.stabilized() || ro.minimal_nucleus.size() != 3) {
    fails.push_back("odometer: expected a stabilized minimal nucleus of size 3");
  } else {
    // Independent brute-force closure to depth 6 over pairwise products of
    // {1, a, a^-1}: every section at length >= 2 behaves like a seed element.
    int a = odo->state_index("a");
    std::vector<GroupElement> seed = {GroupElement::identity(odo),
                                      GroupElement{odo, {SignedState{a, +1}}},
                                      GroupElement{odo, {SignedState{a, -1}}}};
    auto same_to_depth6 = [](const GroupElement& x, const GroupElement& y) {
      for (int n = 1; n <= 6; ++n)
        if (level_images_serial(x, n) != level_images_serial(y, n)) return false;
      return true;
    };
    for (const auto& x : seed)
      for (const auto& y : seed) {
        GroupElement p = compose(x, y);
        for (int len = 2; len <= 6; ++len)
          for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << len); ++bits) {
            Letters v(len);
            for (int i = 0; i < len; ++i) v[i] = static_cast<int>((bits >> i) & 1);
            GroupElement s = section(p, v);
            bool matched = false;
            for (const auto& sd : seed) matched = matched || same_to_depth6(s, sd);
            if (!matched) {
              fails.push_back("odometer: brute-force closure left the seed set");
              goto done;
            }
          }
      }
  done:
    if (same_to_depth6(seed[1], seed[2]) || same_to_depth6(seed[0], seed[1]))
      fails.push_back("odometer: seed elements not distinct");
  }

  for (int key : catalogue_keys()) {
    NucleusReport r = compute_nucleus(catalogue_get(key).machine);
    if (r.stabilized())
      fails.push_back(std::to_string(key) + ": nucleus unexpectedly stabilized");
  }
  return fails;
}

// ---- criterion 8: witness search rediscovery --------------------------------

Failures search_rediscovery() {
  struct Bound {
    int key;
    int max_g, max_v;
  };
  const std::vector<Bound> bounds = {
      {969, 1, 1}, {2361, 1, 1}, {2365, 1, 1}, {2402, 1, 1}, {2427, 1, 1},
      {920, 1, 1}, {861, 1, 3},  {887, 2, 2},  {882, 6, 2},  {749, 5, 4},
  };
  Failures fails;
  for (const auto& b : bounds) {
    CatalogueEntry e = catalogue_get(b.key);
    auto reports = search_witness(e.machine, b.max_g, b.max_v);
    GroupElement g = e.witness_element();
    Letters v = e.witness_word();
    bool found = false;
    for (const auto& r : reports)
      if (r.v == v && equal(r.g, g)) found = true;
    if (!found)
      fails.push_back(std::to_string(b.key) + ": witness not found within (" +
                      std::to_string(b.max_g) + "," + std::to_string(b.max_v) + ")");
  }
  return fails;
}

// ---- criterion 9: divergence experiment -------------------------------------

Failures divergence() {
  Failures fails;
  CatalogueEntry e = catalogue_get(861);
  GroupElement c = parse_element(e.machine, "c");
  const Letters v = L("010");
  const int k_max = 4;
  const int ball_depth = 14;

  GraphBall ball = build_ball(e.machine, ball_depth);

  // A depth-14 ball with k = 1..4 and |v| = 3 leaves room for |w| <= 2 only.
  const int max_w = ball_depth - static_cast<int>(v.size()) * k_max;
  Letters best_w;
  int best_n = 0;
  long long best_d = -1;
  for (int len = 1; len <= max_w; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << len); ++bits) {
      Letters w(len);
      for (int i = 0; i < len; ++i) w[i] = static_cast<int>((bits >> i) & 1);
      for (int n = 1; n <= 8; ++n) {
        Letters img = act(power(c, n), w);
        if (img == w) continue;
        long long d = ball_distance(ball, w, img);
        if (d > best_d) {
          best_d = d;
          best_w = w;
          best_n = n;
        }
      }
    }
  }

  auto run_rows = [&](const Letters& w, int n) -> Failures {
    Failures row_fails;
    DivergenceReport r = divergence_experiment(c, v, w, n, k_max);
    std::uint64_t expected_corridor = static_cast<std::uint64_t>(n) * c.word.size();
    for (const auto& row : r.rows) {
      if (row.corridor != expected_corridor)
        row_fails.push_back("corridor differs from n*|g| at k=" + std::to_string(row.k));
      if (row.measured < 0 ||
          static_cast<std::uint64_t>(row.measured) > row.corridor)
        row_fails.push_back("measured distance exceeds the corridor at k=" +
                            std::to_string(row.k));
    }
    for (std::size_t i = 1; i < r.rows.size(); ++i)
      if (r.rows[i].radius != r.rows[i - 1].radius + 3)
        row_fails.push_back("radius does not grow by 3 per k");
    if (!r.bounded_while_radius_grows)
      row_fails.push_back("bounded-corridor flag not raised");
    return row_fails;
  };

  if (best_d >= 3) {
    Failures rows = run_rows(best_w, best_n);
    fails.insert(fails.end(), rows.begin(), rows.end());
  } else {
    std::ostringstream os;
    os << "no displaced word satisfies the stated premise: over all w with |w| <= "
       << max_w << " (forced by the depth-" << ball_depth << " ball with k = 1.."
       << k_max << " and |v| = " << v.size() << ") and n <= 8, the maximum of "
       << "d(w, c^n(w)) is " << best_d << " (w = " << format_letters(best_w)
       << ", n = " << best_n << "), below the required 3";
    fails.push_back(os.str());
    // The corridor mechanism itself is still demonstrable at that distance.
    Failures rows = run_rows(best_w, 3);
    if (rows.empty())
      std::cout << "[info] criterion 9 mechanism holds at the achievable premise "
                   "(w = "
                << format_letters(best_w)
                << ", n = 3): constant corridor 3, radii 5,8,11,14, measured "
                   "distance bounded by the corridor\n";
    else
      for (const auto& f : rows) std::cout << "[info] criterion 9 fallback: " << f << "\n";
  }
  return fails;
}

// ---- criterion 10: mutation sensitivity -------------------------------------

Failures mutation_sensitivity() {
  Failures fails;
  CatalogueEntry base = catalogue_get(861);
  const MealyAutomaton& original = *base.machine;

  int mutants = 0, caught = 0;
  for (int s = 0; s < original.state_count(); ++s) {
    for (int x = 0; x < original.alphabet_size; ++x) {
      for (int out = 0; out < original.alphabet_size; ++out) {
        for (int next = 0; next < original.state_count(); ++next) {
          Transition t{out, next};
          if (t == original.step[s][x]) continue;
          ++mutants;
          MealyAutomaton bad = original;
          bad.step[s][x] = t;
          try {
            bad.validate();
          } catch (const Error&) {
            ++caught;  // rejected as non-invertible
            continue;
          }
          CatalogueEntry corrupted = base;
          corrupted.machine = std::make_shared<const MealyAutomaton>(bad);
          if (!all_passed(run_suite(corrupted)))
            ++caught;
          else
            fails.push_back("mutant survives: state " + original.labels[s] +
                            ", letter " + std::to_string(x) + " -> (" +
                            std::to_string(out) + ", " + original.labels[next] + ")");
        }
      }
    }
  }
  std::cout << "[info] criterion 10: " << caught << "/" << mutants
            << " single-transition corruptions detected\n";
  return fails;
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Failures()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "witness conditions on all catalogue pairs", 1.0, witness_conditions},
      {2, "finite-order facts", 1.0, finite_order_facts},
      {3, "eventually periodic computations", 16.0, ep_computations},
      {4, "infinite-order evidence with brute-force oracle", 30.0, order_evidence},
      {5, "fixed-point propagation to powers", 30.0, propagation},
      {6, "cocycle and inverse property suites", 60.0, property_suites},
      {7, "nucleus sanity", 60.0, nucleus_sanity},
      {8, "witness search rediscovery", 300.0, search_rediscovery},
      {9, "divergence experiment", 120.0, divergence},
      {10, "mutation sensitivity", 10.0, mutation_sensitivity},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Failures fails;
    try {
      fails = c.run();
    } catch (const std::exception& e) {
      fails.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > c.limit_seconds)
      fails.push_back("runtime " + std::to_string(secs) + " s exceeds limit " +
                      std::to_string(c.limit_seconds) + " s");
    bool ok = fails.empty();
    failed += !ok;
    std::printf("[%s] criterion %2d (%7.2fs): %s\n", ok ? "PASS" : "FAIL", c.id,
                secs, c.name.c_str());
    for (const auto& f : fails) std::printf("       - %s\n", f.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
