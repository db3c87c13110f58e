#include <doctest.h>

#include <set>

#include "helpers.hpp"

using namespace selfsim;
using namespace testutil;

TEST_SUITE_BEGIN("catalogue");

TEST_CASE("all ten keys load with three binary states") {
  CHECK(catalogue_keys().size() == 10);
  for (int key : catalogue_keys()) {
    const CatalogueEntry& e = entry(key);
    CHECK(e.key == key);
    CHECK(e.machine->alphabet_size == 2);
    CHECK(e.machine->state_count() == 3);
    CHECK(e.machine->name == std::to_string(key));
  }
  CHECK_THROWS_AS(catalogue_get(1234), Error);
}

TEST_CASE("witness pairs match the catalogued data") {
  CHECK(entry(861).witness_g == "c");
  CHECK(entry(861).witness_v == "010");
  CHECK(entry(882).witness_g == "a*c*a*c*b*c");
  CHECK(entry(882).witness_v == "11");
  CHECK(entry(749).witness_g == "a^2*b*c");
  CHECK(entry(749).witness_v == "0100");
  CHECK(entry(920).witness_g == "b");
  CHECK(entry(887).witness_g == "b*c");
}

TEST_CASE("every verification suite passes") {
  for (int key : catalogue_keys()) {
    auto results = run_suite(entry(key));
    for (const auto& r : results) {
      INFO(key, ": ", r.label, " ", r.detail);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("suites cover every check kind") {
  // act -> act, section -> section/equal, identity -> is_identity,
  // ep_act -> act_ep, shift_differs -> shift_equivalent,
  // order_finite -> order_status; the witness rows exercise check_witness.
  std::set<VerificationCheck::Kind> kinds;
  for (int key : catalogue_keys())
    for (const auto& c : entry(key).checks) kinds.insert(c.kind);
  CHECK(kinds.size() == 6);
}

TEST_CASE("witness conditions hold for every entry") {
  for (int key : catalogue_keys()) {
    const CatalogueEntry& e = entry(key);
    GroupElement g = e.witness_element();
    Letters v = e.witness_word();
    CHECK(act(g, v) == v);
    CHECK(equal(section(g, v), g));
  }
}

TEST_CASE("a corrupted transition makes the 861 suite fail") {
  // swap the outputs of state c (0->1@b ; 1->0@a instead)
  CatalogueEntry corrupted = entry(861);
  MealyAutomaton bad = *corrupted.machine;
  int c = bad.state_index("c");
  bad.step[c][0].out = 1;
  bad.step[c][1].out = 0;
  bad.validate();
  corrupted.machine = std::make_shared<const MealyAutomaton>(bad);
  CHECK(!all_passed(run_suite(corrupted)));
}

TEST_CASE("a redirected transition makes the 861 suite fail") {
  CatalogueEntry corrupted = entry(861);
  MealyAutomaton bad = *corrupted.machine;
  int b = bad.state_index("b");
  bad.step[b][0].next = bad.state_index("a");  // was c
  bad.validate();
  corrupted.machine = std::make_shared<const MealyAutomaton>(bad);
  CHECK(!all_passed(run_suite(corrupted)));
}

TEST_CASE("failing checks identify the fact and the operands") {
  CatalogueEntry corrupted = entry(861);
  MealyAutomaton bad = *corrupted.machine;
  int c = bad.state_index("c");
  bad.step[c][1].next = bad.state_index("b");  // was a
  bad.validate();
  corrupted.machine = std::make_shared<const MealyAutomaton>(bad);
  auto results = run_suite(corrupted);
  bool found = false;
  for (const auto& r : results)
    if (!r.passed) {
      found = true;
      CHECK(!r.label.empty());
      CHECK(!r.detail.empty());
    }
  CHECK(found);
}

TEST_SUITE_END();
