#include <doctest.h>

#include "helpers.hpp"

using namespace selfsim;
using namespace testutil;

TEST_SUITE_BEGIN("epword");

TEST_CASE("canonical form takes primitive roots and minimal preperiods") {
  // "1010" collapses to period "10"
  EPWord a = canonical_ep(Letters{}, L("1010"));
  CHECK(a.preperiod.empty());
  CHECK(a.period == L("10"));

  // 1(01)^inf equals (10)^inf
  EPWord b = canonical_ep(L("1"), L("01"));
  CHECK(b.preperiod.empty());
  CHECK(b.period == L("10"));

  // 00(0)^inf equals (0)^inf
  EPWord c = canonical_ep(L("00"), L("0"));
  CHECK(c.preperiod.empty());
  CHECK(c.period == L("0"));

  CHECK_THROWS_AS(canonical_ep(L("0"), Letters{}), Error);
}

TEST_CASE("canonical forms agree exactly when the infinite words agree") {
  EPWord x = canonical_ep(L("001"), L("101"));
  EPWord y = canonical_ep(L("0"), L("011"));
  CHECK(x == y);
  for (std::size_t n = 0; n <= 12; ++n) CHECK(ep_prefix(x, n) == ep_prefix(y, n));
}

TEST_CASE("parser follows the binding convention for ^inf") {
  CHECK(EP("0^inf") == canonical_ep({}, L("0")));
  CHECK(EP("110^inf") == canonical_ep(L("11"), L("0")));
  CHECK(EP("101^inf") == canonical_ep(L("10"), L("1")));
  CHECK(EP("(101)^inf") == canonical_ep({}, L("101")));
  CHECK(EP("001(101)^inf") == canonical_ep(L("001"), L("101")));
  CHECK(format_epword(EP("11(100)^inf")) == "11(100)^inf");
  CHECK_THROWS_AS(EP("0101"), ParseError);
  CHECK_THROWS_AS(EP("()^inf"), Error);
}

TEST_CASE("act_ep reproduces the catalogued ray computations") {
  CHECK(act_ep(E(machine(861), "c^-1"), EP("1^inf")) == EP("(10)^inf"));
  CHECK(act_ep(E(machine(969), "c"), EP("(101)^inf")) == EP("11(100)^inf"));
  CHECK(act_ep(E(machine(749), "a^2*b*c"), EP("0^inf")) == EP("001(101)^inf"));
  CHECK(act_ep(E(machine(749), "(a^2*b*c)^-1"), EP("0^inf")) == EP("0011(1011)^inf"));
  CHECK(act_ep(E(machine(882), "c*a*c*b"), EP("0^inf")) == EP("110^inf"));
  CHECK(act_ep(E(machine(920), "b"), EP("01^inf")) == EP("0^inf"));
  GroupElement id = GroupElement::identity(machine(861));
  CHECK(act_ep(id, EP("01(100)^inf")) == EP("01(100)^inf"));
}

TEST_CASE("act_ep prefixes agree with act on finite prefixes") {
  for (int key : {749, 861, 969, 2427}) {
    GroupElement g = entry(key).witness_element();
    for (const char* text : {"0^inf", "1^inf", "(101)^inf", "01(10)^inf"}) {
      EPWord x = EP(text);
      EPWord y = act_ep(g, x);
      std::size_t horizon =
          3 * (x.preperiod.size() + g.length() * x.period.size()) + 3;
      for (std::size_t n = 0; n <= horizon; ++n)
        CHECK(ep_prefix(y, n) == act(g, ep_prefix(x, n)));
    }
  }
}

TEST_CASE("shift equivalence is rotation of primitive periods") {
  CHECK(shift_equivalent(EP("(101)^inf"), EP("(011)^inf")));
  CHECK(!shift_equivalent(EP("1^inf"), EP("(10)^inf")));
  CHECK(!shift_equivalent(EP("0011(1011)^inf"), EP("(101)^inf")));
  CHECK(shift_equivalent(EP("111(10)^inf"), EP("00(01)^inf")));
}

TEST_CASE("shift equivalence is an equivalence relation on a sample") {
  std::vector<EPWord> sample = {EP("0^inf"),        EP("1^inf"),
                                EP("(10)^inf"),     EP("11(100)^inf"),
                                EP("(011)^inf"),    EP("0011(1011)^inf"),
                                EP("101(1101)^inf"), EP("0(01)^inf")};
  for (const auto& x : sample) CHECK(shift_equivalent(x, x));
  for (const auto& x : sample)
    for (const auto& y : sample) CHECK(shift_equivalent(x, y) == shift_equivalent(y, x));
  for (const auto& x : sample)
    for (const auto& y : sample)
      for (const auto& z : sample)
        if (shift_equivalent(x, y) && shift_equivalent(y, z))
          CHECK(shift_equivalent(x, z));
}

TEST_SUITE_END();
