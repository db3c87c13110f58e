#pragma once

#include "selfsim/element.hpp"
#include "selfsim/levels.hpp"

namespace selfsim {

struct WitnessBudgets {
  OrderBudgets order{};
  std::size_t closure_cap = kDefaultClosureCap;
};

enum class Verdict { NonContracting, CandidateOnly, Rejected };
std::string to_string(Verdict v);

/// Result of testing the non-contraction criterion on a pair (g, v):
/// g(v) = v, g|v = g, and g of infinite order together imply the action is
/// non-contracting. A Finite order always downgrades to Rejected; order
/// evidence short of a certificate yields CandidateOnly.
struct WitnessReport {
  std::string automaton_name;
  GroupElement g;
  Letters v;
  bool fixes_v = false;
  bool section_is_self = false;
  OrderStatus order{};
  Verdict verdict = Verdict::Rejected;
  std::size_t equality_closure = 0;  // closure size of the g|v = g decision
};

WitnessReport check_witness(const GroupElement& g, const Letters& v,
                            const WitnessBudgets& budgets = {});

// Enumerates freely reduced words g (length 1..max_g_len) and words v
// (length 1..max_v_len), both in length-then-lexicographic order, and
// returns a report for every pair with g(v) = v and g|v = g. For each v,
// candidates equal (as group elements) to an earlier hit are dropped.
// Deterministic output regardless of scheduling.
std::vector<WitnessReport> search_witness(const MachinePtr& machine,
                                          int max_g_len, int max_v_len,
                                          const WitnessBudgets& budgets = {},
                                          bool parallel = true);

struct NucleusBudgets {
  std::size_t size_budget = 5000;   // max element classes admitted to the set
  int depth_budget = 20;            // section exploration depth per product
  std::size_t class_budget = 200000;  // max distinct classes registered
  // Equality decisions inside the computation are exact but budgeted: one
  // decision may visit at most equality_cap closure nodes and the whole run
  // at most work_budget. A run that overruns an equality budget can only
  // report BudgetExceeded, never Stabilized.
  std::size_t equality_cap = 200000;
  std::size_t work_budget = 5'000'000;
};

/// Output of the contraction semi-algorithm. When Stabilized, `elements` is
/// closed under sections and absorbs every section of a pairwise product at
/// sufficiently long words; `minimal_nucleus` is the subset occurring at
/// arbitrarily large depth (nodes on or reachable from a cycle of the section
/// digraph).
struct NucleusReport {
  enum class Status { Stabilized, BudgetExceeded };
  Status status = Status::BudgetExceeded;
  std::vector<GroupElement> elements;
  std::vector<GroupElement> minimal_nucleus;
  std::size_t rounds = 0;
  std::size_t products_explored = 0;
  std::size_t classes_registered = 0;
  std::size_t closure_work = 0;  // closure nodes visited by equality decisions
  std::string budget_note;

  bool stabilized() const { return status == Status::Stabilized; }
};

NucleusReport compute_nucleus(const MachinePtr& machine,
                              const NucleusBudgets& budgets = {});

// Line-oriented key=value serializations (stable field order).
std::string to_key_values(const WitnessReport& r);
std::string to_key_values(const NucleusReport& r);
std::string to_key_values(const OrderStatus& s, const std::string& prefix);

}  // namespace selfsim
