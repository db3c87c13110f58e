#pragma once

#include <filesystem>

#include "selfsim/contraction.hpp"
#include "selfsim/epword.hpp"

namespace selfsim {

/// One machine-checkable fact about a catalogued automaton, evaluated with
/// the element algebra alone. Operand strings use the element and word
/// grammars of the library.
struct VerificationCheck {
  enum class Kind {
    ActEquals,          // act(g, input) == expected (finite words)
    SectionEquals,      // section(g, input) equal to element `expected`
    IsIdentity,         // is_identity(g)
    EpActEquals,        // act_ep(g, input) == expected (EP words)
    ShiftClassDiffers,  // act_ep(g, input) not shift-equivalent to
                        // act_ep(rhs_g, rhs_input)
    OrderFinite,        // order_status(g) == Finite(expected_order)
  };

  Kind kind;
  std::string note;  // short statement of the fact being checked
  std::string g;
  std::string input;
  std::string expected;
  std::string rhs_g;
  std::string rhs_input;
  std::uint64_t expected_order = 0;
};

struct CatalogueEntry {
  int key = 0;
  MachinePtr machine;
  std::string witness_g;
  std::string witness_v;
  std::vector<VerificationCheck> checks;

  GroupElement witness_element() const;
  Letters witness_word() const;
};

// The ten catalogued 3-state binary automata, keyed by their index in the
// published classification.
const std::vector<int>& catalogue_keys();

// Data directory resolution: explicit argument, else $SELFSIM_DATA_DIR, else
// the compiled-in source location.
std::filesystem::path catalogue_data_dir();

CatalogueEntry catalogue_get(int key, const std::filesystem::path& dir = {});

struct CheckResult {
  bool passed = false;
  std::string label;
  std::string detail;  // computed vs expected on failure
};

std::vector<CheckResult> run_suite(const CatalogueEntry& entry);
bool all_passed(const std::vector<CheckResult>& results);

std::string kind_name(VerificationCheck::Kind k);

}  // namespace selfsim
