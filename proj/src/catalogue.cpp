#include "selfsim/catalogue.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef SELFSIM_DATA_DIR
#define SELFSIM_DATA_DIR "data/catalogue"
#endif

namespace selfsim {

using nlohmann::json;

GroupElement CatalogueEntry::witness_element() const {
  return parse_element(machine, witness_g);
}

Letters CatalogueEntry::witness_word() const {
  return parse_letters(witness_v, machine->alphabet_size);
}

const std::vector<int>& catalogue_keys() {
  static const std::vector<int> keys = {749,  861,  882,  887,  920,
                                        969,  2361, 2365, 2402, 2427};
  return keys;
}

std::filesystem::path catalogue_data_dir() {
  if (const char* env = std::getenv("SELFSIM_DATA_DIR"); env && *env)
    return std::filesystem::path(env);
  return std::filesystem::path(SELFSIM_DATA_DIR);
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

VerificationCheck::Kind kind_from(const std::string& name) {
  using K = VerificationCheck::Kind;
  if (name == "act") return K::ActEquals;
  if (name == "section") return K::SectionEquals;
  if (name == "identity") return K::IsIdentity;
  if (name == "ep_act") return K::EpActEquals;
  if (name == "shift_differs") return K::ShiftClassDiffers;
  if (name == "order_finite") return K::OrderFinite;
  throw Error("unknown check kind '" + name + "'");
}

}  // namespace

std::string kind_name(VerificationCheck::Kind k) {
  using K = VerificationCheck::Kind;
  switch (k) {
    case K::ActEquals: return "act";
    case K::SectionEquals: return "section";
    case K::IsIdentity: return "identity";
    case K::EpActEquals: return "ep_act";
    case K::ShiftClassDiffers: return "shift_differs";
    case K::OrderFinite: return "order_finite";
  }
  return "?";
}

CatalogueEntry catalogue_get(int key, const std::filesystem::path& dir) {
  std::filesystem::path base = dir.empty() ? catalogue_data_dir() : dir;
  std::filesystem::path json_path = base / (std::to_string(key) + ".json");
  if (!std::filesystem::exists(json_path)) {
    const auto& keys = catalogue_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw Error("unknown catalogue key " + std::to_string(key));
    throw Error("catalogue data missing: " + json_path.string());
  }
  json doc;
  try {
    doc = json::parse(slurp(json_path));
  } catch (const json::exception& e) {
    throw Error("malformed catalogue file " + json_path.string() + ": " + e.what());
  }

  CatalogueEntry entry;
  entry.key = doc.at("key").get<int>();
  if (entry.key != key) throw Error("catalogue key mismatch in " + json_path.string());

  std::filesystem::path aut_path = base / doc.at("automaton").get<std::string>();
  entry.machine = parse_automaton_shared(slurp(aut_path));

  entry.witness_g = doc.at("witness").at("g").get<std::string>();
  entry.witness_v = doc.at("witness").at("v").get<std::string>();

  for (const auto& c : doc.at("checks")) {
    VerificationCheck check;
    check.kind = kind_from(c.at("kind").get<std::string>());
    check.note = c.value("note", "");
    check.g = c.value("g", "");
    check.input = c.value("input", "");
    check.expected = c.value("expected", "");
    check.rhs_g = c.value("rhs_g", "");
    check.rhs_input = c.value("rhs_input", "");
    check.expected_order = c.value("order", std::uint64_t(0));
    entry.checks.push_back(std::move(check));
  }
  return entry;
}

namespace {

CheckResult run_check(const CatalogueEntry& entry, const VerificationCheck& c) {
  using K = VerificationCheck::Kind;
  const MachinePtr& m = entry.machine;
  const int k = m->alphabet_size;
  CheckResult res;
  res.label = kind_name(c.kind) + "(" + c.g +
              (c.input.empty() ? "" : ", " + c.input) + ")";
  if (!c.note.empty()) res.label += " [" + c.note + "]";

  try {
    switch (c.kind) {
      case K::ActEquals: {
        Letters got = act(parse_element(m, c.g), parse_letters(c.input, k));
        Letters want = parse_letters(c.expected, k);
        res.passed = got == want;
        if (!res.passed)
          res.detail = "got " + format_letters(got) + ", expected " + format_letters(want);
        break;
      }
      case K::SectionEquals: {
        GroupElement got = section(parse_element(m, c.g), parse_letters(c.input, k));
        GroupElement want = parse_element(m, c.expected);
        res.passed = equal(got, want);
        if (!res.passed)
          res.detail = "got " + format_element(got) + ", expected " + format_element(want);
        break;
      }
      case K::IsIdentity: {
        res.passed = is_identity(parse_element(m, c.g));
        if (!res.passed) res.detail = c.g + " acts nontrivially";
        break;
      }
      case K::EpActEquals: {
        EPWord got = act_ep(parse_element(m, c.g), parse_epword(c.input, k));
        EPWord want = parse_epword(c.expected, k);
        res.passed = got == want;
        if (!res.passed)
          res.detail = "got " + format_epword(got) + ", expected " + format_epword(want);
        break;
      }
      case K::ShiftClassDiffers: {
        EPWord lhs = act_ep(parse_element(m, c.g), parse_epword(c.input, k));
        EPWord rhs = act_ep(parse_element(m, c.rhs_g), parse_epword(c.rhs_input, k));
        res.passed = !shift_equivalent(lhs, rhs);
        if (!res.passed)
          res.detail = format_epword(lhs) + " and " + format_epword(rhs) +
                       " fall in the same shift class";
        break;
      }
      case K::OrderFinite: {
        OrderStatus st = order_status(parse_element(m, c.g));
        res.passed = st.finite() && st.order == c.expected_order;
        if (!res.passed)
          res.detail = "expected finite order " + std::to_string(c.expected_order);
        break;
      }
    }
  } catch (const Error& e) {
    res.passed = false;
    res.detail = std::string("error: ") + e.what();
  }
  return res;
}

}  // namespace

std::vector<CheckResult> run_suite(const CatalogueEntry& entry) {
  std::vector<CheckResult> results;

  // Witness conditions always run first.
  GroupElement g = entry.witness_element();
  Letters v = entry.witness_word();
  CheckResult fixes;
  fixes.label = "witness_fixes(" + entry.witness_g + ", " + entry.witness_v + ")";
  fixes.passed = act(g, v) == v;
  if (!fixes.passed) fixes.detail = "g does not fix v";
  results.push_back(fixes);

  CheckResult self;
  self.label = "witness_section(" + entry.witness_g + ", " + entry.witness_v + ")";
  self.passed = equal(section(g, v), g);
  if (!self.passed) self.detail = "g|v differs from g";
  results.push_back(self);

  for (const auto& c : entry.checks) results.push_back(run_check(entry, c));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace selfsim
