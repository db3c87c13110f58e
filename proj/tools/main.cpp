// Command-line workbench for invertible Mealy automata and the self-similar
// groups they generate.
//
// Exit codes: 0 success; 1 failed check or negative verdict; 2 usage error;
// 3 parse or data error; 4 budget exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "selfsim/catalogue.hpp"
#include "selfsim/graph.hpp"

using namespace selfsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitBudget = 4;

struct CommonOpts {
  int catalogue_key = 0;
  std::string file;
  std::string data_dir;
  std::string format = "text";
  std::string out;
};

void add_source_opts(CLI::App* cmd, CommonOpts& opts) {
  auto* key = cmd->add_option("--catalogue", opts.catalogue_key,
                              "catalogue key of the automaton");
  auto* file = cmd->add_option("--file", opts.file, "automaton file to load");
  key->excludes(file);
  cmd->add_option("--data-dir", opts.data_dir, "catalogue data directory");
}

void add_output_opts(CLI::App* cmd, CommonOpts& opts,
                     const std::string& formats = "text,structured") {
  cmd->add_option("--format", opts.format, "output format (" + formats + ")");
  cmd->add_option("--out", opts.out, "write output to this path instead of stdout");
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MachinePtr load_machine(const CommonOpts& opts) {
  if (!opts.file.empty()) return parse_automaton_shared(slurp_file(opts.file));
  if (opts.catalogue_key != 0) {
    std::filesystem::path dir = opts.data_dir.empty()
                                    ? std::filesystem::path{}
                                    : std::filesystem::path(opts.data_dir);
    return catalogue_get(opts.catalogue_key, dir).machine;
  }
  throw Error("--catalogue or --file is required");
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(opts.out);
    if (!out) throw Error("cannot write " + opts.out);
    out << text;
  }
}

bool structured(const CommonOpts& opts) { return opts.format == "structured"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "workbench for invertible Mealy automata and self-similar group actions"};
  app.require_subcommand(1);

  CommonOpts opts;
  int exit_code = kExitOk;

  // info
  auto* info = app.add_subcommand("info", "states, activity and sizes of an automaton");
  add_source_opts(info, opts);
  add_output_opts(info, opts);
  info->callback([&] {
    MachinePtr m = load_machine(opts);
    std::ostringstream os;
    if (structured(opts)) {
      os << "name=" << m->name << "\nalphabet=" << m->alphabet_size
         << "\nstates=" << m->state_count() << "\ninvertible=true\n";
      for (int s = 0; s < m->state_count(); ++s)
        os << "state." << m->labels[s] << ".active="
           << (m->state_active(s) ? "true" : "false") << "\n";
    } else {
      os << "automaton " << (m->name.empty() ? "(unnamed)" : m->name) << "\n";
      os << "alphabet size: " << m->alphabet_size << "\n";
      os << "states (" << m->state_count() << "):";
      for (int s = 0; s < m->state_count(); ++s)
        os << " " << m->labels[s] << (m->state_active(s) ? "*" : "");
      os << "  (* = active)\n";
      os << "invertible: yes\n";
    }
    emit(opts, os.str());
  });

  // act
  std::string g_text, word_text, rhs_text;
  auto* act_cmd = app.add_subcommand("act", "apply an element to a finite word");
  add_source_opts(act_cmd, opts);
  add_output_opts(act_cmd, opts);
  act_cmd->add_option("--g", g_text, "group element")->required();
  act_cmd->add_option("--word", word_text, "finite word")->required();
  act_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    Letters out =
        act(parse_element(m, g_text), parse_letters(word_text, m->alphabet_size));
    emit(opts, (structured(opts) ? "image=" : "") + format_letters(out));
  });

  // section
  auto* sec_cmd =
      app.add_subcommand("section", "restriction of an element below a word");
  add_source_opts(sec_cmd, opts);
  add_output_opts(sec_cmd, opts);
  sec_cmd->add_option("--g", g_text, "group element")->required();
  sec_cmd->add_option("--word", word_text, "finite word")->required();
  sec_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    GroupElement s = section(parse_element(m, g_text),
                             parse_letters(word_text, m->alphabet_size));
    emit(opts, (structured(opts) ? "section=" : "") + format_element(s));
  });

  // equal
  auto* eq_cmd = app.add_subcommand("equal", "decide equality of two elements");
  add_source_opts(eq_cmd, opts);
  add_output_opts(eq_cmd, opts);
  eq_cmd->add_option("--lhs", g_text, "left element expression")->required();
  eq_cmd->add_option("--rhs", rhs_text, "right element expression")->required();
  eq_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    bool eq = equal(parse_element(m, g_text), parse_element(m, rhs_text));
    emit(opts,
         std::string(structured(opts) ? "equal=" : "") + (eq ? "true" : "false"));
  });

  // identity
  auto* id_cmd =
      app.add_subcommand("identity", "decide whether an element acts trivially");
  add_source_opts(id_cmd, opts);
  add_output_opts(id_cmd, opts);
  id_cmd->add_option("--g", g_text, "group element")->required();
  id_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    bool id = is_identity(parse_element(m, g_text));
    emit(opts,
         std::string(structured(opts) ? "identity=" : "") + (id ? "true" : "false"));
  });

  // order
  OrderBudgets order_budgets;
  auto* ord_cmd = app.add_subcommand("order", "order semi-decision for an element");
  add_source_opts(ord_cmd, opts);
  add_output_opts(ord_cmd, opts);
  ord_cmd->add_option("--g", g_text, "group element")->required();
  ord_cmd->add_option("--max-depth", order_budgets.max_depth, "level scan depth budget");
  ord_cmd->add_option("--ord-threshold", order_budgets.ord_threshold,
                      "order growth threshold");
  ord_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    OrderStatus st = order_status(parse_element(m, g_text), order_budgets);
    if (structured(opts)) {
      emit(opts, to_key_values(st, "order."));
    } else {
      std::ostringstream os;
      switch (st.kind) {
        case OrderStatus::Kind::Finite: os << "finite, order " << st.order; break;
        case OrderStatus::Kind::InfiniteEvidence:
          os << "infinite-order evidence (" << st.note << ")";
          break;
        case OrderStatus::Kind::Unknown: os << "unknown (" << st.note << ")"; break;
      }
      os << "\nlevel orders: " << format_ord_sequence(st.ord_sequence) << "\n";
      emit(opts, os.str());
    }
  });

  // ep-act
  auto* ep_cmd =
      app.add_subcommand("ep-act", "apply an element to an eventually periodic word");
  add_source_opts(ep_cmd, opts);
  add_output_opts(ep_cmd, opts);
  ep_cmd->add_option("--g", g_text, "group element")->required();
  ep_cmd->add_option("--word", word_text, "eventually periodic word, e.g. 001(101)^inf")
      ->required();
  ep_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    EPWord img =
        act_ep(parse_element(m, g_text), parse_epword(word_text, m->alphabet_size));
    emit(opts, (structured(opts) ? "image=" : "") + format_epword(img));
  });

  // shift-eq
  auto* shift_cmd = app.add_subcommand("shift-eq", "decide left shift equivalence");
  add_source_opts(shift_cmd, opts);
  add_output_opts(shift_cmd, opts);
  shift_cmd->add_option("--lhs", g_text, "eventually periodic word")->required();
  shift_cmd->add_option("--rhs", rhs_text, "eventually periodic word")->required();
  shift_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    bool eq = shift_equivalent(parse_epword(g_text, m->alphabet_size),
                               parse_epword(rhs_text, m->alphabet_size));
    emit(opts, std::string(structured(opts) ? "shift_equivalent=" : "") +
                   (eq ? "true" : "false"));
  });

  // witness check / search
  auto* witness = app.add_subcommand("witness", "non-contraction witness tools");
  witness->require_subcommand(1);
  WitnessBudgets wbudgets;
  auto* wcheck = witness->add_subcommand("check", "test a (g, v) witness pair");
  add_source_opts(wcheck, opts);
  add_output_opts(wcheck, opts);
  wcheck->add_option("--g", g_text, "group element")->required();
  wcheck->add_option("--v", word_text, "fixed word candidate")->required();
  wcheck->add_option("--max-depth", wbudgets.order.max_depth, "order scan depth");
  wcheck->add_option("--ord-threshold", wbudgets.order.ord_threshold,
                     "order growth threshold");
  wcheck->callback([&] {
    MachinePtr m = load_machine(opts);
    WitnessReport r = check_witness(parse_element(m, g_text),
                                    parse_letters(word_text, m->alphabet_size),
                                    wbudgets);
    if (structured(opts)) {
      emit(opts, to_key_values(r));
    } else {
      std::ostringstream os;
      os << "g = " << format_element(r.g) << ", v = " << format_letters(r.v) << "\n";
      os << "g fixes v: " << (r.fixes_v ? "yes" : "no") << "\n";
      os << "g|v equals g: " << (r.section_is_self ? "yes" : "no") << "\n";
      os << "order: ";
      switch (r.order.kind) {
        case OrderStatus::Kind::Finite: os << "finite (" << r.order.order << ")"; break;
        case OrderStatus::Kind::InfiniteEvidence: os << "infinite-order evidence"; break;
        case OrderStatus::Kind::Unknown: os << "unknown"; break;
      }
      os << " " << format_ord_sequence(r.order.ord_sequence) << "\n";
      os << "verdict: " << to_string(r.verdict) << "\n";
      emit(opts, os.str());
    }
    if (r.verdict != Verdict::NonContracting) exit_code = kExitCheckFailed;
  });

  int max_g_len = 2, max_v_len = 2;
  auto* wsearch = witness->add_subcommand("search", "enumerate witness candidates");
  add_source_opts(wsearch, opts);
  add_output_opts(wsearch, opts);
  wsearch->add_option("--max-g", max_g_len, "maximum element word length")->required();
  wsearch->add_option("--max-v", max_v_len, "maximum fixed word length")->required();
  wsearch->add_option("--max-depth", wbudgets.order.max_depth, "order scan depth");
  wsearch->callback([&] {
    MachinePtr m = load_machine(opts);
    auto reports = search_witness(m, max_g_len, max_v_len, wbudgets);
    std::ostringstream os;
    if (structured(opts)) {
      os << "hits=" << reports.size() << "\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        os << "hit." << i << ".g=" << format_element(reports[i].g) << "\n";
        os << "hit." << i << ".v=" << format_letters(reports[i].v) << "\n";
        os << "hit." << i << ".verdict=" << to_string(reports[i].verdict) << "\n";
      }
    } else {
      os << reports.size() << " candidate pair(s)\n";
      for (const auto& r : reports)
        os << "  g = " << format_element(r.g) << ", v = " << format_letters(r.v)
           << "  [" << to_string(r.verdict) << "]\n";
    }
    emit(opts, os.str());
  });

  // nucleus
  NucleusBudgets nbudgets;
  auto* nuc_cmd = app.add_subcommand("nucleus", "contraction semi-decision");
  add_source_opts(nuc_cmd, opts);
  add_output_opts(nuc_cmd, opts);
  nuc_cmd->add_option("--size-budget", nbudgets.size_budget, "element class budget");
  nuc_cmd->add_option("--depth-budget", nbudgets.depth_budget,
                      "section exploration depth");
  nuc_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    NucleusReport r = compute_nucleus(m, nbudgets);
    if (structured(opts)) {
      emit(opts, to_key_values(r));
    } else {
      std::ostringstream os;
      if (r.stabilized()) {
        os << "stabilized: " << r.elements.size() << " element class(es)\n";
        os << "minimal nucleus (" << r.minimal_nucleus.size() << "):";
        for (const auto& g : r.minimal_nucleus) os << " " << format_element(g);
        os << "\n";
      } else {
        os << "budget exceeded: " << r.budget_note << "\n";
        os << "classes so far: " << r.elements.size() << "\n";
      }
      emit(opts, os.str());
    }
    if (!r.stabilized()) exit_code = kExitBudget;
  });

  // ball
  int depth = 3;
  auto* ball_cmd =
      app.add_subcommand("ball", "finite ball of the self-similarity graph");
  add_source_opts(ball_cmd, opts);
  add_output_opts(ball_cmd, opts, "text,structured,dot");
  ball_cmd->add_option("--depth", depth, "ball radius")->required();
  ball_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    GraphBall ball = build_ball(m, depth);
    if (opts.format == "dot") {
      emit(opts, render_dot(ball));
    } else if (structured(opts)) {
      std::ostringstream os;
      os << "depth=" << ball.depth << "\nvertices=" << ball.vertex_count()
         << "\nedges=" << ball.edge_count() << "\nmax_degree=" << ball.max_degree()
         << "\n";
      emit(opts, os.str());
    } else {
      std::ostringstream os;
      os << "ball of depth " << ball.depth << ": " << ball.vertex_count()
         << " vertices, " << ball.edge_count() << " edges, max degree "
         << ball.max_degree() << "\n";
      emit(opts, os.str());
    }
  });

  // divergence
  std::string v_text, w_text;
  int dv_n = 1, dv_kmax = 4;
  auto* div_cmd = app.add_subcommand("divergence", "horizontal corridor probe");
  add_source_opts(div_cmd, opts);
  add_output_opts(div_cmd, opts, "text,structured,csv");
  div_cmd->add_option("--g", g_text, "group element")->required();
  div_cmd->add_option("--v", v_text, "fixed word with self section")->required();
  div_cmd->add_option("--w", w_text, "displaced word")->required();
  div_cmd->add_option("--n", dv_n, "power of g");
  div_cmd->add_option("--k-max", dv_kmax, "number of prefix repetitions");
  div_cmd->callback([&] {
    MachinePtr m = load_machine(opts);
    DivergenceReport r = divergence_experiment(
        parse_element(m, g_text), parse_letters(v_text, m->alphabet_size),
        parse_letters(w_text, m->alphabet_size), dv_n, dv_kmax);
    if (opts.format == "csv") {
      emit(opts, to_csv(r));
    } else if (structured(opts)) {
      emit(opts, to_key_values(r));
    } else {
      std::ostringstream os;
      os << "corridor between v^k w and v^k g^n(w), n = " << r.exponent << "\n";
      os << "  k  radius  corridor  measured\n";
      for (const auto& row : r.rows)
        os << "  " << row.k << "  " << row.radius << "  " << row.corridor << "  "
           << row.measured << "\n";
      os << "measured stays bounded while the radius grows: "
         << (r.bounded_while_radius_grows ? "yes" : "no") << "\n";
      emit(opts, os.str());
    }
  });

  // catalogue list / verify
  auto* cat = app.add_subcommand("catalogue", "catalogued automata and their suites");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list catalogue keys");
  add_output_opts(cat_list, opts);
  cat_list->add_option("--data-dir", opts.data_dir, "catalogue data directory");
  cat_list->callback([&] {
    std::ostringstream os;
    for (int key : catalogue_keys()) os << key << "\n";
    emit(opts, os.str());
  });

  std::string verify_what = "all";
  auto* cat_verify = cat->add_subcommand("verify", "run verification suites");
  add_output_opts(cat_verify, opts);
  cat_verify->add_option("--data-dir", opts.data_dir, "catalogue data directory");
  cat_verify->add_option("key", verify_what, "catalogue key or 'all'");
  cat_verify->callback([&] {
    std::vector<int> keys;
    if (verify_what == "all") {
      keys = catalogue_keys();
    } else {
      try {
        keys.push_back(std::stoi(verify_what));
      } catch (const std::exception&) {
        throw Error("expected a catalogue key or 'all', got '" + verify_what + "'");
      }
    }
    std::filesystem::path dir = opts.data_dir.empty()
                                    ? std::filesystem::path{}
                                    : std::filesystem::path(opts.data_dir);

    // Suites are independent; run them across workers and print in key order.
    std::vector<std::vector<CheckResult>> all_results(keys.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(keys.size()); ++i)
      all_results[i] = run_suite(catalogue_get(keys[i], dir));

    std::ostringstream os;
    int suites_passed = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      int key = keys[i];
      const auto& results = all_results[i];
      bool ok = all_passed(results);
      suites_passed += ok;
      if (structured(opts)) {
        os << "suite." << key << "=" << (ok ? "pass" : "fail") << "\n";
        for (const auto& r : results)
          if (!r.passed) os << "suite." << key << ".failed=" << r.label << "\n";
      } else {
        os << (ok ? "pass" : "FAIL") << "  " << key << "  (" << results.size()
           << " checks)\n";
        for (const auto& r : results)
          if (!r.passed) os << "      " << r.label << ": " << r.detail << "\n";
      }
    }
    if (!structured(opts))
      os << suites_passed << "/" << keys.size() << " suites passed\n";
    else
      os << "suites_passed=" << suites_passed << "\nsuites_total=" << keys.size()
         << "\n";
    emit(opts, os.str());
    if (suites_passed != static_cast<int>(keys.size())) exit_code = kExitCheckFailed;
  });

  // dot
  auto* dot_cmd = app.add_subcommand("dot", "Moore diagram in Graphviz format");
  add_source_opts(dot_cmd, opts);
  add_output_opts(dot_cmd, opts, "dot");
  dot_cmd->callback([&] { emit(opts, render_dot(*load_machine(opts))); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return exit_code;
}
