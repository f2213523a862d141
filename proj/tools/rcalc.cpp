// rcalc: command-line front end to the resource calculus library.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcalc/explore.hpp"
#include "rcalc/lambda.hpp"
#include "rcalc/machine.hpp"
#include "rcalc/parser.hpp"
#include "rcalc/serialize.hpp"
#include "rcalc/standardization.hpp"

using namespace rcalc;

namespace {

enum Exit { kOk = 0, kCrash = 1, kBudget = 2, kParse = 3 };

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  crash to 0, or every machine run undefined\n"
    "  2  budget exhausted, or the standardization search gave up\n"
    "  3  parse error or malformed input";

struct Input {
  std::string text;
  std::string file;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string source(const Input& in) {
  if (!in.text.empty() && !in.file.empty()) throw std::invalid_argument("give either an argument or --file");
  if (!in.text.empty()) return in.text;
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw std::invalid_argument("cannot open " + in.file);
    return read_all(f);
  }
  return read_all(std::cin);
}

int report_parse_error(const ParseError& e) {
  std::cerr << "parse error at " << e.span().start << "-" << e.span().end << ": " << e.what() << "\n";
  return kParse;
}

std::string path_text(const Term& root, const Path& p) {
  Json j = path_to_json(root, p);
  if (j.empty()) return "root";
  std::string s;
  for (const auto& t : j) s += (s.empty() ? "" : ".") + t.get<std::string>();
  return s;
}

std::vector<int> parse_path_text(const std::string& text) {
  Json tags = Json::array();
  if (text != "root") {
    std::stringstream ss(text);
    std::string tag;
    while (std::getline(ss, tag, '.')) tags.push_back(tag);
  }
  return path_code_from_json(tags);
}

int exit_for(TraceEnd e) {
  switch (e) {
    case TraceEnd::Crashed: return kCrash;
    case TraceEnd::BudgetExhausted: return kBudget;
    default: return kOk;
  }
}

std::string final_text(const Trace& t) {
  if (t.mode == Mode::Nd) return t.end == TraceEnd::Crashed ? "0" : print(t.final_term());
  return print(t.final_sum());
}

void print_trace_text(const Trace& t, bool annotate) {
  std::cout << print(t.initial) << "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    std::string state = t.mode == Mode::Nd ? print(s.after_term()) : print(t.states[i]);
    std::cout << "-> " << state;
    if (annotate) std::cout << "    [" << to_string(s.redex.rule) << " at " << path_text(s.before, s.redex.path) << "]";
    std::cout << "\n";
  }
  if (t.mode == Mode::Nd && t.end == TraceEnd::Crashed) std::cout << "-> 0\n";
}

void print_trace_json(const Trace& t) {
  for (const auto& r : trace_to_json(t)) std::cout << r.dump() << "\n";
}

struct Common {
  Input in;
  std::string format = "text";
};

// ---------------------------------------------------------------------------

int cmd_parse(const Common& c) {
  ParsedSum ps = parse_sum_spans(source(c.in));
  if (c.format == "json") {
    Json j;
    j["sum"] = print(ps.sum);
    j["addends"] = Json::array();
    for (std::size_t i = 0; i < ps.addends.size(); ++i) {
      j["addends"].push_back({{"term", print(ps.addends[i])},
                              {"size", size(ps.addends[i])},
                              {"span", {ps.spans[i].start, ps.spans[i].end}}});
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << print(ps.sum) << "\n";
  }
  return kOk;
}

struct ReduceOpts {
  std::string mode = "giant";
  std::string pick = "leftmost";
  long steps = -1;
  bool annotate = false;
};

int cmd_reduce(const Common& c, const ReduceOpts& o) {
  Term m = parse_term(source(c.in));
  Strategy st;
  st.mode = o.mode == "baby" ? Mode::Baby : o.mode == "nd" ? Mode::Nd : Mode::Giant;
  if (o.pick == "all") {
    st.pick = Pick::Exhaustive;
  } else if (o.pick.rfind("path=", 0) == 0) {
    st.pick = Pick::GivenPaths;
    std::stringstream ss(o.pick.substr(5));
    std::string p;
    while (std::getline(ss, p, ';')) st.paths.push_back(parse_path_text(p));
  } else if (o.pick != "leftmost") {
    throw std::invalid_argument("--pick must be leftmost, all or path=...");
  }
  const std::size_t steps = o.steps >= 0 ? static_cast<std::size_t>(o.steps) : st.pick == Pick::Exhaustive ? 16 : 1000;
  auto traces = strategy_run(m, st, steps);

  if (st.pick != Pick::Exhaustive) {
    const Trace& t = traces.front();
    if (c.format == "json") {
      print_trace_json(t);
      std::cout << Json{{"end", to_string(t.end)}, {"result", final_text(t)}}.dump() << "\n";
    } else {
      print_trace_text(t, o.annotate);
    }
    if (t.end == TraceEnd::BudgetExhausted) std::cerr << "budget exhausted after " << steps << " steps\n";
    return exit_for(t.end);
  }

  bool normal = false, budget = false;
  for (const auto& t : traces) {
    normal = normal || t.end == TraceEnd::Normal;
    budget = budget || t.end == TraceEnd::BudgetExhausted;
    if (c.format == "json") {
      std::cout << Json{{"end", to_string(t.end)}, {"result", final_text(t)}, {"steps", trace_to_json(t)}}.dump()
                << "\n";
    } else {
      std::cout << to_string(t.end) << ": " << final_text(t) << "\n";
    }
  }
  return normal ? kOk : budget ? kBudget : kCrash;
}

// ---------------------------------------------------------------------------

struct StdOpts {
  std::vector<std::string> terms;
  std::string check;
  std::string trace_file;
  std::size_t bound = 8;
  std::size_t slack = 2;
  bool annotate = false;
};

// Splits "M0 -> M1 -> ..." and links consecutive terms by single nd steps.
Trace chain_from_text(const std::string& text) {
  std::vector<Term> terms;
  std::size_t from = 0;
  for (;;) {
    std::size_t at = text.find("->", from);
    terms.push_back(parse_term(text.substr(from, at == std::string::npos ? std::string::npos : at - from)));
    if (at == std::string::npos) break;
    from = at + 2;
  }
  Trace t{terms.front(), Mode::Nd, {}, {}, TraceEnd::Open};
  for (std::size_t i = 1; i < terms.size(); ++i) {
    Term cur = t.final_term();
    const std::string key = canonical_key(terms[i]);
    bool found = false;
    for (auto& s : nd_successors(cur)) {
      if (s.chosen == key) {
        t.steps.push_back(std::move(s));
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("no single nd step from term " + std::to_string(i) + " to term " + std::to_string(i + 1));
  }
  return t;
}

void print_report(const StdReport& r, const std::string& format) {
  if (format == "json") {
    std::cout << report_to_json(r).dump() << "\n";
    return;
  }
  if (r.standard) {
    std::cout << "standard\n";
    return;
  }
  const Violation& v = *r.violation;
  std::cout << "not standard: step " << v.step << " fires a residual of " << path_text(v.before, v.prior)
            << ", which precedes the redex " << path_text(v.before, v.fired) << " fired at step " << v.earlier
            << " in " << print(v.before) << "\n";
}

int cmd_standardize(const Common& c, const StdOpts& o) {
  Trace t;
  if (!o.check.empty()) {
    print_report(is_standard(chain_from_text(o.check)), c.format);
    return kOk;
  }
  if (!o.trace_file.empty()) {
    std::string text;
    if (o.trace_file == "-") {
      text = read_all(std::cin);
    } else {
      std::ifstream f(o.trace_file);
      if (!f) throw std::invalid_argument("cannot open " + o.trace_file);
      text = read_all(f);
    }
    Json records = Json::array();
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      Json j = Json::parse(line);
      // Summary lines such as {"end": ...} carry no step.
      if (j.is_array()) {
        for (auto& r : j) records.push_back(r);
      } else if (j.contains("term_before")) {
        records.push_back(j);
      }
    }
    t = standardize_trace(trace_from_json(records), o.slack);
  } else {
    if (o.terms.size() != 2) throw std::invalid_argument("standardize needs M and N, --check or --trace");
    t = standardize(parse_term(o.terms[0]), parse_term(o.terms[1]), o.bound, o.slack);
  }
  if (c.format == "json") {
    print_trace_json(t);
  } else {
    print_trace_text(t, o.annotate);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct MachineOpts {
  std::string policy = "canonical";
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  bool tree = false;
  bool trace = false;
};

void print_tree(const MachineNode& n, int depth) {
  std::cout << std::string(2 * depth, ' ') << "(" << to_string(n.rule) << ") " << print(n.in) << " => "
            << print(n.out);
  if (n.choice) std::cout << "    {" << *n.choice << "}";
  std::cout << "\n";
  for (const auto& ch : n.children) print_tree(*ch, depth + 1);
}

int cmd_machine(const Common& c, const MachineOpts& o) {
  Term m = parse_term(source(c.in));
  MachineConfig cfg;
  cfg.policy = o.policy == "random" ? Policy::SeededRandom : o.policy == "all" ? Policy::EnumerateAll : Policy::CanonicalFirst;
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  auto outcomes = machine_step_run(m, cfg);
  bool converged = false, budget = false;
  for (const auto& out : outcomes) {
    converged = converged || out.status == MachineStatus::Converged;
    budget = budget || out.status == MachineStatus::BudgetExhausted;
    if (c.format == "json") {
      Json j = outcome_to_json(out);
      if (!o.tree) j.erase("tree");
      if (o.trace && out.status == MachineStatus::Converged) j["trace"] = trace_to_json(reconstruct_trace(*out.tree));
      std::cout << j.dump() << "\n";
      continue;
    }
    std::cout << to_string(out.status);
    if (out.result) std::cout << ": " << print(*out.result);
    if (out.stuck) std::cout << " at " << print(*out.stuck);
    std::cout << "\n";
    if (o.tree && out.tree) print_tree(*out.tree, 1);
    if (o.trace && out.status == MachineStatus::Converged) print_trace_text(reconstruct_trace(*out.tree), true);
  }
  return converged ? kOk : budget ? kBudget : kCrash;
}

int cmd_solvable(const Common& c, const MachineOpts& o) {
  SolvabilityVerdict v = may_solvable(parse_term(source(c.in)), o.budget);
  if (c.format == "json") {
    Json j = verdict_to_json(v);
    if (!o.tree) j.erase("witness");
    std::cout << j.dump() << "\n";
  } else {
    if (v.may_solvable) {
      std::cout << "may-solvable\n";
    } else if (v.exhaustive) {
      std::cout << "not may-solvable: every run is undefined\n";
    } else {
      std::cout << "unknown: budget exhausted\n";
    }
    std::cout << "explored " << v.explored << " rule applications\n";
    if (o.tree && v.witness) print_tree(*v.witness, 1);
  }
  return v.may_solvable ? kOk : v.exhaustive ? kCrash : kBudget;
}

int cmd_translate(const Common& c) {
  LambdaTerm l = parse_lambda(source(c.in));
  Term t = from_lambda(l);
  if (c.format == "json") {
    std::cout << Json{{"lambda", print_lambda(l)}, {"term", print(t)}}.dump() << "\n";
  } else {
    std::cout << print(t) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference implementation of the resource calculus."};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool positional = true) {
    if (positional) sub->add_option("input", common.in.text, "Term (reads stdin when absent)");
    sub->add_option("--file", common.in.file, "Read the input from a file");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* parse = app.add_subcommand("parse", "Parse a sum and print it in canonical form");
  add_common(parse);

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "Reduce a term and print the trace");
  add_common(reduce);
  reduce->add_option("--mode", ro.mode, "Reduction")->check(CLI::IsMember({"baby", "giant", "nd"}));
  reduce->add_option("--pick", ro.pick,
                     "leftmost, all (every outcome), or path=P1;P2;... with P like fun.arg.elem:0.content or root");
  reduce->add_option("--steps", ro.steps, "Step bound (default 1000, or depth 16 with --pick all)")->check(CLI::PositiveNumber);
  reduce->add_flag("--annotate", ro.annotate, "Show rule and redex path of each step");

  StdOpts so;
  auto* stdz = app.add_subcommand("standardize", "Standard nd trace from M to N, or check a trace");
  stdz->add_option("terms", so.terms, "M N");
  stdz->add_option("--check", so.check, "Chain \"M0 -> M1 -> ...\" to test for standardness");
  stdz->add_option("--trace", so.trace_file, "Step records (JSON lines) to standardize; - for stdin");
  stdz->add_option("--bound", so.bound, "Length bound for the chain search");
  stdz->add_option("--slack", so.slack, "Extra length allowed when factoring");
  stdz->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  stdz->add_flag("--annotate", so.annotate, "Show rule and redex path of each step");

  MachineOpts mo;
  auto* machine = app.add_subcommand("machine", "Run the ND machine");
  add_common(machine);
  machine->add_option("--policy", mo.policy, "Addend choice")->check(CLI::IsMember({"canonical", "random", "all"}));
  machine->add_option("--seed", mo.seed, "Seed for --policy random");
  machine->add_option("--budget", mo.budget, "Rule applications")->check(CLI::PositiveNumber);
  machine->add_flag("--tree", mo.tree, "Print the derivation tree");
  machine->add_flag("--trace", mo.trace, "Print the nd trace of converged runs");

  auto* solvable = app.add_subcommand("solvable", "Semi-decide may-solvability");
  add_common(solvable);
  solvable->add_option("--budget", mo.budget, "Rule applications")->check(CLI::PositiveNumber);
  solvable->add_flag("--tree", mo.tree, "Print the witness tree");

  auto* translate = app.add_subcommand("translate", "Translate a pure lambda-term");
  add_common(translate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*parse) return cmd_parse(common);
    if (*reduce) return cmd_reduce(common, ro);
    if (*stdz) return cmd_standardize(common, so);
    if (*machine) return cmd_machine(common, mo);
    if (*solvable) return cmd_solvable(common, mo);
    if (*translate) return cmd_translate(common);
  } catch (const ParseError& e) {
    return report_parse_error(e);
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const NoChainFound& e) {
    std::cerr << "no chain: " << e.what() << "\n";
    return kBudget;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
