#include "rcalc/serialize.hpp"

#include <map>

#include "rcalc/parser.hpp"

namespace rcalc {

namespace {

std::string print_after(const Step& s) {
  return s.mode == Mode::Nd ? print(s.after_term()) : print(s.after);
}

MachineRule rule_from_string(const std::string& s) {
  static const std::map<std::string, MachineRule> rules = {
      {"lambda", MachineRule::Lambda}, {"end", MachineRule::End},   {"head", MachineRule::Head},
      {"0", MachineRule::Zero},        {"beta", MachineRule::Beta}, {"!beta", MachineRule::BangBeta},
      {"1b", MachineRule::OneB},       {"b", MachineRule::B},       {"!b", MachineRule::BangB},
  };
  auto it = rules.find(s);
  if (it == rules.end()) throw std::invalid_argument("unknown machine rule '" + s + "'");
  return it->second;
}

bool is_bag_rule(MachineRule r) {
  return r == MachineRule::OneB || r == MachineRule::B || r == MachineRule::BangB;
}

}  // namespace

Json path_to_json(const Term& root, const Path& p) {
  Json out = Json::array();
  auto code = canonical_path(root, p);
  for (std::size_t i = 0; i < code.size(); ++i) {
    switch (code[i]) {
      case -1: out.push_back("body"); break;
      case -3: out.push_back("fun"); break;
      case -2:
        out.push_back("arg");
        out.push_back("elem:" + std::to_string(code[i + 1]));
        out.push_back("content");
        i += 2;
        break;
      default: throw std::logic_error("unexpected canonical path code");
    }
  }
  return out;
}

std::vector<int> path_code_from_json(const Json& j) {
  std::vector<int> code;
  for (const auto& tag : j) {
    const std::string s = tag.get<std::string>();
    if (s == "body") {
      code.push_back(-1);
    } else if (s == "fun") {
      code.push_back(-3);
    } else if (s == "arg") {
      code.push_back(-2);
    } else if (s == "content") {
      code.push_back(-4);
    } else if (s.rfind("elem:", 0) == 0) {
      code.push_back(std::stoi(s.substr(5)));
    } else {
      throw std::invalid_argument("unknown path step '" + s + "'");
    }
  }
  return code;
}

Path path_from_json(const Term& root, const Json& j) {
  return path_from_canonical(root, path_code_from_json(j));
}

Json step_to_json(const Step& s, std::size_t index) {
  Json j;
  j["index"] = index;
  j["rule"] = to_string(s.redex.rule);
  j["mode"] = to_string(s.mode);
  j["redex_path"] = path_to_json(s.before, s.redex.path);
  j["chosen_addend"] = s.mode == Mode::Nd ? Json(s.chosen) : Json(nullptr);
  j["term_before"] = print(s.before);
  j["term_after"] = print_after(s);
  return j;
}

Json trace_to_json(const Trace& t) {
  Json out = Json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) out.push_back(step_to_json(t.steps[i], i + 1));
  return out;
}

Trace trace_from_json(const Json& records) {
  if (!records.is_array() || records.empty()) {
    throw std::invalid_argument("a trace needs a non-empty array of step records");
  }
  Term initial = parse_term(records.front().at("term_before").get<std::string>());
  Trace t{initial, Mode::Nd, {}, {}, TraceEnd::Open};
  Term cur = initial;
  for (const auto& r : records) {
    Term before = parse_term(r.at("term_before").get<std::string>());
    if (!alpha_eq(before, cur)) {
      throw std::invalid_argument("record " + r.at("index").dump() + " does not start where the previous ended");
    }
    if (r.at("mode").get<std::string>() != "nd") throw std::invalid_argument("only nd traces can be read back");
    Path p = path_from_json(cur, r.at("redex_path"));
    Step s = make_nd_step(cur, redex_at(cur, p), parse_term(r.at("term_after").get<std::string>()));
    cur = s.after_term();
    t.steps.push_back(std::move(s));
  }
  return t;
}

Json tree_to_json(const MachineNode& n) {
  Json j;
  j["rule"] = to_string(n.rule);
  j["judgment_in"] = print(n.in);
  j["judgment_out"] = print(n.out);
  j["choice"] = n.choice ? Json(*n.choice) : Json(nullptr);
  j["children"] = Json::array();
  for (const auto& c : n.children) j["children"].push_back(tree_to_json(*c));
  return j;
}

NodePtr tree_from_json(const Json& j) {
  auto n = std::make_shared<MachineNode>();
  n->rule = rule_from_string(j.at("rule").get<std::string>());
  const auto in = j.at("judgment_in").get<std::string>();
  const auto out = j.at("judgment_out").get<std::string>();
  if (is_bag_rule(n->rule)) {
    n->in = parse_bag(in);
    n->out = parse_bag(out);
  } else {
    n->in = parse_term(in);
    n->out = parse_term(out);
  }
  if (!j.at("choice").is_null()) n->choice = j.at("choice").get<std::string>();
  for (const auto& c : j.at("children")) n->children.push_back(tree_from_json(c));
  return n;
}

Json outcome_to_json(const MachineOutcome& o) {
  Json j;
  j["status"] = to_string(o.status);
  if (o.result) j["result"] = print(*o.result);
  if (o.stuck) j["stuck"] = print(*o.stuck);
  if (o.tree) j["tree"] = tree_to_json(*o.tree);
  return j;
}

Json verdict_to_json(const SolvabilityVerdict& v) {
  Json j;
  j["status"] = v.may_solvable ? "may-solvable" : "not-within-budget";
  if (v.witness) j["witness"] = tree_to_json(*v.witness);
  j["explored"] = v.explored;
  j["exhaustive"] = v.exhaustive;
  return j;
}

Json report_to_json(const StdReport& r) {
  Json j;
  j["standard"] = r.standard;
  if (r.violation) {
    const Violation& v = *r.violation;
    j["violation"] = {{"step", v.step},
                      {"earlier", v.earlier},
                      {"term", print(v.before)},
                      {"prior", path_to_json(v.before, v.prior)},
                      {"fired", path_to_json(v.before, v.fired)}};
  }
  return j;
}

}  // namespace rcalc
