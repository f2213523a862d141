#include "rcalc/machine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "rcalc/substitution.hpp"

namespace rcalc {

std::string to_string(MachineRule r) {
  switch (r) {
    case MachineRule::Lambda: return "lambda";
    case MachineRule::End: return "end";
    case MachineRule::Head: return "head";
    case MachineRule::Zero: return "0";
    case MachineRule::Beta: return "beta";
    case MachineRule::BangBeta: return "!beta";
    case MachineRule::OneB: return "1b";
    case MachineRule::B: return "b";
    case MachineRule::BangB: return "!b";
  }
  return "?";
}

std::string to_string(MachineStatus s) {
  switch (s) {
    case MachineStatus::Converged: return "converged";
    case MachineStatus::Undefined: return "undefined";
    case MachineStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

struct Spine {
  Term head;
  std::vector<Bag> bags;  // P1 ... Pm, innermost application first
};

Spine spine(const Term& m) {
  Spine s{m, {}};
  while (s.head.is_app()) {
    s.bags.push_back(s.head.arg());
    s.head = s.head.fun();
  }
  std::reverse(s.bags.begin(), s.bags.end());
  return s;
}

Term apply_all(Term head, const std::vector<Bag>& bags, std::size_t from = 0) {
  for (std::size_t i = from; i < bags.size(); ++i) head = Term::app(head, bags[i]);
  return head;
}

MachineOutcome converged(Expression result, NodePtr tree) {
  return MachineOutcome{MachineStatus::Converged, std::move(result), std::move(tree), std::nullopt};
}

MachineOutcome undefined(Expression stuck) {
  return MachineOutcome{MachineStatus::Undefined, std::nullopt, nullptr, std::move(stuck)};
}

MachineOutcome exhausted() { return MachineOutcome{}; }

std::string outcome_key(const MachineOutcome& o) {
  switch (o.status) {
    case MachineStatus::Converged: return "0" + canonicalize(*o.result).key;
    case MachineStatus::Undefined: return "1";
    case MachineStatus::BudgetExhausted: return "2";
  }
  return "3";
}

/// Distinct outcomes: converged ones by result, at most one undefined and one
/// exhausted; converged first in canonical order.
std::vector<MachineOutcome> normalize(std::vector<MachineOutcome> runs) {
  std::map<std::string, MachineOutcome> by_key;
  for (auto& r : runs) by_key.emplace(outcome_key(r), std::move(r));
  std::vector<MachineOutcome> out;
  for (auto& [k, r] : by_key) out.push_back(std::move(r));
  return out;
}

NodePtr make_node(MachineRule rule, Expression in, Expression out,
                  std::vector<NodePtr> children = {},
                  std::optional<std::string> choice = std::nullopt) {
  auto n = std::make_shared<MachineNode>();
  n->rule = rule;
  n->in = std::move(in);
  n->out = std::move(out);
  n->children = std::move(children);
  n->choice = std::move(choice);
  return n;
}

class Engine {
 public:
  explicit Engine(const MachineConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  std::size_t used() const { return used_; }

  std::vector<MachineOutcome> term(const Term& m) {
    const std::string key = canonical_key(m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    // Re-entering a judgment under its own derivation: the run cannot stop.
    if (active_.contains(key) || depth_ >= cfg_.max_depth) return {exhausted()};
    active_.insert(key);
    ++depth_;
    auto runs = normalize(term_rule(m));
    --depth_;
    active_.erase(key);
    memo_.emplace(key, runs);
    return runs;
  }

  std::vector<MachineOutcome> bag(const Bag& p) { return normalize(bag_from(canonical_elements(p), 0)); }

 private:
  bool single() const { return cfg_.policy != Policy::EnumerateAll; }

  bool tick() {
    if (used_ >= cfg_.budget) return false;
    ++used_;
    return true;
  }

  std::vector<MachineOutcome> term_rule(const Term& m) {
    if (!tick()) return {exhausted()};
    if (is_outer_normal(m)) return {converged(m, make_node(MachineRule::End, m, m))};
    if (m.is_abs()) {
      std::vector<MachineOutcome> out;
      for (auto& r : term(m.body())) {
        if (r.status != MachineStatus::Converged) {
          out.push_back(std::move(r));
          continue;
        }
        Term res = Term::abs(m.name(), std::get<Term>(*r.result));
        out.push_back(converged(res, make_node(MachineRule::Lambda, m, res, {r.tree})));
      }
      return out;
    }
    Spine s = spine(m);
    if (s.head.is_var()) return head_rule(m, s);
    return redex_rule(m, s);
  }

  std::vector<MachineOutcome> head_rule(const Term& m, const Spine& s) {
    struct Partial {
      std::vector<Bag> bags;
      std::vector<NodePtr> trees;
    };
    std::vector<Partial> partials{{}};
    std::vector<MachineOutcome> failures;
    for (const auto& p : s.bags) {
      auto runs = bag(p);
      std::vector<Partial> next;
      for (const auto& part : partials) {
        for (const auto& r : runs) {
          if (r.status != MachineStatus::Converged) {
            failures.push_back(r);
            continue;
          }
          Partial ext = part;
          ext.bags.push_back(std::get<Bag>(*r.result));
          ext.trees.push_back(r.tree);
          next.push_back(std::move(ext));
        }
      }
      partials = std::move(next);
      if (partials.empty() || (single() && !failures.empty())) return failures;
    }
    std::vector<MachineOutcome> out = std::move(failures);
    for (auto& part : partials) {
      Term res = apply_all(s.head, part.bags);
      out.push_back(converged(res, make_node(MachineRule::Head, m, res, std::move(part.trees))));
    }
    return out;
  }

  std::vector<MachineOutcome> redex_rule(const Term& m, const Spine& s) {
    const Term& lam = s.head;
    const Bag& p = s.bags.front();
    Name x = lam.name();
    Term body = lam.body();
    if (occurs_free(p, x)) {
      std::set<Name> avoid = free_vars(p);
      avoid.merge(all_names(body));
      Name y = fresh_name(x, avoid);
      body = rename_free(body, x, y);
      x = y;
    }

    if (p.empty()) {
      TermSum r = classical_subst(body, x, TermSum{});
      if (r.is_zero()) return {undefined(m)};
      Term next = apply_all(r.begin()->second.value, s.bags, 1);
      return continue_with(m, next, MachineRule::Zero, std::nullopt);
    }

    std::vector<Resource> choices;
    auto elems = canonical_elements(p);
    if (single() || !cfg_.branch_elements) {
      choices.push_back(elems.front());
    } else {
      std::set<std::string> seen;
      for (const auto& e : elems)
        if (seen.insert(canonical_key(e)).second) choices.push_back(e);
    }

    std::vector<MachineOutcome> out;
    for (const auto& e : choices) {
      TermSum r = e.reusable ? partial_subst(body, x, e.content) : linear_subst(body, x, e.content);
      if (r.is_zero()) {
        out.push_back(undefined(m));
        continue;
      }
      const MachineRule rule = e.reusable ? MachineRule::BangBeta : MachineRule::Beta;
      Bag rest = p.without(e.id);
      for (const auto& addend : pick(r)) {
        std::optional<std::string> choice;
        if (r.distinct() >= 2) choice = canonical_key(addend);
        std::vector<Bag> bags = s.bags;
        bags.front() = rest;
        Term next = apply_all(Term::abs(x, addend), bags);
        auto runs = continue_with(m, next, rule, choice);
        out.insert(out.end(), runs.begin(), runs.end());
        if (single()) return out;
      }
      if (single()) return out;
    }
    return out;
  }

  std::vector<Term> pick(const TermSum& r) {
    auto support = r.support();
    switch (cfg_.policy) {
      case Policy::CanonicalFirst:
        return {support.front()};
      case Policy::SeededRandom: {
        std::uniform_int_distribution<std::size_t> d(0, support.size() - 1);
        return {support[d(rng_)]};
      }
      case Policy::EnumerateAll:
        return support;
    }
    return {};
  }

  std::vector<MachineOutcome> continue_with(const Term& m, const Term& next, MachineRule rule,
                                            const std::optional<std::string>& choice) {
    std::vector<MachineOutcome> out;
    for (auto& r : term(next)) {
      if (r.status != MachineStatus::Converged) {
        out.push_back(std::move(r));
        continue;
      }
      out.push_back(converged(*r.result, make_node(rule, m, *r.result, {r.tree}, choice)));
    }
    return out;
  }

  std::vector<MachineOutcome> bag_from(const std::vector<Resource>& elems, std::size_t i) {
    if (!tick()) return {exhausted()};
    const Bag in(std::vector<Resource>(elems.begin() + static_cast<long>(i), elems.end()));
    if (i == elems.size()) return {converged(Bag{}, make_node(MachineRule::OneB, Bag{}, Bag{}))};
    const Resource& e = elems[i];
    std::vector<MachineOutcome> out;
    if (e.reusable) {
      for (auto& r : bag_from(elems, i + 1)) {
        if (r.status != MachineStatus::Converged) {
          out.push_back(std::move(r));
          continue;
        }
        Bag res = std::get<Bag>(*r.result).prepend(e);
        out.push_back(converged(res, make_node(MachineRule::BangB, in, res, {r.tree})));
      }
      return out;
    }
    auto heads = term(e.content);
    bool any = false;
    for (const auto& h : heads) {
      if (h.status != MachineStatus::Converged) {
        out.push_back(h);
      } else {
        any = true;
      }
    }
    if (!any || (single() && !out.empty())) return out;
    auto rests = bag_from(elems, i + 1);
    for (const auto& h : heads) {
      if (h.status != MachineStatus::Converged) continue;
      for (const auto& r : rests) {
        if (r.status != MachineStatus::Converged) {
          out.push_back(r);
          continue;
        }
        Resource head{std::get<Term>(*h.result), false, e.id};
        Bag res = std::get<Bag>(*r.result).prepend(head);
        out.push_back(converged(res, make_node(MachineRule::B, in, res, {h.tree, r.tree})));
      }
    }
    return out;
  }

  const MachineConfig& cfg_;
  std::mt19937_64 rng_;
  std::size_t used_ = 0;
  std::size_t depth_ = 0;
  std::map<std::string, std::vector<MachineOutcome>> memo_;
  std::set<std::string> active_;
};

// ---------------------------------------------------------------------------
// Projection onto nd traces

const Term& term_of(const Expression& e) {
  if (!std::holds_alternative<Term>(e)) throw MalformedTree("expected a term judgment");
  return std::get<Term>(e);
}

const MachineNode& child(const MachineNode& n, std::size_t i) {
  if (n.children.size() <= i || !n.children[i]) {
    throw MalformedTree("rule " + to_string(n.rule) + " is missing a premise");
  }
  return *n.children[i];
}

Path with(Path p, std::initializer_list<PathStep> steps) {
  p.insert(p.end(), steps);
  return p;
}

class Rebuilder {
 public:
  explicit Rebuilder(const Term& m) : trace_{m, Mode::Nd, {}, {}, TraceEnd::Open}, cur_(m) {}

  Trace finish() {
    trace_.end = TraceEnd::Normal;
    return trace_;
  }

  void term(const MachineNode& n, const Path& at) {
    switch (n.rule) {
      case MachineRule::End:
        return;
      case MachineRule::Lambda:
        return term(child(n, 0), with(at, {{PathTag::AbsBody}}));
      case MachineRule::Head: {
        const std::size_t m = spine(checked_subterm(cur_, at)).bags.size();
        if (n.children.size() != m) throw MalformedTree("head rule arity differs from the term");
        for (std::size_t i = 0; i < m; ++i) {
          Path app = at;
          for (std::size_t k = 0; k + 1 + i < m; ++k) app.push_back({PathTag::AppFun});
          std::set<ElemId> used;
          bag(child(n, i), app, used);
        }
        return;
      }
      case MachineRule::Beta:
      case MachineRule::BangBeta:
      case MachineRule::Zero: {
        const MachineNode* z = &n;
        while (z->rule == MachineRule::Beta || z->rule == MachineRule::BangBeta) z = &child(*z, 0);
        if (z->rule != MachineRule::Zero) throw MalformedTree("a substitution chain must end with rule 0");
        const MachineNode& next = child(*z, 0);
        const Term here = checked_subterm(cur_, at);
        Path redex = at;
        const std::size_t m = spine(here).bags.size();
        if (m == 0) throw MalformedTree("substitution rule on a term that is not an application");
        for (std::size_t k = 0; k + 1 < m; ++k) redex.push_back({PathTag::AppFun});
        Term target = replace_at(cur_, at, term_of(next.in));
        Step s;
        try {
          s = make_nd_step(cur_, redex_at(cur_, redex), target);
        } catch (const std::invalid_argument& e) {
          throw MalformedTree(std::string("run does not match an nd step: ") + e.what());
        }
        cur_ = s.after_term();
        trace_.steps.push_back(std::move(s));
        return term(next, at);
      }
      default:
        throw MalformedTree("bag rule " + to_string(n.rule) + " in term position");
    }
  }

  void bag(const MachineNode& n, const Path& app, std::set<ElemId>& used) {
    switch (n.rule) {
      case MachineRule::OneB:
        return;
      case MachineRule::BangB:
        return bag(child(n, 0), app, used);
      case MachineRule::B: {
        const MachineNode& elem = child(n, 0);
        const Bag& b = checked_subterm(cur_, app).arg();
        const std::string key = canonical_key(term_of(elem.in));
        const Resource* found = nullptr;
        for (const auto& r : canonical_elements(b)) {
          if (r.reusable || used.contains(r.id)) continue;
          if (canonical_key(r.content) == key) {
            found = b.find(r.id);
            break;
          }
          if (found == nullptr) found = b.find(r.id);
        }
        if (found == nullptr) throw MalformedTree("no linear element left for rule b");
        ElemId id = found->id;
        used.insert(id);
        term(elem, with(app, {{PathTag::AppArg}, {PathTag::BagElem, id}, {PathTag::ResourceContent}}));
        return bag(child(n, 1), app, used);
      }
      default:
        throw MalformedTree("term rule " + to_string(n.rule) + " in bag position");
    }
  }

 private:
  Trace trace_;
  Term cur_;
};

}  // namespace

std::vector<MachineOutcome> machine_step_run(const Term& m, const MachineConfig& cfg) {
  Engine e(cfg);
  return e.term(m);
}

std::vector<MachineOutcome> b_machine_run(const Bag& p, const MachineConfig& cfg) {
  Engine e(cfg);
  return e.bag(p);
}

SolvabilityVerdict may_solvable(const Term& m, std::size_t budget) {
  MachineConfig cfg;
  cfg.policy = Policy::EnumerateAll;
  cfg.budget = budget;
  Engine e(cfg);
  auto runs = e.term(m);
  SolvabilityVerdict v;
  v.explored = e.used();
  for (const auto& r : runs) {
    if (r.status == MachineStatus::Converged) {
      v.may_solvable = true;
      v.witness = r.tree;
      return v;
    }
  }
  v.exhaustive = std::all_of(runs.begin(), runs.end(), [](const MachineOutcome& r) {
    return r.status == MachineStatus::Undefined;
  });
  return v;
}

Trace reconstruct_trace(const MachineNode& tree) {
  Rebuilder r(term_of(tree.in));
  r.term(tree, {});
  return r.finish();
}

}  // namespace rcalc
