#include "rcalc/explore.hpp"

#include <algorithm>
#include <exception>
#include <functional>

namespace rcalc {

bool admits(StepFilter f, const Redex& r) {
  switch (f) {
    case StepFilter::All: return true;
    case StepFilter::Outer: return r.outer;
    case StepFilter::Inner: return !r.outer;
    case StepFilter::Leftmost: return r.leftmost;
    case StepFilter::NotLeftmost: return r.outer && !r.leftmost;
    case StepFilter::NotLeftmostAny: return !r.leftmost;
  }
  return false;
}

std::vector<Step> filtered_successors(const Term& m, StepFilter f) {
  std::vector<Step> out;
  for (auto r : find_redexes(m)) {
    if (!admits(f, r)) continue;
    r.rule = RedexRule::Giant;
    for (const auto& t : nd_step(m, r))
      out.push_back(Step{m, r, Mode::Nd, canonical_key(t), TermSum(t)});
  }
  return out;
}

namespace {

NdGraph start_graph(const Term& m) {
  NdGraph g;
  g.root = canonical_key(m);
  g.nodes.emplace(g.root, NdNode{m, 0, "", std::nullopt, {}, false});
  g.levels.push_back({g.root});
  return g;
}

/// Merges the successor lists of one level, in frontier order.
void merge_level(NdGraph& g, const std::vector<std::string>& frontier,
                 std::vector<std::vector<Step>>& succs, std::size_t depth) {
  std::vector<std::string> next;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    NdNode& node = g.nodes.at(frontier[i]);
    node.expanded = true;
    for (auto& s : succs[i]) {
      const std::string key = s.chosen;
      if (std::find(node.succ.begin(), node.succ.end(), key) == node.succ.end())
        node.succ.push_back(key);
      if (g.nodes.contains(key)) continue;
      Term t = s.after_term();
      g.nodes.emplace(key, NdNode{t, depth + 1, frontier[i], std::move(s), {}, false});
      next.push_back(key);
    }
  }
  if (!next.empty()) g.levels.push_back(std::move(next));
}

void finish(NdGraph& g, StepFilter f) {
  g.closed = true;
  for (auto& [k, n] : g.nodes) {
    if (n.expanded) continue;
    if (!filtered_successors(n.term, f).empty()) {
      g.closed = false;
      return;
    }
    n.expanded = true;
  }
}

template <class Nodes>
bool cyclic(const Nodes& nodes) {
  // 0 unvisited, 1 on stack, 2 done
  std::map<std::string, int> color;
  for (const auto& [start, n] : nodes) {
    if (color[start] != 0) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [k, i] = stack.back();
      const auto& succ = nodes.at(k).succ;
      if (i == succ.size()) {
        color[k] = 2;
        stack.pop_back();
        continue;
      }
      const std::string next = succ[i++];
      if (!nodes.contains(next)) continue;
      int c = color[next];
      if (c == 1) return true;
      if (c == 0) {
        color[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }
  return false;
}

}  // namespace

NdGraph explore_nd_serial(const Term& m, std::size_t depth, StepFilter f) {
  NdGraph g = start_graph(m);
  for (std::size_t d = 0; d < depth && d < g.levels.size(); ++d) {
    const auto frontier = g.levels[d];
    std::vector<std::vector<Step>> succs(frontier.size());
    for (std::size_t i = 0; i < frontier.size(); ++i)
      succs[i] = filtered_successors(g.nodes.at(frontier[i]).term, f);
    merge_level(g, frontier, succs, d);
  }
  finish(g, f);
  return g;
}

NdGraph explore_nd(const Term& m, std::size_t depth, StepFilter f) {
  NdGraph g = start_graph(m);
  for (std::size_t d = 0; d < depth && d < g.levels.size(); ++d) {
    const auto frontier = g.levels[d];
    std::vector<const Term*> terms;
    for (const auto& k : frontier) terms.push_back(&g.nodes.at(k).term);
    std::vector<std::vector<Step>> succs(frontier.size());
    std::exception_ptr error;
    const auto n = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        succs[i] = filtered_successors(*terms[i], f);
      } catch (...) {
#pragma omp critical(rcalc_explore_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    merge_level(g, frontier, succs, d);
  }
  finish(g, f);
  return g;
}

Trace chain_to(const NdGraph& g, const std::string& key) {
  std::vector<const Step*> steps;
  for (std::string k = key; k != g.root;) {
    const NdNode& n = g.nodes.at(k);
    steps.push_back(&*n.step);
    k = n.parent;
  }
  Trace t{g.at(g.root).term, Mode::Nd, {}, {}, TraceEnd::Open};
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) t.steps.push_back(**it);
  return t;
}

bool has_cycle(const NdGraph& g) { return cyclic(g.nodes); }

// ---------------------------------------------------------------------------

std::string sum_state_key(const TermSum& s) {
  std::string out = "S";
  for (const auto& [k, e] : s) out += k + "*" + std::to_string(e.mult) + "|";
  return out;
}

std::vector<std::pair<Step, TermSum>> sum_successors(const TermSum& s, Mode mode, StepFilter f) {
  std::vector<std::pair<Step, TermSum>> out;
  for (const auto& [k, e] : s) {
    for (const auto& r : find_redexes(e.value)) {
      if (!admits(f, r)) continue;
      TermSum local = mode == Mode::Baby ? baby_step(e.value, r) : giant_step(e.value, r);
      TermSum next = s;
      next.remove_one(k);
      next.add(local);
      out.emplace_back(Step{e.value, r, mode, "", local}, std::move(next));
    }
  }
  return out;
}

SumGraph explore_sums(const TermSum& s, Mode mode, std::size_t depth, StepFilter f) {
  SumGraph g;
  g.root = sum_state_key(s);
  g.nodes.emplace(g.root, SumNode{s, 0, "", std::nullopt, {}, false});
  g.levels.push_back({g.root});
  for (std::size_t d = 0; d < depth && d < g.levels.size(); ++d) {
    std::vector<std::string> next;
    for (const auto& key : g.levels[d]) {
      auto succs = sum_successors(g.nodes.at(key).sum, mode, f);
      SumNode& node = g.nodes.at(key);
      node.expanded = true;
      for (auto& [step, sum] : succs) {
        std::string k = sum_state_key(sum);
        node.succ.push_back(k);
        if (g.nodes.contains(k)) continue;
        g.nodes.emplace(k, SumNode{std::move(sum), d + 1, key, std::move(step), {}, false});
        next.push_back(k);
      }
    }
    if (!next.empty()) g.levels.push_back(std::move(next));
  }
  g.closed = true;
  for (auto& [k, n] : g.nodes) {
    if (n.expanded) continue;
    if (!sum_successors(n.sum, mode, f).empty()) g.closed = false;
  }
  return g;
}

Trace sum_chain_to(const SumGraph& g, const std::string& key, Mode mode) {
  std::vector<const SumNode*> nodes;
  for (std::string k = key; k != g.root;) {
    const SumNode& n = g.nodes.at(k);
    nodes.push_back(&n);
    k = n.parent;
  }
  const TermSum& root = g.nodes.at(g.root).sum;
  Trace t{root.distinct() == 1 ? root.begin()->second.value : Term{}, mode, {}, {}, TraceEnd::Open};
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    t.steps.push_back(*(*it)->step);
    t.states.push_back((*it)->sum);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Strategies

namespace {

bool sum_has_redex(const TermSum& s) {
  for (const auto& [k, e] : s)
    if (has_redex(e.value)) return true;
  return false;
}

std::vector<Trace> run_exhaustive_nd(const Term& m, std::size_t budget) {
  NdGraph g = explore_nd(m, budget);
  std::vector<Trace> out;
  for (const auto& level : g.levels) {
    for (const auto& key : level) {
      const NdNode& n = g.at(key);
      if (!has_redex(n.term)) {
        Trace t = chain_to(g, key);
        t.end = TraceEnd::Normal;
        out.push_back(std::move(t));
      } else if (n.expanded && n.succ.empty()) {
        Trace t = chain_to(g, key);
        t.end = TraceEnd::Crashed;
        out.push_back(std::move(t));
      }
    }
  }
  if (!g.closed || has_cycle(g)) {
    // Report the deepest reached term: the search did not close.
    Trace t = chain_to(g, g.levels.back().front());
    t.end = TraceEnd::BudgetExhausted;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Trace> run_exhaustive_sums(const Term& m, Mode mode, std::size_t budget) {
  SumGraph g = explore_sums(TermSum(m), mode, budget);
  std::vector<Trace> out;
  for (const auto& level : g.levels) {
    for (const auto& key : level) {
      const SumNode& n = g.nodes.at(key);
      if (n.sum.is_zero() || !sum_has_redex(n.sum)) {
        Trace t = sum_chain_to(g, key, mode);
        t.initial = m;
        t.end = n.sum.is_zero() ? TraceEnd::Crashed : TraceEnd::Normal;
        out.push_back(std::move(t));
      }
    }
  }
  if (!g.closed || cyclic(g.nodes)) {
    Trace t = sum_chain_to(g, g.levels.back().front(), mode);
    t.initial = m;
    t.end = TraceEnd::BudgetExhausted;
    out.push_back(std::move(t));
  }
  return out;
}

Trace run_nd(const Term& m, const Strategy& st, std::size_t budget) {
  Trace t{m, Mode::Nd, {}, {}, TraceEnd::Open};
  Term cur = m;
  for (std::size_t i = 0;; ++i) {
    std::optional<Redex> r;
    if (st.pick == Pick::GivenPaths) {
      if (i == st.paths.size()) break;
      r = redex_at(cur, path_from_canonical(cur, st.paths[i]));
    } else {
      auto lm = leftmost_set(cur);
      if (lm.empty()) {
        t.end = TraceEnd::Normal;
        break;
      }
      r = redex_at(cur, lm.front());
    }
    if (i == budget) {
      t.end = TraceEnd::BudgetExhausted;
      break;
    }
    r->rule = RedexRule::Giant;
    auto next = nd_step(cur, *r);
    if (next.empty()) {
      t.end = TraceEnd::Crashed;
      break;
    }
    t.steps.push_back(Step{cur, *r, Mode::Nd, canonical_key(next.front()), TermSum(next.front())});
    cur = next.front();
  }
  if (t.end == TraceEnd::Open && st.pick == Pick::GivenPaths && is_outer_normal(cur))
    t.end = TraceEnd::Normal;
  return t;
}

Trace run_sums(const Term& m, const Strategy& st, std::size_t budget) {
  Trace t{m, st.mode, {}, {}, TraceEnd::Open};
  TermSum cur(m);
  for (std::size_t i = 0;; ++i) {
    if (cur.is_zero()) {
      t.end = TraceEnd::Crashed;
      break;
    }
    std::optional<std::pair<Term, Redex>> pick;
    if (st.pick == Pick::GivenPaths) {
      if (i == st.paths.size()) break;
      for (const auto& [k, e] : cur) {
        try {
          Path p = path_from_canonical(e.value, st.paths[i]);
          auto sub = subterm_at(e.value, p);
          if (sub && sub->is_redex()) {
            pick.emplace(e.value, redex_at(e.value, p));
            break;
          }
        } catch (const InvalidPath&) {
        }
      }
      if (!pick) throw InvalidPath("given path is not a redex of any addend");
    } else {
      for (const auto& [k, e] : cur) {
        auto lm = leftmost_set(e.value);
        if (!lm.empty()) {
          pick.emplace(e.value, redex_at(e.value, lm.front()));
          break;
        }
      }
      if (!pick) {
        t.end = TraceEnd::Normal;
        break;
      }
    }
    if (i == budget) {
      t.end = TraceEnd::BudgetExhausted;
      break;
    }
    const auto& [addend, r] = *pick;
    TermSum local = st.mode == Mode::Baby ? baby_step(addend, r) : giant_step(addend, r);
    TermSum next = cur;
    next.remove_one(sum_key(addend));
    next.add(local);
    t.steps.push_back(Step{addend, r, st.mode, "", local});
    t.states.push_back(next);
    cur = std::move(next);
  }
  if (t.end == TraceEnd::Open) {
    if (cur.is_zero()) {
      t.end = TraceEnd::Crashed;
    } else {
      bool normal = true;
      for (const auto& [k, e] : cur) normal = normal && is_outer_normal(e.value);
      if (normal) t.end = TraceEnd::Normal;
    }
  }
  return t;
}

}  // namespace

std::vector<Trace> strategy_run(const Term& m, const Strategy& strategy, std::size_t budget) {
  if (strategy.pick == Pick::Exhaustive) {
    return strategy.mode == Mode::Nd ? run_exhaustive_nd(m, budget)
                                     : run_exhaustive_sums(m, strategy.mode, budget);
  }
  if (strategy.mode == Mode::Nd) return {run_nd(m, strategy, budget)};
  return {run_sums(m, strategy, budget)};
}

}  // namespace rcalc
