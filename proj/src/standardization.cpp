#include "rcalc/standardization.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "rcalc/explore.hpp"
#include "rcalc/substitution.hpp"

namespace rcalc {

namespace {

Term shape_term(const Term& t, Path& at, std::vector<Hole>& holes) {
  switch (t.kind()) {
    case Kind::Var:
      return t;
    case Kind::Abs: {
      at.push_back({PathTag::AbsBody});
      Term body = shape_term(t.body(), at, holes);
      at.pop_back();
      return Term::abs(t.name(), body);
    }
    case Kind::App: {
      at.push_back({PathTag::AppFun});
      Term fun = shape_term(t.fun(), at, holes);
      at.pop_back();
      Bag bag = t.arg();
      for (const auto& r : t.arg().elements()) {
        at.push_back({PathTag::AppArg});
        at.push_back({PathTag::BagElem, r.id});
        at.push_back({PathTag::ResourceContent});
        if (r.reusable) {
          holes.push_back(Hole{0, at, r.content});
          bag = bag.with_content(r.id, Term::var(kHoleName));
        } else {
          bag = bag.with_content(r.id, shape_term(r.content, at, holes));
        }
        at.resize(at.size() - 3);
      }
      return Term::app(fun, bag, t.label());
    }
  }
  return t;
}

Trace empty_trace(const Term& m) { return Trace{m, Mode::Nd, {}, {}, TraceEnd::Open}; }

bool has_prefix(const Path& p, const Path& prefix) {
  return p.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

/// The given steps, all below `prefix`, as a trace on the subterm there.
Trace project(const Term& initial, const std::vector<const Step*>& steps, const Path& prefix) {
  Trace out = empty_trace(checked_subterm(initial, prefix));
  for (const Step* s : steps) {
    Term before = checked_subterm(s->before, prefix);
    Term after = checked_subterm(s->after_term(), prefix);
    Path rest(s->redex.path.begin() + static_cast<long>(prefix.size()), s->redex.path.end());
    Redex r = redex_at(before, rest);
    r.rule = RedexRule::Giant;
    out.steps.push_back(Step{before, r, Mode::Nd, canonical_key(after), TermSum(after)});
  }
  return rebase(out);
}

/// A replay branch of is_standard: a labeled term.
using Branches = std::map<std::string, Term>;

std::optional<Violation> check_from(const Trace& t, std::size_t i) {
  const Step& si = t.steps[i];
  const Term& mi = si.before;
  std::vector<Path> priors;
  for (const auto& r : find_redexes(mi)) {
    if (precedes(r.path, si.redex.path, mi) == Order::Before) priors.push_back(r.path);
  }
  if (priors.empty()) return std::nullopt;
  LabeledTerm lt = label(mi, priors);

  Branches states{{labeled_key(lt.term), lt.term}};
  for (std::size_t j = i; j < t.steps.size(); ++j) {
    const Step& sj = t.steps[j];
    Branches next;
    std::optional<Label> hit;
    for (const auto& [k, s] : states) {
      for (const auto& p : corresponding_paths(sj.before, sj.redex.path, s)) {
        Label l = checked_subterm(s, p).label();
        if (j > i && l != 0) {
          if (!hit) hit = l;
          continue;
        }
        for (const auto& n : fire_labeled(s, sj, p)) next.emplace(labeled_key(n), n);
      }
    }
    if (next.empty()) {
      if (!hit) throw std::invalid_argument("trace step " + std::to_string(j + 1) + " cannot be replayed");
      return Violation{j + 1, i + 1, mi, lt.origin.at(*hit), si.redex.path};
    }
    states = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

OuterShape outer_shape(const Term& m) {
  OuterShape s;
  Path at;
  s.skeleton = shape_term(m, at, s.holes);
  std::vector<std::pair<std::vector<int>, Hole>> keyed;
  for (auto& h : s.holes) keyed.emplace_back(canonical_path(m, h.path), std::move(h));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  s.holes.clear();
  for (auto& [k, h] : keyed) {
    h.id = s.holes.size();
    s.holes.push_back(std::move(h));
  }
  return s;
}

Term plug_shape(const OuterShape& s, const std::vector<Term>& contents) {
  if (contents.size() != s.holes.size()) throw std::invalid_argument("wrong number of hole contents");
  Term out = s.skeleton;
  for (std::size_t i = 0; i < contents.size(); ++i) out = replace_at(out, s.holes[i].path, contents[i]);
  return out;
}

StdReport is_standard(const Trace& t) {
  Trace r = rebase(t);
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    if (auto v = check_from(r, i)) return StdReport{false, std::move(v)};
  }
  return StdReport{true, std::nullopt};
}

bool is_outer_trace(const Trace& t) {
  return std::all_of(t.steps.begin(), t.steps.end(), [](const Step& s) {
    return is_linear_position(s.before, s.redex.path);
  });
}

bool is_inner_trace(const Trace& t) {
  return std::none_of(t.steps.begin(), t.steps.end(), [](const Step& s) {
    return is_linear_position(s.before, s.redex.path);
  });
}

Trace take(const Trace& t, std::size_t k) {
  Trace out = empty_trace(t.initial);
  out.steps.assign(t.steps.begin(), t.steps.begin() + static_cast<long>(k));
  return out;
}

Trace drop(const Trace& t, std::size_t k) {
  Term start = k == 0 ? t.initial : t.steps[k - 1].after_term();
  Trace out = empty_trace(start);
  out.steps.assign(t.steps.begin() + static_cast<long>(k), t.steps.end());
  return out;
}

Factorization factor_outer_inner(const Trace& t, std::size_t slack) {
  Trace r = rebase(t);
  std::size_t k = 0;
  while (k < r.steps.size() && is_linear_position(r.steps[k].before, r.steps[k].redex.path)) ++k;
  if (is_inner_trace(drop(r, k))) return {take(r, k), drop(r, k)};

  const std::size_t bound = r.length() + slack;
  const std::string target = canonical_key(r.final_term());
  NdGraph outer = explore_nd_serial(r.initial, bound, StepFilter::Outer);
  for (std::size_t d = 0; d < outer.levels.size(); ++d) {
    for (const auto& key : outer.levels[d]) {
      NdGraph inner = explore_nd_serial(outer.at(key).term, bound - d, StepFilter::Inner);
      if (!inner.contains(target)) continue;
      Trace o = chain_to(outer, key);
      Trace i = chain_to(inner, target);
      return {rebase(o, r.initial), rebase(i, o.final_term())};
    }
  }
  throw SearchExhausted("no outer-then-inner chain of length at most " + std::to_string(bound));
}

Trace reorder_outer(const Trace& t) {
  Trace cur = rebase(t);
  if (!is_outer_trace(cur)) throw std::invalid_argument("reorder_outer needs an outer trace");
  for (;;) {
    std::size_t k = 0;
    while (k + 1 < cur.steps.size() &&
           !(!cur.steps[k].redex.leftmost && cur.steps[k + 1].redex.leftmost))
      ++k;
    if (k + 1 >= cur.steps.size()) return cur;

    const Term& m = cur.steps[k].before;
    const std::string target = canonical_key(cur.steps[k + 1].after_term());
    std::optional<std::pair<Step, Step>> swap;
    for (const auto& p : leftmost_set(m)) {
      Redex r = redex_at(m, p);
      r.rule = RedexRule::Giant;
      for (const auto& mid : nd_step(m, r)) {
        for (const auto& s : filtered_successors(mid, StepFilter::Outer)) {
          if (s.chosen != target) continue;
          swap.emplace(Step{m, r, Mode::Nd, canonical_key(mid), TermSum(mid)}, s);
          break;
        }
        if (swap) break;
      }
      if (swap) break;
    }
    if (!swap) {
      throw SearchExhausted("inversion failed: no leftmost step followed by an outer step reaches " +
                            target + " at step " + std::to_string(k + 1));
    }
    Trace next = take(cur, k);
    next.steps.push_back(swap->first);
    next.steps.push_back(swap->second);
    for (std::size_t j = k + 2; j < cur.steps.size(); ++j) next.steps.push_back(cur.steps[j]);
    cur = rebase(next);
  }
}

Trace std_outer(const Trace& t) {
  if (t.length() == 0) return t;
  Trace r = reorder_outer(t);
  std::size_t k = 0;
  while (k < r.steps.size() && r.steps[k].redex.leftmost) ++k;
  if (k > 0) return concat(take(r, k), std_outer(drop(r, k)));

  // No step is leftmost: split by the structure of the initial term.
  const Term& m = r.initial;
  if (m.is_abs()) {
    Path prefix{{PathTag::AbsBody}};
    std::vector<const Step*> all;
    for (const auto& s : r.steps) all.push_back(&s);
    return lift(std_outer(project(m, all, prefix)), m, prefix);
  }
  if (!m.is_app()) throw std::logic_error("steps from a variable");

  std::vector<const Step*> fun_steps;
  std::map<ElemId, std::vector<const Step*>> elem_steps;
  for (const auto& s : r.steps) {
    const Path& p = s.redex.path;
    if (p.empty()) throw std::logic_error("a non-leftmost step at the root");
    if (p[0].tag == PathTag::AppFun) {
      fun_steps.push_back(&s);
    } else {
      elem_steps[p[1].id].push_back(&s);
    }
  }
  Path fun_prefix{{PathTag::AppFun}};
  Trace out = lift(std_outer(project(m, fun_steps, fun_prefix)), m, fun_prefix);
  for (const auto& e : canonical_elements(m.arg())) {
    auto it = elem_steps.find(e.id);
    if (it == elem_steps.end()) continue;
    Path prefix{{PathTag::AppArg}, {PathTag::BagElem, e.id}, {PathTag::ResourceContent}};
    Trace sub = std_outer(project(m, it->second, prefix));
    Term cur = out.final_term();
    out = concat(out, lift(sub, cur, prefix));
  }
  return out;
}

Trace std_inner(const Trace& t, std::size_t slack) {
  if (t.length() == 0) return t;
  Trace r = rebase(t);
  const Term& m = r.initial;
  OuterShape shape = outer_shape(m);
  std::vector<std::vector<const Step*>> groups(shape.holes.size());
  for (const auto& s : r.steps) {
    bool placed = false;
    for (std::size_t h = 0; h < shape.holes.size() && !placed; ++h) {
      if (has_prefix(s.redex.path, shape.holes[h].path)) {
        groups[h].push_back(&s);
        placed = true;
      }
    }
    if (!placed) throw std::invalid_argument("std_inner: step outside every hole");
  }
  Trace out = empty_trace(m);
  for (std::size_t h = 0; h < shape.holes.size(); ++h) {
    if (groups[h].empty()) continue;
    Trace sub = standardize_trace(project(m, groups[h], shape.holes[h].path), slack);
    Term cur = out.final_term();
    out = concat(out, lift(sub, cur, shape.holes[h].path));
  }
  return out;
}

Trace standardize_trace(const Trace& t, std::size_t slack) {
  if (t.length() == 0) return rebase(t);
  Factorization f = factor_outer_inner(t, slack);
  Trace o = std_outer(f.outer);
  return concat(o, std_inner(f.inner, slack));
}

Trace find_chain(const Term& m, const Term& n, std::size_t bound) {
  NdGraph g = explore_nd(m, bound);
  std::string key = canonical_key(n);
  if (!g.contains(key)) {
    throw NoChainFound("no nd chain of length at most " + std::to_string(bound) + " reaches the target");
  }
  return chain_to(g, key);
}

Trace standardize(const Term& m, const Term& n, std::size_t bound, std::size_t slack) {
  return standardize_trace(find_chain(m, n, bound), slack);
}

}  // namespace rcalc
