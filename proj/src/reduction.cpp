#include "rcalc/reduction.hpp"

#include <algorithm>
#include <span>

#include "rcalc/parser.hpp"
#include "rcalc/substitution.hpp"

namespace rcalc {

namespace {

using Steps = std::span<const PathStep>;

[[noreturn]] void bad_path(const std::string& why) { throw InvalidPath("invalid path: " + why); }

// Resolves a bag position [BagElem id, ResourceContent, ...]: returns the
// resource, or throws.
const Resource& bag_resource(const Bag& b, Steps p) {
  if (p.size() < 2 || p[0].tag != PathTag::BagElem || p[1].tag != PathTag::ResourceContent)
    bad_path("an argument step must be followed by an element and a content step");
  const Resource* r = b.find(p[0].id);
  if (r == nullptr) bad_path("no bag element with id " + std::to_string(p[0].id));
  return *r;
}

std::optional<Term> subterm(const Term& t, Steps p) {
  if (p.empty()) return t;
  switch (p[0].tag) {
    case PathTag::AbsBody:
      if (!t.is_abs()) return std::nullopt;
      return subterm(t.body(), p.subspan(1));
    case PathTag::AppFun:
      if (!t.is_app()) return std::nullopt;
      return subterm(t.fun(), p.subspan(1));
    case PathTag::AppArg: {
      if (!t.is_app() || p.size() < 3 || p[1].tag != PathTag::BagElem ||
          p[2].tag != PathTag::ResourceContent)
        return std::nullopt;
      const Resource* r = t.arg().find(p[1].id);
      if (r == nullptr) return std::nullopt;
      return subterm(r->content, p.subspan(3));
    }
    default:
      return std::nullopt;
  }
}

Term replace(const Term& t, Steps p, const Term& rep) {
  if (p.empty()) return rep;
  switch (p[0].tag) {
    case PathTag::AbsBody:
      if (!t.is_abs()) bad_path("body step on a non-abstraction");
      return Term::abs(t.name(), replace(t.body(), p.subspan(1), rep));
    case PathTag::AppFun:
      if (!t.is_app()) bad_path("function step on a non-application");
      return Term::app(replace(t.fun(), p.subspan(1), rep), t.arg(), t.label());
    case PathTag::AppArg: {
      if (!t.is_app()) bad_path("argument step on a non-application");
      const Resource& r = bag_resource(t.arg(), p.subspan(1));
      Term inner = replace(r.content, p.subspan(3), rep);
      return Term::app(t.fun(), t.arg().with_content(r.id, inner), t.label());
    }
    default:
      bad_path("path does not start at a term");
  }
}

TermSum plug_rec(const Term& t, Steps p, const TermSum& s) {
  if (p.empty()) return s;
  switch (p[0].tag) {
    case PathTag::AbsBody:
      if (!t.is_abs()) bad_path("body step on a non-abstraction");
      return sum_abs(t.name(), plug_rec(t.body(), p.subspan(1), s));
    case PathTag::AppFun:
      if (!t.is_app()) bad_path("function step on a non-application");
      return sum_app(plug_rec(t.fun(), p.subspan(1), s), BagSum(t.arg()), t.label());
    case PathTag::AppArg: {
      if (!t.is_app()) bad_path("argument step on a non-application");
      const Resource& r = bag_resource(t.arg(), p.subspan(1));
      TermSum content = plug_rec(r.content, p.subspan(3), s);
      BagSum rest(t.arg().without(r.id));
      BagSum bag = r.reusable ? sum_bag_reusable(content, rest, r.id)
                              : sum_bag_linear(content, rest, r.id);
      return sum_app(TermSum(t.fun()), bag, t.label());
    }
    default:
      bad_path("path does not start at a term");
  }
}

bool linear_in_term(const Term& t, Steps p);

bool linear_in_bag(const Bag& b, Steps p) {
  const Resource& r = bag_resource(b, p);
  if (r.reusable) return false;
  return linear_in_term(r.content, p.subspan(2));
}

bool linear_in_term(const Term& t, Steps p) {
  if (p.empty()) return true;
  switch (p[0].tag) {
    case PathTag::AbsBody:
      return linear_in_term(t.body(), p.subspan(1));
    case PathTag::AppFun:
      return linear_in_term(t.fun(), p.subspan(1));
    case PathTag::AppArg:
      return linear_in_bag(t.arg(), p.subspan(1));
    default:
      bad_path("path does not start at a term");
  }
}

int tag_code(PathTag t) {
  switch (t) {
    case PathTag::AbsBody: return -1;
    case PathTag::AppFun: return -3;
    case PathTag::AppArg: return -2;
    case PathTag::ResourceContent: return -4;
    case PathTag::BagElem: return 0;
  }
  return 0;
}

void canonical_rec(const Term& t, Steps p, std::vector<int>& out) {
  if (p.empty()) return;
  out.push_back(tag_code(p[0].tag));
  switch (p[0].tag) {
    case PathTag::AbsBody:
      return canonical_rec(t.body(), p.subspan(1), out);
    case PathTag::AppFun:
      return canonical_rec(t.fun(), p.subspan(1), out);
    case PathTag::AppArg: {
      const Resource& r = bag_resource(t.arg(), p.subspan(1));
      auto elems = canonical_elements(t.arg());
      int index = 0;
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (elems[i].id == r.id) index = static_cast<int>(i);
      out.push_back(index);
      out.push_back(tag_code(PathTag::ResourceContent));
      return canonical_rec(r.content, p.subspan(3), out);
    }
    default:
      bad_path("path does not start at a term");
  }
}

void correspond_rec(const Term& src, Steps p, const Term& dst, std::vector<Name>& binders,
                    Path& prefix, std::vector<Path>& out) {
  if (p.empty()) {
    out.push_back(prefix);
    return;
  }
  switch (p[0].tag) {
    case PathTag::AbsBody: {
      if (!src.is_abs() || !dst.is_abs()) bad_path("shapes differ");
      prefix.push_back(p[0]);
      if (src.name() == dst.name()) {
        binders.push_back(dst.name());
        correspond_rec(src.body(), p.subspan(1), dst.body(), binders, prefix, out);
      } else {
        std::set<Name> avoid = all_names(src.body());
        avoid.merge(all_names(dst.body()));
        avoid.insert(binders.begin(), binders.end());
        avoid.insert(src.name());
        avoid.insert(dst.name());
        Name fresh = fresh_name(dst.name(), avoid);
        binders.push_back(fresh);
        correspond_rec(rename_free(src.body(), src.name(), fresh), p.subspan(1),
                       rename_free(dst.body(), dst.name(), fresh), binders, prefix, out);
      }
      binders.pop_back();
      prefix.pop_back();
      return;
    }
    case PathTag::AppFun:
      if (!src.is_app() || !dst.is_app()) bad_path("shapes differ");
      prefix.push_back(p[0]);
      correspond_rec(src.fun(), p.subspan(1), dst.fun(), binders, prefix, out);
      prefix.pop_back();
      return;
    case PathTag::AppArg: {
      if (!src.is_app() || !dst.is_app()) bad_path("shapes differ");
      const Resource& r = bag_resource(src.arg(), p.subspan(1));
      std::string key = contextual_key(r, binders);
      for (const auto& cand : dst.arg().elements()) {
        if (contextual_key(cand, binders) != key) continue;
        prefix.push_back({PathTag::AppArg});
        prefix.push_back({PathTag::BagElem, cand.id});
        prefix.push_back({PathTag::ResourceContent});
        correspond_rec(r.content, p.subspan(3), cand.content, binders, prefix, out);
        prefix.resize(prefix.size() - 3);
      }
      return;
    }
    default:
      bad_path("path does not start at a term");
  }
}

// ---------------------------------------------------------------------------
// Redex discovery

RedexRule baby_rule(const Term& redex) {
  const Bag& b = redex.arg();
  if (b.empty()) return RedexRule::Empty;
  return canonical_elements(b).front().reusable ? RedexRule::ReusableHead
                                                : RedexRule::LinearHead;
}

void collect_redexes(const Term& t, bool under_bang, Path& at, std::vector<Redex>& out) {
  switch (t.kind()) {
    case Kind::Var:
      return;
    case Kind::Abs:
      at.push_back({PathTag::AbsBody});
      collect_redexes(t.body(), under_bang, at, out);
      at.pop_back();
      return;
    case Kind::App:
      if (t.is_redex()) out.push_back(Redex{at, baby_rule(t), !under_bang, false});
      at.push_back({PathTag::AppFun});
      collect_redexes(t.fun(), under_bang, at, out);
      at.pop_back();
      for (const auto& r : t.arg().elements()) {
        at.push_back({PathTag::AppArg});
        at.push_back({PathTag::BagElem, r.id});
        at.push_back({PathTag::ResourceContent});
        collect_redexes(r.content, under_bang || r.reusable, at, out);
        at.resize(at.size() - 3);
      }
      return;
  }
}

void leftmost_term(const Term& t, Path& at, std::vector<Path>& out);

void leftmost_bag(const Bag& b, Path& at, std::vector<Path>& out) {
  for (const auto& r : b.elements()) {
    if (r.reusable) continue;
    at.push_back({PathTag::AppArg});
    at.push_back({PathTag::BagElem, r.id});
    at.push_back({PathTag::ResourceContent});
    leftmost_term(r.content, at, out);
    at.resize(at.size() - 3);
  }
}

void leftmost_term(const Term& t, Path& at, std::vector<Path>& out) {
  switch (t.kind()) {
    case Kind::Var:
      return;
    case Kind::Abs:
      at.push_back({PathTag::AbsBody});
      leftmost_term(t.body(), at, out);
      at.pop_back();
      return;
    case Kind::App: {
      if (t.fun().is_abs()) {
        out.push_back(at);
        return;
      }
      std::size_t before = out.size();
      at.push_back({PathTag::AppFun});
      leftmost_term(t.fun(), at, out);
      at.pop_back();
      if (out.size() != before) return;
      leftmost_bag(t.arg(), at, out);
      return;
    }
  }
}

void sort_paths(const Term& m, std::vector<Path>& paths) {
  std::vector<std::pair<std::vector<int>, Path>> keyed;
  for (auto& p : paths) keyed.emplace_back(canonical_path(m, p), std::move(p));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  paths.clear();
  for (auto& [k, p] : keyed) paths.push_back(std::move(p));
}

// ---------------------------------------------------------------------------
// Linear left-to-right order

bool proper_prefix(Steps a, Steps b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool prec_term(const Term& a, Steps p1, Steps p2);

bool prec_bag(const Bag& b, Steps p1, Steps p2) {
  if (proper_prefix(p1, p2)) return true;
  bool l1 = linear_in_bag(b, p1);
  bool l2 = linear_in_bag(b, p2);
  if (l1 && !l2) return true;
  if (p1[0] != p2[0]) return false;  // different elements of one bag
  const Resource& r = bag_resource(b, p1);
  return prec_term(r.content, p1.subspan(2), p2.subspan(2));
}

bool prec_term(const Term& a, Steps p1, Steps p2) {
  // S2 is a subterm of S1.
  if (proper_prefix(p1, p2)) return true;
  bool l1 = linear_in_term(a, p1);
  bool l2 = linear_in_term(a, p2);
  // Linear before non-linear.
  if (l1 && !l2) return true;
  if (p1.empty() || p2.empty()) return false;
  // Function before argument, for linear positions of MP.
  if (a.is_app() && l1 && l2 && p1[0].tag == PathTag::AppFun && p2[0].tag == PathTag::AppArg)
    return true;
  // Same proper subexpression.
  if (p1[0] != p2[0]) return false;
  switch (p1[0].tag) {
    case PathTag::AbsBody:
      return prec_term(a.body(), p1.subspan(1), p2.subspan(1));
    case PathTag::AppFun:
      return prec_term(a.fun(), p1.subspan(1), p2.subspan(1));
    case PathTag::AppArg:
      return prec_bag(a.arg(), p1.subspan(1), p2.subspan(1));
    default:
      return false;
  }
}

Term checked_redex(const Term& m, const Redex& r) {
  auto sub = subterm_at(m, r.path);
  if (!sub || !sub->is_redex()) throw InvalidRedex("no redex at the given path");
  return *sub;
}

/// Renames the binder of the redex (λx.M)P when x is free in P.
std::pair<Name, Term> fresh_redex_parts(const Term& redex) {
  const Term& lam = redex.fun();
  if (!occurs_free(redex.arg(), lam.name())) return {lam.name(), lam.body()};
  std::set<Name> avoid = free_vars(redex.arg());
  avoid.merge(all_names(lam.body()));
  Name y = fresh_name(lam.name(), avoid);
  return {y, rename_free(lam.body(), lam.name(), y)};
}

struct BabyResult {
  TermSum sum;
  bool finished;  // the redex was consumed by the empty-bag rule
};

BabyResult fire_baby(const Term& redex) {
  auto [x, body] = fresh_redex_parts(redex);
  const Bag& bag = redex.arg();
  if (bag.empty()) return {classical_subst(body, x, TermSum{}), true};
  Resource head = canonical_elements(bag).front();
  TermSum inner = head.reusable ? partial_subst(body, x, head.content)
                                : linear_subst(body, x, head.content);
  return {sum_app(sum_abs(x, inner), BagSum(bag.without(head.id)), redex.label()), false};
}

Term strip_label_at(const Term& t, const Path& p) {
  auto sub = subterm_at(t, p);
  if (!sub || !sub->is_app() || sub->label() == 0) return t;
  return replace_at(t, p, sub->with_label(0));
}

void collect_labels(const Term& t, Path& at, std::map<Label, std::vector<Path>>& out) {
  switch (t.kind()) {
    case Kind::Var:
      return;
    case Kind::Abs:
      at.push_back({PathTag::AbsBody});
      collect_labels(t.body(), at, out);
      at.pop_back();
      return;
    case Kind::App:
      if (t.label() != 0) out[t.label()].push_back(at);
      at.push_back({PathTag::AppFun});
      collect_labels(t.fun(), at, out);
      at.pop_back();
      for (const auto& r : t.arg().elements()) {
        at.push_back({PathTag::AppArg});
        at.push_back({PathTag::BagElem, r.id});
        at.push_back({PathTag::ResourceContent});
        collect_labels(r.content, at, out);
        at.resize(at.size() - 3);
      }
      return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Paths

std::optional<Term> subterm_at(const Term& root, const Path& p) { return subterm(root, p); }

Term checked_subterm(const Term& root, const Path& p) {
  auto t = subterm(root, p);
  if (!t) bad_path("path does not reach a term position");
  return *t;
}

Term replace_at(const Term& root, const Path& p, const Term& replacement) {
  return replace(root, p, replacement);
}

TermSum plug(const Term& root, const Path& p, const TermSum& s) { return plug_rec(root, p, s); }

bool is_linear_position(const Term& root, const Path& p) {
  checked_subterm(root, p);
  return linear_in_term(root, p);
}

std::vector<int> canonical_path(const Term& root, const Path& p) {
  std::vector<int> out;
  canonical_rec(root, p, out);
  return out;
}

Path path_from_canonical(const Term& root, const std::vector<int>& code) {
  Path out;
  Term t = root;
  std::size_t i = 0;
  while (i < code.size()) {
    switch (code[i]) {
      case -1:
        if (!t.is_abs()) bad_path("body step on a non-abstraction");
        out.push_back({PathTag::AbsBody});
        t = t.body();
        ++i;
        break;
      case -3:
        if (!t.is_app()) bad_path("function step on a non-application");
        out.push_back({PathTag::AppFun});
        t = t.fun();
        ++i;
        break;
      case -2: {
        if (!t.is_app() || i + 2 >= code.size() || code[i + 1] < 0 || code[i + 2] != -4)
          bad_path("malformed argument step");
        auto elems = canonical_elements(t.arg());
        auto index = static_cast<std::size_t>(code[i + 1]);
        if (index >= elems.size()) bad_path("bag element index out of range");
        out.push_back({PathTag::AppArg});
        out.push_back({PathTag::BagElem, elems[index].id});
        out.push_back({PathTag::ResourceContent});
        t = elems[index].content;
        i += 3;
        break;
      }
      default:
        bad_path("unexpected step code " + std::to_string(code[i]));
    }
  }
  return out;
}

std::vector<Path> corresponding_paths(const Term& source, const Path& p, const Term& target) {
  std::vector<Name> binders;
  Path prefix;
  std::vector<Path> out;
  correspond_rec(source, p, target, binders, prefix, out);
  return out;
}

// ---------------------------------------------------------------------------
// Redexes

std::vector<Path> leftmost_set(const Term& m) {
  Path at;
  std::vector<Path> out;
  leftmost_term(m, at, out);
  sort_paths(m, out);
  return out;
}

std::vector<Redex> find_redexes(const Term& m) {
  Path at;
  std::vector<Redex> out;
  collect_redexes(m, false, at, out);
  auto lm = leftmost_set(m);
  for (auto& r : out) r.leftmost = std::find(lm.begin(), lm.end(), r.path) != lm.end();
  std::vector<std::pair<std::vector<int>, Redex>> keyed;
  for (auto& r : out) keyed.emplace_back(canonical_path(m, r.path), std::move(r));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.clear();
  for (auto& [k, r] : keyed) out.push_back(std::move(r));
  return out;
}

bool is_outer_normal(const Term& m) { return leftmost_set(m).empty(); }

bool has_redex(const Term& m) {
  switch (m.kind()) {
    case Kind::Var:
      return false;
    case Kind::Abs:
      return has_redex(m.body());
    case Kind::App:
      if (m.is_redex() || has_redex(m.fun())) return true;
      for (const auto& r : m.arg().elements())
        if (has_redex(r.content)) return true;
      return false;
  }
  return false;
}

Redex redex_at(const Term& m, const Path& p) {
  auto sub = subterm_at(m, p);
  if (!sub || !sub->is_redex()) throw InvalidRedex("no redex at the given path");
  auto lm = leftmost_set(m);
  return Redex{p, baby_rule(*sub), linear_in_term(m, p),
               std::find(lm.begin(), lm.end(), p) != lm.end()};
}

Order precedes(const Path& p1, const Path& p2, const Term& m) {
  checked_subterm(m, p1);
  checked_subterm(m, p2);
  bool forward = prec_term(m, p1, p2);
  bool backward = prec_term(m, p2, p1);
  if (forward && backward) throw std::logic_error("linear left-to-right order is not antisymmetric");
  if (forward) return Order::Before;
  if (backward) return Order::After;
  return Order::Incomparable;
}

// ---------------------------------------------------------------------------
// Steps

TermSum fire_giant(const Term& redex) {
  if (!redex.is_redex()) throw InvalidRedex("term is not a redex");
  auto [x, body] = fresh_redex_parts(redex);
  return classical_subst(bag_subst(body, x, redex.arg()), x, TermSum{});
}

TermSum giant_step(const Term& m, const Redex& r) {
  return plug(m, r.path, fire_giant(checked_redex(m, r)));
}

TermSum baby_step(const Term& m, const Redex& r) {
  return plug(m, r.path, fire_baby(checked_redex(m, r)).sum);
}

std::vector<Term> nd_step(const Term& m, const Redex& r) {
  TermSum local = fire_giant(checked_redex(m, r));
  std::vector<Term> out;
  std::set<std::string> seen;
  for (const auto& [k, e] : local) {
    Term t = replace_at(m, r.path, e.value);
    if (seen.insert(labeled_key(t)).second) out.push_back(t);
  }
  return out;
}

TermSum baby_expand(const Term& m, const Redex& r) {
  Term redex = checked_redex(m, r);
  TermSum done;
  if (linear_in_term(m, r.path)) {
    // In a linear context the redex keeps its position in every addend.
    std::vector<std::pair<Term, std::size_t>> work{{m, 1}};
    while (!work.empty()) {
      auto [whole, mult] = work.back();
      work.pop_back();
      Term here = checked_redex(whole, r);
      bool last = here.arg().empty();
      TermSum next = baby_step(whole, r);
      if (last) {
        done.add(next, mult);
      } else {
        for (const auto& [k, e] : next) work.emplace_back(e.value, mult * e.mult);
      }
    }
    return done;
  }
  // Under a reusable resource the context turns sums into bags of copies, so
  // expand the redex locally and plug the total.
  std::vector<std::pair<Term, std::size_t>> work{{redex, 1}};
  while (!work.empty()) {
    auto [t, mult] = work.back();
    work.pop_back();
    BabyResult res = fire_baby(t);
    if (res.finished) {
      done.add(res.sum, mult);
    } else {
      for (const auto& [k, e] : res.sum) work.emplace_back(e.value, mult * e.mult);
    }
  }
  return plug(m, r.path, done);
}

const Term& Step::after_term() const {
  if (after.distinct() != 1) throw std::logic_error("step has no single result term");
  return after.begin()->second.value;
}

Term Trace::final_term() const { return steps.empty() ? initial : steps.back().after_term(); }

TermSum Trace::final_sum() const {
  if (mode == Mode::Nd) return steps.empty() ? TermSum(initial) : steps.back().after;
  return states.empty() ? TermSum(initial) : states.back();
}

Step make_nd_step(const Term& m, const Redex& r, const Term& target) {
  Redex full = redex_at(m, r.path);
  full.rule = RedexRule::Giant;
  std::string key = canonical_key(target);
  for (const auto& t : nd_step(m, full)) {
    if (canonical_key(t) == key) return Step{m, full, Mode::Nd, key, TermSum(t)};
  }
  throw std::invalid_argument("target is not an nd successor at the given redex");
}

std::vector<Step> nd_successors(const Term& m) {
  std::vector<Step> out;
  for (auto r : find_redexes(m)) {
    r.rule = RedexRule::Giant;
    for (const auto& t : nd_step(m, r))
      out.push_back(Step{m, r, Mode::Nd, canonical_key(t), TermSum(t)});
  }
  return out;
}

void validate_nd_trace(const Trace& t) {
  Term cur = t.initial;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    if (!alpha_eq(s.before, cur))
      throw std::invalid_argument("step " + std::to_string(i) + " does not start where the previous ended");
    auto sub = subterm_at(s.before, s.redex.path);
    if (!sub || !sub->is_redex())
      throw std::invalid_argument("step " + std::to_string(i) + " fires no redex");
    bool ok = false;
    std::string key = canonical_key(s.after_term());
    for (const auto& n : nd_step(s.before, s.redex)) ok = ok || canonical_key(n) == key;
    if (!ok) throw std::invalid_argument("step " + std::to_string(i) + " result is not an nd successor");
    cur = s.after_term();
  }
}

Trace rebase(const Trace& t, const Term& initial) {
  if (!alpha_eq(t.initial, initial)) throw std::invalid_argument("rebase onto a different term");
  Trace out{initial, Mode::Nd, {}, {}, t.end};
  Term cur = initial;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    std::string key = canonical_key(s.after_term());
    bool found = false;
    for (const auto& p : corresponding_paths(s.before, s.redex.path, cur)) {
      Redex r = redex_at(cur, p);
      r.rule = RedexRule::Giant;
      for (const auto& n : nd_step(cur, r)) {
        if (canonical_key(n) != key) continue;
        out.steps.push_back(Step{cur, r, Mode::Nd, key, TermSum(n)});
        cur = n;
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) throw std::invalid_argument("rebase: step " + std::to_string(i) + " cannot be replayed");
  }
  return out;
}

Trace rebase(const Trace& t) { return rebase(t, t.initial); }

Trace concat(const Trace& a, const Trace& b) {
  Trace out = a;
  Trace tail = rebase(b, a.final_term());
  out.steps.insert(out.steps.end(), tail.steps.begin(), tail.steps.end());
  out.end = b.end;
  return out;
}

Trace lift(const Trace& sub, const Term& whole, const Path& prefix) {
  Trace local = rebase(sub, checked_subterm(whole, prefix));
  Trace out{whole, Mode::Nd, {}, {}, sub.end};
  Term cur = whole;
  for (const auto& s : local.steps) {
    Path p = prefix;
    p.insert(p.end(), s.redex.path.begin(), s.redex.path.end());
    Term next = replace_at(cur, prefix, s.after_term());
    Redex r = redex_at(cur, p);
    r.rule = RedexRule::Giant;
    out.steps.push_back(Step{cur, r, Mode::Nd, canonical_key(next), TermSum(next)});
    cur = next;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residual labels

LabeledTerm label(const Term& m, const std::vector<Path>& targets) {
  LabeledTerm out{m, {}};
  Label next = 1;
  for (const auto& p : targets) {
    auto sub = subterm_at(out.term, p);
    if (!sub || !sub->is_app()) throw InvalidPath("label target is not an application");
    out.term = replace_at(out.term, p, sub->with_label(next));
    out.origin[next] = p;
    ++next;
  }
  return out;
}

std::map<Label, std::vector<Path>> find_labels(const Term& t) {
  Path at;
  std::map<Label, std::vector<Path>> out;
  collect_labels(t, at, out);
  return out;
}

std::vector<Term> fire_labeled(const Term& labeled, const Step& s, const Path& at) {
  Term base = strip_label_at(labeled, at);
  Redex r = redex_at(base, at);
  std::vector<Term> out;
  switch (s.mode) {
    case Mode::Nd:
      for (const auto& t : nd_step(base, r))
        if (canonical_key(t) == s.chosen) out.push_back(t);
      break;
    case Mode::Giant:
      out = giant_step(base, r).support();
      break;
    case Mode::Baby:
      out = baby_step(base, r).support();
      break;
  }
  return out;
}

std::map<Label, std::set<Path>> residuals(const LabeledTerm& l, const Step& s) {
  auto at = corresponding_paths(s.before, s.redex.path, l.term);
  if (at.empty()) throw InvalidPath("step does not apply to the labeled term");
  std::map<Label, std::set<Path>> out;
  for (const auto& [lab, p] : l.origin) out[lab];
  for (const auto& t : fire_labeled(l.term, s, at.front())) {
    for (const auto& [lab, paths] : find_labels(t)) out[lab].insert(paths.begin(), paths.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

TermSum step_in_sum(const TermSum& s, const Term& addend, const Redex& r, Mode mode) {
  TermSum out = s;
  if (!out.remove_one(sum_key(addend))) throw std::invalid_argument("addend not in sum");
  switch (mode) {
    case Mode::Giant:
      out.add(giant_step(addend, r));
      break;
    case Mode::Baby:
      out.add(baby_step(addend, r));
      break;
    case Mode::Nd: {
      auto next = nd_step(addend, r);
      if (!next.empty()) out.add(next.front());
      break;
    }
  }
  return out;
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Baby: return "baby";
    case Mode::Giant: return "giant";
    case Mode::Nd: return "nd";
  }
  return "?";
}

std::string to_string(RedexRule r) {
  switch (r) {
    case RedexRule::Empty: return "empty";
    case RedexRule::LinearHead: return "linear-head";
    case RedexRule::ReusableHead: return "reusable-head";
    case RedexRule::Giant: return "giant";
  }
  return "?";
}

std::string to_string(TraceEnd e) {
  switch (e) {
    case TraceEnd::Open: return "open";
    case TraceEnd::Normal: return "normal";
    case TraceEnd::Crashed: return "crashed";
    case TraceEnd::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

}  // namespace rcalc
