#include "rcalc/substitution.hpp"

#include <algorithm>

namespace rcalc {

namespace {

std::set<Name> free_vars_of(const TermSum& n) {
  std::set<Name> out;
  for (const auto& [k, e] : n) out.merge(free_vars(e.value));
  return out;
}

/// Renames the binder of `abs` so that it avoids `avoid`.
Term freshen_binder(const Term& abs, const std::set<Name>& avoid, const Name& x) {
  std::set<Name> taken = avoid;
  taken.merge(all_names(abs.body()));
  taken.insert(x);
  Name y = fresh_name(abs.name(), taken);
  return Term::abs(y, rename_free(abs.body(), abs.name(), y));
}

struct Classical {
  const Name& x;
  const TermSum& n;
  std::set<Name> fv_n;

  TermSum term(const Term& a) const {
    if (!occurs_free(a, x)) return TermSum(a);
    switch (a.kind()) {
      case Kind::Var:
        return n;
      case Kind::Abs: {
        Term t = fv_n.contains(a.name()) ? freshen_binder(a, fv_n, x) : a;
        return sum_abs(t.name(), term(t.body()));
      }
      case Kind::App:
        return sum_app(term(a.fun()), bag(a.arg()), a.label());
    }
    return {};
  }

  BagSum bag(const Bag& b) const {
    if (!occurs_free(b, x)) return BagSum(b);
    BagSum acc{Bag{}};
    const auto& elems = b.elements();
    for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
      TermSum content = term(it->content);
      acc = it->reusable ? sum_bag_reusable(content, acc, it->id)
                         : sum_bag_linear(content, acc, it->id);
    }
    return acc;
  }
};

struct Linear {
  const Name& x;
  const Term& n;
  std::set<Name> fv_n;

  TermSum term(const Term& a) const {
    if (!occurs_free(a, x)) return {};
    switch (a.kind()) {
      case Kind::Var:
        return TermSum(n);
      case Kind::Abs: {
        Term t = fv_n.contains(a.name()) ? freshen_binder(a, fv_n, x) : a;
        return sum_abs(t.name(), term(t.body()));
      }
      case Kind::App: {
        TermSum out = sum_app(term(a.fun()), BagSum(a.arg()), a.label());
        out.add(sum_app(TermSum(a.fun()), bag(a.arg()), a.label()));
        return out;
      }
    }
    return {};
  }

  // ([M]·P)⟨N/x⟩  = [M⟨N/x⟩]·P + [M]·P⟨N/x⟩
  // ([M!]·P)⟨N/x⟩ = [M⟨N/x⟩, M!]·P + [M!]·P⟨N/x⟩
  BagSum bag(const Bag& b) const {
    BagSum out;
    for (const auto& r : b.elements()) {
      TermSum replaced = term(r.content);
      if (replaced.is_zero()) continue;
      if (r.reusable) {
        out.add(sum_bag_linear(replaced, BagSum(b), 0));
      } else {
        out.add(sum_bag_linear(replaced, BagSum(b.without(r.id)), r.id));
      }
    }
    return out;
  }
};

}  // namespace

TermSum classical_subst(const Term& a, const Name& x, const TermSum& n) {
  return Classical{x, n, free_vars_of(n)}.term(a);
}

BagSum classical_subst(const Bag& a, const Name& x, const TermSum& n) {
  return Classical{x, n, free_vars_of(n)}.bag(a);
}

TermSum classical_subst(const TermSum& a, const Name& x, const TermSum& n) {
  Classical c{x, n, free_vars_of(n)};
  TermSum out;
  for (const auto& [k, e] : a) out.add(c.term(e.value), e.mult);
  return out;
}

TermSum partial_subst(const Term& a, const Name& x, const Term& n) {
  TermSum s(Term::var(x));
  s.add(n);
  return classical_subst(a, x, s);
}

BagSum partial_subst(const Bag& a, const Name& x, const Term& n) {
  TermSum s(Term::var(x));
  s.add(n);
  return classical_subst(a, x, s);
}

TermSum linear_subst(const Term& a, const Name& x, const Term& n) {
  return Linear{x, n, free_vars(n)}.term(a);
}

BagSum linear_subst(const Bag& a, const Name& x, const Term& n) {
  return Linear{x, n, free_vars(n)}.bag(a);
}

TermSum linear_subst(const TermSum& a, const Name& x, const TermSum& n) {
  TermSum out;
  for (const auto& [kn, en] : n) {
    Linear lin{x, en.value, free_vars(en.value)};
    for (const auto& [ka, ea] : a) out.add(lin.term(ea.value), ea.mult * en.mult);
  }
  return out;
}

TermSum resource_subst(const Term& a, const Name& x, const Resource& r) {
  return r.reusable ? partial_subst(a, x, r.content) : linear_subst(a, x, r.content);
}

TermSum resource_subst(const TermSum& a, const Name& x, const Resource& r) {
  TermSum out;
  for (const auto& [k, e] : a) out.add(resource_subst(e.value, x, r), e.mult);
  return out;
}

std::vector<Resource> canonical_elements(const Bag& p) {
  std::vector<std::pair<std::string, std::size_t>> order;
  const auto& elems = p.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) order.emplace_back(canonical_key(elems[i]), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Resource> out;
  out.reserve(elems.size());
  for (const auto& [k, i] : order) out.push_back(elems[i]);
  return out;
}

TermSum bag_subst(const Term& a, const Name& x, const Bag& p) {
  if (occurs_free(p, x)) {
    throw FreshnessViolation("bag substitution: variable '" + x + "' is free in the bag");
  }
  TermSum acc(a);
  for (const auto& r : canonical_elements(p)) acc = resource_subst(acc, x, r);
  return acc;
}

}  // namespace rcalc
