#pragma once

// The four substitutions of the resource calculus and their extensions to
// sums. Substituting into a term yields a sum of terms; into a bag, a sum of
// bags.

#include <stdexcept>
#include <string>

#include "rcalc/syntax.hpp"

namespace rcalc {

/// Raised by bag_subst when the substituted variable is free in the bag.
class FreshnessViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Capture-free A{ΣN/x}. Sums in argument position are pushed outward through
/// every constructor; a reusable resource whose content becomes Σ^k Mi turns
/// into the k resources [Mi!], and into 1 when the content is 0.
TermSum classical_subst(const Term& a, const Name& x, const TermSum& n);
BagSum classical_subst(const Bag& a, const Name& x, const TermSum& n);
TermSum classical_subst(const TermSum& a, const Name& x, const TermSum& n);

/// A{x+N/x}
TermSum partial_subst(const Term& a, const Name& x, const Term& n);
BagSum partial_subst(const Bag& a, const Name& x, const Term& n);

/// A⟨N/x⟩: replaces exactly one linear occurrence of x, summing over choices.
TermSum linear_subst(const Term& a, const Name& x, const Term& n);
BagSum linear_subst(const Bag& a, const Name& x, const Term& n);
/// Bilinear extension.
TermSum linear_subst(const TermSum& a, const Name& x, const TermSum& n);

/// A⟨N/x⟩ for a linear resource, A{x+N/x} for a reusable one.
TermSum resource_subst(const Term& a, const Name& x, const Resource& r);
TermSum resource_subst(const TermSum& a, const Name& x, const Resource& r);

/// A⟨P/x⟩: resource substitutions composed over the elements of p, taken in
/// canonical order. Throws FreshnessViolation when x is free in p.
TermSum bag_subst(const Term& a, const Name& x, const Bag& p);

/// Elements of p in canonical order (ties keep vector order).
std::vector<Resource> canonical_elements(const Bag& p);

}  // namespace rcalc
