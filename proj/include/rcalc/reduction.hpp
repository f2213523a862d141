#pragma once

// Redexes, positions, the linear left-to-right order, the three reductions
// (baby, giant, non-deterministic), residual labels and strategy drivers.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcalc/syntax.hpp"

namespace rcalc {

class InvalidPath : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidRedex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Paths

enum class PathTag { AbsBody, AppFun, AppArg, BagElem, ResourceContent };

struct PathStep {
  PathTag tag;
  ElemId id = 0;  // BagElem only
  auto operator<=>(const PathStep&) const = default;
};

/// Position of a subterm. Bag elements are addressed by element id, so a
/// path survives reordering of the multiset.
using Path = std::vector<PathStep>;

std::optional<Term> subterm_at(const Term& root, const Path& p);
/// Throws InvalidPath unless p reaches a term position.
Term checked_subterm(const Term& root, const Path& p);
Term replace_at(const Term& root, const Path& p, const Term& replacement);
/// Plugs a sum into the one-hole context root[p], distributing the sum
/// through the constructors above it.
TermSum plug(const Term& root, const Path& p, const TermSum& s);

/// True when no step of p enters the content of a reusable resource.
bool is_linear_position(const Term& root, const Path& p);

/// Path rewritten with canonical element indices; used to order paths and to
/// serialize them independently of element ids.
std::vector<int> canonical_path(const Term& root, const Path& p);
/// Inverse of canonical_path for the given term.
Path path_from_canonical(const Term& root, const std::vector<int>& code);

/// Every path in `target` that corresponds to `p` in `source` under some
/// alpha-equivalence between the two (bag elements with equal canonical keys
/// are interchangeable). Requires alpha_eq(source, target).
std::vector<Path> corresponding_paths(const Term& source, const Path& p, const Term& target);

// ---------------------------------------------------------------------------
// Redexes

enum class RedexRule { Empty, LinearHead, ReusableHead, Giant };

struct Redex {
  Path path;
  RedexRule rule = RedexRule::Giant;
  bool outer = false;
  bool leftmost = false;
};

/// All redexes of m, in canonical path order.
std::vector<Redex> find_redexes(const Term& m);
/// L(m): leftmost redexes, in canonical path order.
std::vector<Path> leftmost_set(const Term& m);
bool is_outer_normal(const Term& m);
bool has_redex(const Term& m);
Redex redex_at(const Term& m, const Path& p);

enum class Order { Before, After, Incomparable };

/// Linear left-to-right order on positions of m. Throws InvalidPath.
Order precedes(const Path& p1, const Path& p2, const Term& m);

// ---------------------------------------------------------------------------
// Steps

enum class Mode { Baby, Giant, Nd };

/// Fires the redex (λx.M)P at the root of `redex`: M⟨P/x⟩{0/x}.
TermSum fire_giant(const Term& redex);
TermSum giant_step(const Term& m, const Redex& r);
TermSum baby_step(const Term& m, const Redex& r);
/// Terms N with m →nd N at r. Empty means the step crashes.
std::vector<Term> nd_step(const Term& m, const Redex& r);
/// Baby-reduces r and every residual of it produced by consuming its bag.
TermSum baby_expand(const Term& m, const Redex& r);

struct Step {
  Term before;
  Redex redex;
  Mode mode = Mode::Nd;
  /// Canonical key of the selected addend (nd only).
  std::string chosen;
  /// Full result for baby/giant; the single chosen term for nd.
  TermSum after;

  /// The chosen term of an nd step.
  const Term& after_term() const;
};

enum class TraceEnd { Open, Normal, Crashed, BudgetExhausted };

struct Trace {
  Term initial;
  Mode mode = Mode::Nd;
  std::vector<Step> steps;
  /// baby/giant: the whole sum after each step (steps fire inside one addend).
  std::vector<TermSum> states;
  TraceEnd end = TraceEnd::Open;

  /// nd traces: the last term.
  Term final_term() const;
  /// baby/giant traces: the last sum.
  TermSum final_sum() const;
  std::size_t length() const { return steps.size(); }
};

/// nd step from m at r producing `target`; target must be alpha-equal to one
/// of nd_step(m, r).
Step make_nd_step(const Term& m, const Redex& r, const Term& target);
std::vector<Step> nd_successors(const Term& m);

/// Throws std::invalid_argument describing the first broken link or step.
void validate_nd_trace(const Trace& t);

/// Replays t from `initial` (alpha-equal to t.initial), re-deriving each
/// redex position and result so consecutive terms are identical objects.
Trace rebase(const Trace& t, const Term& initial);
Trace rebase(const Trace& t);
/// Concatenates two nd traces; b must start alpha-equal to a's end.
Trace concat(const Trace& a, const Trace& b);

/// Lifts an nd trace on the subterm at `prefix` to a trace on `whole`.
Trace lift(const Trace& sub, const Term& whole, const Path& prefix);

// ---------------------------------------------------------------------------
// Residual labels

struct LabeledTerm {
  Term term;
  std::map<Label, Path> origin;
};

LabeledTerm label(const Term& m, const std::vector<Path>& targets);
std::map<Label, std::vector<Path>> find_labels(const Term& t);
/// Labeled results of firing s on l (labels ride along substitution copies;
/// the fired redex loses its label). For nd steps only the addends matching
/// s.chosen are kept.
std::vector<Term> fire_labeled(const Term& labeled, const Step& s, const Path& at);
std::map<Label, std::set<Path>> residuals(const LabeledTerm& l, const Step& s);

// ---------------------------------------------------------------------------
// Strategies

enum class Pick { LeftmostFirst, GivenPaths, Exhaustive };

struct Strategy {
  Mode mode = Mode::Giant;
  Pick pick = Pick::LeftmostFirst;
  std::vector<std::vector<int>> paths;  // GivenPaths, as canonical paths
};

/// Exhaustive runs return one trace per reached normal form, one per crash
/// and, when the search did not close, one flagged BudgetExhausted.
std::vector<Trace> strategy_run(const Term& m, const Strategy& strategy, std::size_t budget);

/// Fires r inside one copy of `addend` of sum s (other addends untouched).
TermSum step_in_sum(const TermSum& s, const Term& addend, const Redex& r, Mode mode);

std::string to_string(Mode m);
std::string to_string(RedexRule r);
std::string to_string(TraceEnd e);

}  // namespace rcalc
