#pragma once

// Standardness checking of nd traces, outer shapes, and the constructive
// standardizer: factor into outer then inner, bring the outer part into
// leftmost-first form by inversion swaps, and standardize the inner part
// hole by hole.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rcalc/reduction.hpp"
#include "rcalc/syntax.hpp"

namespace rcalc {

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoChainFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Name of the variable standing for a hole in an outer-shape skeleton.
inline const Name kHoleName = "□";

struct Hole {
  std::size_t id = 0;
  Path path;  // valid in both the skeleton and the original term
  Term content;
};

struct OuterShape {
  Term skeleton;
  /// Ordered by canonical path.
  std::vector<Hole> holes;
};

OuterShape outer_shape(const Term& m);
/// Fills hole i with contents[i].
Term plug_shape(const OuterShape& s, const std::vector<Term>& contents);

struct Violation {
  /// 1-based index of the step firing a residual of `prior`.
  std::size_t step = 0;
  /// 1-based index of the step whose redex `prior` precedes.
  std::size_t earlier = 0;
  /// Term in which `prior` and `fired` are positions.
  Term before;
  Path prior;
  Path fired;
};

struct StdReport {
  bool standard = true;
  std::optional<Violation> violation;
};

/// Labels, for each step i, every redex preceding R_i, replays the rest of
/// the trace and looks for a fired labeled redex. When a step can be matched
/// to several labeled copies, the trace is standard if some choice is.
/// Throws std::invalid_argument if t is not a valid nd trace.
StdReport is_standard(const Trace& t);

bool is_outer_trace(const Trace& t);
bool is_inner_trace(const Trace& t);

struct Factorization {
  Trace outer;
  Trace inner;
};

/// Outer steps then inner steps with the endpoints of t, searching chains of
/// total length at most |t| + slack. Throws SearchExhausted.
Factorization factor_outer_inner(const Trace& t, std::size_t slack = 2);

/// Leftmost steps first, then non-leftmost ones, same endpoints and length.
/// Requires an outer trace. Throws SearchExhausted when an inversion swap
/// cannot be found among single outer steps.
Trace reorder_outer(const Trace& t);

/// Standard outer trace with the endpoints of the outer trace t.
Trace std_outer(const Trace& t);
/// Standard inner trace with the endpoints of the inner trace t.
Trace std_inner(const Trace& t, std::size_t slack = 2);
/// Standard trace with the endpoints of t.
Trace standardize_trace(const Trace& t, std::size_t slack = 2);

/// Shortest nd trace from m to n of length at most bound. Throws NoChainFound.
Trace find_chain(const Term& m, const Term& n, std::size_t bound);
/// Standard nd trace from m to n. Throws NoChainFound or SearchExhausted.
Trace standardize(const Term& m, const Term& n, std::size_t bound, std::size_t slack = 2);

/// Trace of the first k steps of t, and of the remaining ones.
Trace take(const Trace& t, std::size_t k);
Trace drop(const Trace& t, std::size_t k);

}  // namespace rcalc
