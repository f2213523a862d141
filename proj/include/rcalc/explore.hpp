#pragma once

// Breadth-first exploration of reduction graphs, deduplicated by canonical
// form. explore_nd has a serial reference and an OpenMP version; both return
// identical graphs (same keys, depths, parents and discovery order).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rcalc/reduction.hpp"
#include "rcalc/syntax.hpp"

namespace rcalc {

enum class StepFilter {
  All,
  Outer,
  Inner,
  Leftmost,
  /// Outer and not leftmost.
  NotLeftmost,
  /// Not leftmost, inner redexes included.
  NotLeftmostAny,
};

bool admits(StepFilter f, const Redex& r);
/// nd successors of m through redexes admitted by f.
std::vector<Step> filtered_successors(const Term& m, StepFilter f);

struct NdNode {
  Term term;
  std::size_t depth = 0;
  std::string parent;        // empty for the root
  std::optional<Step> step;  // from the parent
  std::vector<std::string> succ;
  bool expanded = false;
};

struct NdGraph {
  std::string root;
  std::map<std::string, NdNode> nodes;
  /// Keys by depth, in discovery order.
  std::vector<std::vector<std::string>> levels;
  /// Every reached node has been expanded.
  bool closed = false;

  const NdNode& at(const std::string& key) const { return nodes.at(key); }
  bool contains(const std::string& key) const { return nodes.contains(key); }
};

NdGraph explore_nd_serial(const Term& m, std::size_t depth, StepFilter f = StepFilter::All);
NdGraph explore_nd(const Term& m, std::size_t depth, StepFilter f = StepFilter::All);

/// Shortest trace from the root to `key`.
Trace chain_to(const NdGraph& g, const std::string& key);
/// True when the expanded part of g contains a cycle.
bool has_cycle(const NdGraph& g);

// Sums under baby or giant reduction.

std::string sum_state_key(const TermSum& s);

struct SumNode {
  TermSum sum;
  std::size_t depth = 0;
  std::string parent;
  std::optional<Step> step;
  std::vector<std::string> succ;
  bool expanded = false;
};

struct SumGraph {
  std::string root;
  std::map<std::string, SumNode> nodes;
  std::vector<std::vector<std::string>> levels;
  bool closed = false;
};

/// Successors of a sum: one step fired inside one addend.
std::vector<std::pair<Step, TermSum>> sum_successors(const TermSum& s, Mode mode, StepFilter f);
SumGraph explore_sums(const TermSum& s, Mode mode, std::size_t depth,
                      StepFilter f = StepFilter::All);
Trace sum_chain_to(const SumGraph& g, const std::string& key, Mode mode);

}  // namespace rcalc
