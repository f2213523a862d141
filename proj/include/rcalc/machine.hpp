#pragma once

// The ND machine on terms and the auxiliary B machine on bags, with three
// run policies, the may-solvability front end, and projection of converged
// runs onto leftmost nd traces.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcalc/reduction.hpp"
#include "rcalc/syntax.hpp"

namespace rcalc {

enum class MachineRule { Lambda, End, Head, Zero, Beta, BangBeta, OneB, B, BangB };

std::string to_string(MachineRule r);

struct MachineNode {
  MachineRule rule = MachineRule::End;
  Expression in;
  Expression out;
  /// Canonical key of the addend picked by a β or !β step with several addends.
  std::optional<std::string> choice;
  std::vector<std::shared_ptr<const MachineNode>> children;
};

using NodePtr = std::shared_ptr<const MachineNode>;

enum class MachineStatus { Converged, Undefined, BudgetExhausted };

std::string to_string(MachineStatus s);

struct MachineOutcome {
  MachineStatus status = MachineStatus::BudgetExhausted;
  /// Converged: the result, a Term (ND machine) or a Bag (B machine).
  std::optional<Expression> result;
  NodePtr tree;
  /// Undefined: the judgment whose premises cannot be met.
  std::optional<Expression> stuck;
};

enum class Policy { CanonicalFirst, SeededRandom, EnumerateAll };

struct MachineConfig {
  Policy policy = Policy::CanonicalFirst;
  std::uint64_t seed = 0;
  /// Rule applications across both machines.
  std::size_t budget = 10000;
  /// Under EnumerateAll, also branch over which bag element β consumes.
  bool branch_elements = true;
  std::size_t max_depth = 4096;
};

/// One outcome for the single-run policies; every distinct outcome for
/// EnumerateAll, converged results first in canonical order.
std::vector<MachineOutcome> machine_step_run(const Term& m, const MachineConfig& cfg);
std::vector<MachineOutcome> b_machine_run(const Bag& p, const MachineConfig& cfg);

struct SolvabilityVerdict {
  bool may_solvable = false;
  NodePtr witness;
  /// Rule applications performed.
  std::size_t explored = 0;
  /// Every run ended Undefined within budget.
  bool exhaustive = false;
};

SolvabilityVerdict may_solvable(const Term& m, std::size_t budget = 10000);

class MalformedTree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The leftmost nd trace denoted by a converged ND run. Each chain of β/!β
/// nodes closed by a 0 node becomes one nd step.
Trace reconstruct_trace(const MachineNode& tree);

}  // namespace rcalc
