#pragma once

// JSON records for traces, machine trees, machine outcomes, solvability
// verdicts and standardness reports.
//
// Step record:  {index, rule, mode, redex_path, chosen_addend, term_before, term_after}
// Tree node:    {rule, judgment_in, judgment_out, choice, children}
// Verdict:      {status, witness?, explored, exhaustive}
// Report:       {standard, violation?: {step, earlier, term, prior, fired}}
//
// Paths are arrays of "body", "fun", "arg", "elem:k", "content", where k is
// the index of the element in canonical order. Terms are printed strings.

#include "json.hpp"
#include "rcalc/machine.hpp"
#include "rcalc/reduction.hpp"
#include "rcalc/standardization.hpp"

namespace rcalc {

using Json = nlohmann::json;

Json path_to_json(const Term& root, const Path& p);
Path path_from_json(const Term& root, const Json& j);
std::vector<int> path_code_from_json(const Json& j);

Json step_to_json(const Step& s, std::size_t index);
/// Array of step records.
Json trace_to_json(const Trace& t);
/// Rebuilds an nd trace from step records. Throws std::invalid_argument.
Trace trace_from_json(const Json& records);

Json tree_to_json(const MachineNode& n);
NodePtr tree_from_json(const Json& j);

Json outcome_to_json(const MachineOutcome& o);
Json verdict_to_json(const SolvabilityVerdict& v);
Json report_to_json(const StdReport& r);

}  // namespace rcalc
