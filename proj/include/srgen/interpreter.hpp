// interpreter.hpp - instrumented tree-walking execution of tests
#pragma once

#include <optional>
#include <vector>

#include "srgen/subject_info.hpp"
#include "srgen/testcase.hpp"
#include "srgen/trace.hpp"

namespace srgen {

struct ExecLimits {
    int64_t step_limit = 100000;
    int depth_limit = 400;  // call nesting; exceeding counts as a timeout
};

struct ExecResult {
    ExecTrace trace;
    // value defined by each statement (nullopt when the statement defines
    // nothing, threw, or was skipped)
    std::vector<std::optional<Value>> vars;
};

// Runs the statements in order. A subject-level exception marks the
// statement and skips the rest; the host is never aborted. Deterministic
// for identical (unit, test) inputs.
ExecResult execute_test(const SubjectInfo& info, const TestCase& test, const ExecLimits& limits = {});

// Raw distance table with K = 1 toward making `op` true. The false
// outcome of a node is the true-outcome distance of the negated operator.
// op must be a comparison; operands numeric, or same-kind for ==/!=.
double branch_distance(BinOp op, const Value& left, const Value& right);

// Observation points of a completed run.
//  baseline: one statement-return per executed non-void method call, then
//            inspector values for every live unit reference at end of test.
//  focal:    the focal statement's return (if any), its exception status,
//            then inspector values immediately after the focal statement.
// Inspector calls run on the post-state; a throwing inspector yields an
// exception-valued observation.
std::vector<Observation> harvest_observations(const SubjectInfo& info, const TestCase& test,
                                              const ExecResult& result,
                                              const ExecLimits& limits = {});

}  // namespace srgen
