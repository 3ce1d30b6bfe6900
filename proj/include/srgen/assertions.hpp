// assertions.hpp - candidate assertions, unique-killer selection, focal
// filtering, method grouping and baseline test splitting
#pragma once

#include <set>
#include <string>
#include <vector>

#include "srgen/mutation.hpp"
#include "srgen/trace.hpp"

namespace srgen {

struct Assertion {
    int id = 0;               // candidate order within its test
    Observation point;        // observation reference plus the expected value
    double tolerance = 1e-6;  // applied to real-valued mutant-run comparisons
    bool fallback = false;
    std::vector<int> killed;  // mutant ids, ascending
};

// One equality assertion per value observation, one exception-status
// assertion per exception observation, in observation order.
std::vector<Assertion> candidate_assertions(const std::vector<Observation>& observations,
                                            double tolerance);

void fill_kill_sets(std::vector<Assertion>& candidates, const KillMatrix& matrix, int test_index);

// Greedy cover: repeatedly keep the candidate killing the most uncovered
// mutants (ties: lowest id). When nothing kills and the test observes a
// focal return value, that single assertion is kept as a fallback.
std::vector<Assertion> select_unique_killers(const std::vector<Assertion>& candidates,
                                             const TestCase& test);

// Keeps assertions with at least one kill inside the focal scope;
// fallback assertions always survive.
std::vector<Assertion> filter_focal(const std::vector<Assertion>& kept,
                                    const std::vector<Mutant>& mutants,
                                    const std::set<std::string>& focal_scope);

struct AssertionGroup {
    std::string method;
    std::vector<int> assertion_ids;  // ids of kept assertions with kills in `method`
};

// One group per method enclosing a killed mutant, in declaration order;
// an assertion joins every group it has a kill for.
std::vector<AssertionGroup> group_by_method(const std::vector<Assertion>& kept,
                                            const std::vector<Mutant>& mutants,
                                            const SubjectInfo& info);

struct SplitResult {
    std::vector<TestCase> tests;
    std::vector<std::vector<Assertion>> assertions;  // re-harvested per split test
    std::vector<std::string> notes;                  // dropped groups and why
};

// Cuts a multi-responsibility baseline test into one focal test per
// assertion group, truncating after the last statement that invokes the
// group's method and re-harvesting that group's assertions.
SplitResult split_test(const TestCase& baseline_test, const std::vector<Assertion>& kept,
                       const std::vector<AssertionGroup>& groups, const SubjectInfo& info,
                       double tolerance, const ExecLimits& limits);

}  // namespace srgen
