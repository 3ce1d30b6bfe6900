// metrics.hpp - suite-level quality measures and cross-representation comparison
#pragma once

#include <string>
#include <vector>

#include "srgen/assertions.hpp"
#include "srgen/mutation.hpp"
#include "srgen/subject_info.hpp"
#include "srgen/testcase.hpp"

namespace srgen {

struct TestRecord {
    std::string name;
    std::string focal_method;  // empty for baseline tests
    int n_statements = 0;
    int n_assertions = 0;
    std::vector<std::string> responsible_methods;  // sorted
    double coherence = 1.0;
    bool has_fallback = false;
};

struct SuiteMetrics {
    int goals_total = 0;
    int goals_covered = 0;
    double coverage = 0.0;
    int mutants_total = 0;
    int mutants_killed = 0;
    double mutation_score = 0.0;
    double sr_rate = 0.0;
    double mean_coherence = 0.0;
    std::vector<TestRecord> tests;
    std::vector<std::string> flags;  // "empty-suite", "no-mutants"
};

// Kill attribution:
//  - baseline tests answer for the enclosing method of every mutant their
//    kept assertions kill; their coherence is judged against the method of
//    the last subject-call statement (the reader's guess at the focal one).
//  - focal tests answer for their focal method; kills inside its call
//    closure belong to that responsibility, incidental kills outside it
//    are not counted as extra responsibilities.
SuiteMetrics suite_metrics(const SubjectInfo& info, const std::vector<TestCase>& suite,
                           const std::vector<std::string>& names,
                           const std::vector<std::vector<Assertion>>& kept,
                           const std::vector<Mutant>& mutants, const KillMatrix& matrix,
                           const std::vector<std::vector<int>>& kept_rows, int goals_covered);

struct CompareRow {
    std::string subject;
    Representation repr;
    uint64_t seed = 0;
    bool failed = false;
    SuiteMetrics metrics;
    int64_t evals_used = 0;
};

struct CompareOutput {
    std::string csv;
    std::vector<std::string> warnings;  // subjects present in one representation only
};

// Data rows sorted by (subject, representation, seed) followed by one
// summary row per (subject, representation) whose cells hold
// "median|iqr" pairs.
CompareOutput compare(const std::vector<CompareRow>& rows);

}  // namespace srgen
