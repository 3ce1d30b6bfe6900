// trace.hpp - execution records produced by the instrumented interpreter
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srgen/value.hpp"

namespace srgen {

struct StmtOutcome {
    enum class Tag { Normal, Exception, Skipped };
    Tag tag = Tag::Skipped;
    Value value;          // Normal: the statement's value (may be none)
    std::string error;    // Exception: subject-level exception text
};

// Statement window used to score a trace: [lo, hi] over 1-based statement
// indices. Baseline scoring uses the whole test, the focal representation
// only the focal statement (its transitive callees execute within it).
struct StmtWindow {
    int lo = 1;
    int hi = 1 << 20;
    bool contains(int stmt) const { return stmt >= lo && stmt <= hi; }
};

// Per-statement-index hit record for one goal.
struct GoalHit {
    uint16_t stmt;  // 1-based test statement index
    double dist;    // minimal raw branch distance seen at that statement
};

struct ExecTrace {
    // per goal: statement indices whose execution covered it (sorted, unique)
    std::vector<std::vector<uint16_t>> covered_at;
    // per goal: minimal raw distance toward the goal's outcome, per statement
    std::vector<std::vector<GoalHit>> dists;
    // per declaration index: statement indices that entered the method
    std::vector<std::vector<uint16_t>> entered_at;
    std::vector<StmtOutcome> outcomes;  // one per test statement
    int64_t steps = 0;
    bool timeout = false;

    bool covered(int goal) const { return !covered_at[goal].empty(); }
    bool covered_in(int goal, const StmtWindow& w) const;
    // smallest raw distance within the window; nullopt if never evaluated there
    std::optional<double> min_dist_in(int goal, const StmtWindow& w) const;
    bool entered_in(int method_index, const StmtWindow& w) const;
    // whole-test minimum (the branch_min_distance field of the record)
    std::optional<double> min_dist(int goal) const;
};

struct Observation {
    enum class Kind { StatementReturn, InspectorValue, ExceptionStatus };
    Kind kind;
    int stmt_index;           // 1-based; for InspectorValue the receiver's defining statement
    std::string inspector;    // InspectorValue only
    bool is_exception = false;
    Value value;              // when !is_exception
    std::string exception_text;

    bool same_point(const Observation& o) const {
        return kind == o.kind && stmt_index == o.stmt_index && inspector == o.inspector;
    }
};

}  // namespace srgen
