// fitness.hpp - per-goal scoring of execution traces
#pragma once

#include "srgen/subject_info.hpp"
#include "srgen/testcase.hpp"
#include "srgen/trace.hpp"

namespace srgen {

// Window that determines which statements may satisfy (and guide) a goal.
StmtWindow scoring_window(const TestCase& test);

// 0 iff the goal is covered inside the window; otherwise
// approach_level + d/(d+1) computed along the goal's control-dependency
// chain, and cdg_depth + 2 when the goal's method never ran in the window.
double fitness(const SubjectInfo& info, int goal, const ExecTrace& trace, const StmtWindow& window);

}  // namespace srgen
