#include "srgen/fitness.hpp"

#include <algorithm>

namespace srgen {

bool ExecTrace::covered_in(int goal, const StmtWindow& w) const {
    for (uint16_t s : covered_at[goal])
        if (w.contains(s)) return true;
    return false;
}

std::optional<double> ExecTrace::min_dist_in(int goal, const StmtWindow& w) const {
    std::optional<double> best;
    for (const GoalHit& h : dists[goal]) {
        if (!w.contains(h.stmt)) continue;
        if (!best || h.dist < *best) best = h.dist;
    }
    return best;
}

bool ExecTrace::entered_in(int method_index, const StmtWindow& w) const {
    for (uint16_t s : entered_at[method_index])
        if (w.contains(s)) return true;
    return false;
}

std::optional<double> ExecTrace::min_dist(int goal) const {
    return min_dist_in(goal, StmtWindow{});
}

StmtWindow scoring_window(const TestCase& test) {
    if (test.repr == Representation::Focal) {
        int n = test.size();
        return {n, n};
    }
    return {1, std::max(1, test.size())};
}

double fitness(const SubjectInfo& info, int goal, const ExecTrace& trace, const StmtWindow& window) {
    const CoverageGoal& g = info.goals()[goal];
    if (trace.covered_in(goal, window)) return 0.0;
    if (!trace.entered_in(info.method_index(g.method), window))
        return static_cast<double>(g.cdg_depth) + 2.0;
    if (g.kind == GoalKind::MethodEntry) return 2.0;  // entered only outside the window

    // chain from the goal up its control-dependent ancestors
    int approach = 0;
    int cur = goal;
    while (cur != -1) {
        if (auto d = trace.min_dist_in(cur, window)) return approach + *d / (*d + 1.0);
        ++approach;
        cur = info.goals()[cur].parent_goal;
    }
    // method entered in the window but no chain conditional evaluated there
    return static_cast<double>(approach);
}

}  // namespace srgen
