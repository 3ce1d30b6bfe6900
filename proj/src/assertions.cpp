#include "srgen/assertions.hpp"

#include <algorithm>

namespace srgen {

std::vector<Assertion> candidate_assertions(const std::vector<Observation>& observations,
                                            double tolerance) {
    std::vector<Assertion> out;
    for (const Observation& o : observations) {
        Assertion a;
        a.id = static_cast<int>(out.size());
        a.point = o;
        a.tolerance = tolerance;
        out.push_back(std::move(a));
    }
    return out;
}

void fill_kill_sets(std::vector<Assertion>& candidates, const KillMatrix& matrix, int test_index) {
    for (size_t i = 0; i < candidates.size(); ++i)
        candidates[i].killed = matrix.kills_of(test_index, static_cast<int>(i));
}

std::vector<Assertion> select_unique_killers(const std::vector<Assertion>& candidates,
                                             const TestCase& test) {
    std::set<int> covered;
    std::vector<bool> taken(candidates.size(), false);
    std::vector<Assertion> kept;

    while (true) {
        int best = -1;
        size_t best_gain = 0;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (taken[i]) continue;
            size_t gain = 0;
            for (int m : candidates[i].killed)
                if (!covered.count(m)) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        taken[best] = true;
        kept.push_back(candidates[best]);
        for (int m : candidates[best].killed) covered.insert(m);
    }

    if (kept.empty() && test.repr == Representation::Focal) {
        int focal_stmt = test.size();  // 1-based
        for (const Assertion& a : candidates) {
            if (a.point.kind == Observation::Kind::StatementReturn &&
                a.point.stmt_index == focal_stmt) {
                Assertion f = a;
                f.fallback = true;
                kept.push_back(std::move(f));
                break;
            }
        }
    }
    return kept;
}

std::vector<Assertion> filter_focal(const std::vector<Assertion>& kept,
                                    const std::vector<Mutant>& mutants,
                                    const std::set<std::string>& focal_scope) {
    std::vector<Assertion> out;
    for (const Assertion& a : kept) {
        if (a.fallback) {
            out.push_back(a);
            continue;
        }
        bool related = false;
        for (int m : a.killed) {
            if (focal_scope.count(mutants[m].method)) {
                related = true;
                break;
            }
        }
        if (related) out.push_back(a);
    }
    return out;
}

std::vector<AssertionGroup> group_by_method(const std::vector<Assertion>& kept,
                                            const std::vector<Mutant>& mutants,
                                            const SubjectInfo& info) {
    std::vector<AssertionGroup> groups;
    for (int d = 0; d < info.method_count(); ++d) {
        const std::string& method = info.method_name(d);
        AssertionGroup g;
        g.method = method;
        for (const Assertion& a : kept) {
            for (int m : a.killed) {
                if (mutants[m].method == method) {
                    g.assertion_ids.push_back(a.id);
                    break;
                }
            }
        }
        if (!g.assertion_ids.empty()) groups.push_back(std::move(g));
    }
    return groups;
}

SplitResult split_test(const TestCase& baseline_test, const std::vector<Assertion>& kept,
                       const std::vector<AssertionGroup>& groups, const SubjectInfo& info,
                       double tolerance, const ExecLimits& limits) {
    SplitResult result;
    for (const AssertionGroup& g : groups) {
        // last statement directly invoking the group's method
        int cut = -1;
        for (int i = 0; i < baseline_test.size(); ++i) {
            const Statement& s = baseline_test.stmts[i];
            if (g.method == "constructor" && s.kind == Statement::Kind::Constructor) cut = i;
            if (s.kind == Statement::Kind::Method && s.method == g.method) cut = i;
        }
        if (cut < 0) {
            result.notes.push_back("group '" + g.method +
                                   "' has no invoking statement; no test emitted");
            continue;
        }

        TestCase focal;
        focal.repr = Representation::Focal;
        focal.focal_method = g.method;
        focal.stmts.assign(baseline_test.stmts.begin(), baseline_test.stmts.begin() + cut + 1);

        ExecResult run = execute_test(info, focal, limits);
        std::vector<Observation> fresh = harvest_observations(info, focal, run, limits);

        // re-harvest the group's assertions at their original points
        std::vector<Assertion> carried;
        for (int id : g.assertion_ids) {
            const Assertion* src = nullptr;
            for (const Assertion& a : kept)
                if (a.id == id) src = &a;
            if (!src) continue;
            const Observation* point = nullptr;
            for (const Observation& o : fresh)
                if (o.same_point(src->point)) point = &o;
            if (!point) continue;  // observation no longer exists after the cut
            Assertion a;
            a.id = static_cast<int>(carried.size());
            a.point = *point;  // expected value re-read from the fresh run
            a.tolerance = tolerance;
            carried.push_back(std::move(a));
        }
        if (carried.empty()) {
            result.notes.push_back("group '" + g.method +
                                   "' kept no assertions after the cut; test dropped");
            continue;
        }
        result.tests.push_back(std::move(focal));
        result.assertions.push_back(std::move(carried));
    }
    return result;
}

}  // namespace srgen
